"""Generating-function solutions for giant components, thresholds and
limited-path cluster sizes.

Fixed points of the edge recursion are found from below. The maps involved
are power series in ``u`` with non-negative coefficients, hence increasing and
convex on ``[0, 1]``; a Newton step taken from a point left of the smallest
root therefore never overshoots it, which keeps the smallest-root selection of
plain iteration while converging quadratically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .degree_models import DegreeModel
from .errors import DomainError, NoConvergenceError, NoTransitionError
from .quantum_links import phi2_of_phi1
from .qswap import SwapStrategy, enumerate_strategies, eta_rand

TOL = 1e-12
MAX_ITER = 1_000_000
THRESHOLD_EPS = 1e-8
BRACKET_WIDTH = 1e-9
S_MAX = 200


@dataclass(frozen=True)
class FixedPointResult:
    u: float
    iterations: int
    converged: bool
    residual: float = 0.0


@dataclass(frozen=True)
class ThresholdResult:
    phi_star: float
    kind: str
    bracket_width: float


# -- Lambert W -------------------------------------------------------------------

_INV_E = math.exp(-1.0)


def lambertw(x, tol=1e-15, max_iter=100):
    """Principal branch ``W0`` of the Lambert W function for real ``x >= -1/e``.

    Halley iteration from a branch-point series near ``-1/e``, a Taylor
    series for small ``|x|`` and a logarithmic guess for large ``x``.
    """
    if x < -_INV_E:
        if x > -_INV_E - 1e-15:
            return -1.0
        raise DomainError(f"W0 is real only for x >= -1/e, got {x}")
    if x == 0.0:
        return 0.0
    if x == -_INV_E:
        return -1.0
    if x < -0.25:
        p = math.sqrt(max(0.0, 2.0 * (math.e * x + 1.0)))
        w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p**3
    elif x < 0.25:
        w = x - x * x + 1.5 * x**3
    elif x < 3.0:
        w = 0.5 * math.log1p(x)
    else:
        lx = math.log(x)
        w = lx - math.log(lx)
    for _ in range(max_iter):
        ew = math.exp(w)
        f = w * ew - x
        wp1 = w + 1.0
        if wp1 == 0.0:
            break
        step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1))
        w -= step
        if abs(step) <= tol * (1.0 + abs(w)):
            break
    return w


# -- classical percolation -------------------------------------------------------


def _newton_from_below(F, dF, tol=TOL, max_iter=MAX_ITER):
    """Smallest root of ``F(u) = u`` on ``[0, 1]`` for convex increasing ``F``
    with ``F(1) = 1``."""
    if dF(1.0) <= 1.0:
        # convexity puts F above the diagonal on [0, 1): u = 1 is the only root
        return FixedPointResult(1.0, 0, True, 0.0)
    u = 0.0
    for it in range(1, max_iter + 1):
        f = F(u) - u
        if f <= 0.0:
            return FixedPointResult(u, it, True, abs(f))
        d = 1.0 - dF(u)
        if d <= 0.0:
            # F(v) - v >= f > 0 on [u, 1): the only root left is u = 1
            return FixedPointResult(1.0, it, True, 0.0)
        step = f / d
        u_new = min(1.0, u + step)
        if u_new - u <= tol * 1e-3 or u_new == 1.0:
            return FixedPointResult(u_new, it, True, abs(F(u_new) - u_new))
        u = u_new
    return FixedPointResult(u, max_iter, False, abs(F(u) - u))


def _plain_iteration(F, tol=TOL, max_iter=MAX_ITER):
    u = 0.0
    for it in range(1, max_iter + 1):
        u_new = F(u)
        if abs(u_new - u) < tol:
            return FixedPointResult(u_new, it, True, abs(F(u_new) - u_new))
        u = u_new
    return FixedPointResult(u, max_iter, False, abs(F(u) - u))


def _solve(F, dF, method, tol, max_iter):
    if method == "newton":
        res = _newton_from_below(F, dF, tol, max_iter)
    elif method == "iterate":
        res = _plain_iteration(F, tol, max_iter)
    else:
        raise ValueError(f"unknown method {method!r}")
    if not res.converged:
        raise NoConvergenceError(
            f"fixed point not reached in {max_iter} steps (u={res.u}, residual={res.residual})"
        )
    return res


def _check_prob(name, p):
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"{name}={p} outside [0, 1]")


def solve_u(phi2, m, method="newton", tol=TOL, max_iter=MAX_ITER):
    """Probability that a random edge leads to a finite component.

    Smallest solution of ``u = 1 - phi2 + phi2 * g_r(u)``.
    """
    _check_prob("phi2", phi2)

    def F(u):
        return 1.0 - phi2 + phi2 * float(m.gr(u))

    def dF(u):
        return phi2 * float(m.gr_prime(u))

    return _solve(F, dF, method, tol, max_iter)


def giant_S(phi2, m, **kw):
    """Giant component fraction ``1 - g_p(u)`` at two-copy SCP ``phi2``."""
    u = solve_u(phi2, m, **kw).u
    return max(0.0, 1.0 - float(m.gp(u)))


def er_S_lambertW(z, phi2):
    """Erdos-Renyi giant component through the Lambert W closed form."""
    a = z * phi2
    if a <= 0:
        raise DomainError("need z * phi2 > 0")
    if a <= 1.0:
        return 0.0
    return 1.0 + lambertw(-a * math.exp(-a)) / a


def critical_phi2(m):
    """``1 / g_r'(1)``; values above 1 mean no transition is reachable."""
    slope = float(m.gr_prime(1.0))
    if slope <= 0:
        return math.inf
    return 1.0 / slope


# -- after q-swaps ----------------------------------------------------------------


def _cycle_poly(q, phi1):
    """Coefficients of ``C_q`` as a polynomial in ``w = x g_r(h)``."""
    c = np.zeros(q)
    for l in range(q - 1):
        c[l] = (l + 1) * phi1**l * (1.0 - phi1) ** 2
    c[q - 1] += q * phi1 ** (q - 1) * (1.0 - phi1) + phi1**q
    return c


def swapped_edge_map(phi1, m, strategy):
    """The edge map ``u -> h_R(1)`` after q-swaps and its derivative."""
    _check_prob("phi1", phi1)
    phi2 = phi2_of_phi1(phi1)
    terms = []
    for q in strategy.degrees:
        c = _cycle_poly(q, phi1)
        terms.append((q, strategy.pi(q) * m.rk(q - 1), c, np.polynomial.polynomial.polyder(c)))
    polyval = np.polynomial.polynomial.polyval

    def F(u):
        w = float(m.gr(u))
        out = 1.0 - phi2 + phi2 * w
        for q, a, c, _ in terms:
            out += a * ((phi2 - 1.0) - phi2 * u ** (q - 1) + polyval(w, c))
        return out

    def dF(u):
        w = float(m.gr(u))
        dw = float(m.gr_prime(u))
        out = phi2 * dw
        for q, a, _, dc in terms:
            out += a * (-phi2 * (q - 1) * u ** (q - 2) + polyval(w, dc) * dw)
        return out

    return F, dF


def solve_u_tilde(phi1, m, strategy, method="newton", tol=TOL, max_iter=MAX_ITER):
    """Edge-to-finite-component probability after applying ``strategy``."""
    if not strategy:
        return solve_u(phi2_of_phi1(phi1), m, method=method, tol=tol, max_iter=max_iter)
    F, dF = swapped_edge_map(phi1, m, strategy)
    return _solve(F, dF, method, tol, max_iter)


def analytic_eta(m, strategy, order=80):
    """``eta_q`` for random starts, from the xi series of ``m``'s excess degrees."""
    excess = {q: m.rk(q - 1) for q in strategy.degrees}
    return {q: eta_rand(strategy, excess, q, order)[0] for q in strategy.degrees}


def giant_S_tilde(phi1, m, strategy, eta=None, **kw):
    """Giant component fraction after q-swaps.

    ``eta`` maps each swapped degree to the probability that a vertex of that
    degree was actually operated on; measured values from a
    :class:`~entperc.qswap.SwapReport` fit here. Defaults to
    :func:`analytic_eta`.
    """
    if not strategy:
        return giant_S(phi2_of_phi1(phi1), m, **kw)
    if eta is None:
        eta = analytic_eta(m, strategy)
    for q, e in eta.items():
        _check_prob(f"eta_{q}", e)
    u = solve_u_tilde(phi1, m, strategy, **kw).u
    hp = float(m.gp(u))
    for q in strategy.degrees:
        hp += strategy.pi(q) * eta.get(q, 0.0) * m.pk(q) * (1.0 - u**q)
    return max(0.0, 1.0 - hp)


def s_hat(S_tilde, S1, S1_tilde):
    """Giant component rescaled so that swapped-out centers are not counted."""
    if S1_tilde == 0:
        raise ZeroDivisionError("reference giant component after swaps is empty")
    return S_tilde * S1 / S1_tilde


# -- thresholds --------------------------------------------------------------------


def _percolates(phi1, m, strategy, eps):
    if strategy:
        u = solve_u_tilde(phi1, m, strategy).u
    else:
        u = solve_u(phi2_of_phi1(phi1), m).u
    return u < 1.0 - eps


def find_threshold(m, strategy=None, eps=THRESHOLD_EPS, width=BRACKET_WIDTH):
    """Smallest single-copy SCP at which a giant component exists.

    Bisection on ``[0, 1]`` with the predicate ``u(phi1) < 1 - eps``.
    """
    strategy = strategy or SwapStrategy({})
    if not _percolates(1.0, m, strategy, eps):
        raise NoTransitionError("no giant component even at phi1 = 1")
    lo, hi = 0.0, 1.0
    while hi - lo > width:
        mid = 0.5 * (lo + hi)
        if _percolates(mid, m, strategy, eps):
            hi = mid
        else:
            lo = mid
    kind = "swapped" if strategy else "classical"
    return ThresholdResult(0.5 * (lo + hi), kind, hi - lo)


def gain(phi1_star, phi1_star_tilde):
    """Relative threshold change ``(swapped - classical) / classical``.

    Negative when swapping lowers the threshold; the magnitude is what gain
    plots usually show.
    """
    if phi1_star == 0:
        raise ZeroDivisionError("classical threshold is zero")
    return (phi1_star_tilde - phi1_star) / phi1_star


def best_strategy(m, degrees=(2, 3, 4, 5, 6)):
    """Exhaustive search over deterministic strategies on ``degrees``.

    Returns ``(strategy, threshold)`` with the lowest threshold; the empty
    strategy competes too.
    """
    best = None
    for strat in enumerate_strategies(degrees):
        try:
            th = find_threshold(m, strat)
        except NoTransitionError:
            continue
        if best is None or th.phi_star < best[1].phi_star - 1e-12:
            best = (strat, th)
    if best is None:
        raise NoTransitionError("no strategy percolates")
    return best


def swap_slope(phi1, m, strategy):
    """Derivative of the edge map at ``u = 1``; the transition sits where it is 1."""
    _, dF = swapped_edge_map(phi1, m, strategy)
    return dF(1.0)


def bethe_swap_residual(q, phi1):
    """Threshold condition on a Bethe lattice of coordination ``q`` after q-swaps.

    Zero at the swapped threshold.
    """
    return 1.0 / (q - 1) - (
        2.0 * phi1 + phi1**q * (phi1 * (q - 1) - (q + 1))
    ) / (1.0 - phi1)


def bethe_swap_threshold(q):
    if q == 2:
        return 1.0
    grid = np.linspace(1e-9, 1 - 1e-6, 2001)
    vals = [bethe_swap_residual(q, p) for p in grid]
    for i in range(len(grid) - 1):
        if vals[i] > 0 >= vals[i + 1]:
            return brentq(lambda p: bethe_swap_residual(q, p), grid[i], grid[i + 1], xtol=1e-14)
    raise NoTransitionError(f"no swapped threshold for Bethe q={q}")


def er_swap_residual(z, phi1, q):
    """Threshold condition for Erdos-Renyi after 2-swaps or 3-swaps alone.

    Zero at the swapped threshold. Both forms follow from linearizing the
    swapped edge map at ``u = 1``.
    """
    phi2 = phi2_of_phi1(phi1)
    if q == 2:
        rhs = phi2 + math.exp(-z) * (-phi2 + z * (2 * phi1 - phi1**2))
    elif q == 3:
        rhs = phi2 + z * math.exp(-z) * (-phi2 + z * phi1 * (1 + phi1 - phi1**2))
    else:
        raise ValueError("closed residual available for q = 2 and q = 3 only")
    return 1.0 / z - rhs


def er_swap_threshold(z, q):
    f = lambda p: er_swap_residual(z, p, q)
    if f(1.0) > 0:
        raise NoTransitionError(f"no threshold for z={z}, q={q}")
    return brentq(f, 0.0, 1.0, xtol=1e-14)


# -- limited path percolation -----------------------------------------------------


def limited_avg_size(m, l):
    """Mean number of vertices within ``l`` hops on a tree-like network."""
    if l < 0:
        raise DomainError("l must be non-negative")
    if l == 0:
        return 1.0
    gp1 = float(m.gp_prime(1.0))
    gr1 = float(m.gr_prime(1.0))
    if abs(gr1 - 1.0) < 1e-12:
        return 1.0 + gp1 * l
    return 1.0 + gp1 * (1.0 - gr1**l) / (1.0 - gr1)


def _smul(a, b, n):
    return np.convolve(a, b)[: n + 1]


def _sexp(f, n):
    """Truncated series of ``exp(f)``."""
    f = np.pad(np.asarray(f, dtype=np.float64), (0, max(0, n + 1 - len(f))))[: n + 1]
    out = np.zeros(n + 1)
    out[0] = math.exp(f[0])
    kf = np.arange(n + 1) * f
    for k in range(1, n + 1):
        out[k] = np.dot(kf[1 : k + 1], out[k - 1 :: -1][:k]) / k
    return out


def _compose(coeffs, h, n):
    """Truncated series of ``sum_k coeffs[k] h^k`` for ``h`` with ``h[0] = 0``."""
    coeffs = np.asarray(coeffs)[: n + 1]
    out = np.zeros(n + 1)
    for c in coeffs[::-1]:
        out = _smul(out, h, n)
        out[0] += c
    return out


def _gp_of(m, h, n):
    if m.kind == "poisson":
        z = m.params["z"]
        return _sexp(z * (h - np.eye(1, n + 1, 0).ravel()), n)
    return _compose(m.pmf, h, n)


def _gr_of(m, h, n):
    if m.kind == "poisson":
        return _gp_of(m, h, n)
    return _compose(m.excess_pmf, h, n)


def limited_gf_P(m, l, s_max=S_MAX):
    """Probabilities ``P_s`` (index ``s``) that a random vertex reaches ``s``
    vertices, itself included, within ``l`` hops."""
    if l < 0 or s_max < 1:
        raise DomainError("need l >= 0 and s_max >= 1")
    x = np.zeros(s_max + 1)
    x[1] = 1.0
    if l == 0:
        return x
    hr = x.copy()
    for _ in range(l - 1):
        hr = _smul(x, _gr_of(m, hr, s_max), s_max)
    return _smul(x, _gp_of(m, hr, s_max), s_max)


def ws_limited_avg(beta, l):
    """Mean ``l``-limited cluster size on the ring-plus-shortcuts model."""
    if beta < 0 or l < 0:
        raise DomainError("need beta >= 0 and l >= 0")
    prev2, prev = 0.0, 1.0
    for _ in range(l):
        prev2, prev = prev, prev + 2.0 + 2.0 * beta * (prev + prev2)
    return prev


def ws_limited_avg_direct(beta, l):
    """Same quantity from the cumulative form of the recurrence."""
    s = [1.0]
    for j in range(1, l + 1):
        s.append(1.0 + 2 * j + 2 * beta * (s[j - 1] + 2 * sum(s[: j - 1])))
    return s[l]


def ws_limited_gf(beta, l, s_max=S_MAX):
    """Series coefficients of the ``l``-limited cluster-size generating
    function on the ring-plus-shortcuts model."""
    if beta < 0 or l < 0:
        raise DomainError("need beta >= 0 and l >= 0")
    x = np.zeros(s_max + 1)
    x[1] = 1.0
    hs = [x]
    for j in range(1, l + 1):
        bracket = -hs[j - 1].copy()
        bracket[0] += 2 * j - 1
        for lam in range(2, j + 1):
            bracket -= 2 * hs[j - lam]
        power = np.zeros(s_max + 1)
        if 1 + 2 * j <= s_max:
            power[1 + 2 * j] = 1.0
        hs.append(_smul(power, _sexp(-2.0 * beta * bracket, s_max), s_max))
    return hs[l]
