"""The q-swap graph transformation and the probability that it can be applied.

``apply_qswaps`` walks the graph breadth-first and turns eligible ``q``-stars
into ``q``-cycles of newborn edges. The remaining functions give closed forms
and series for ``eta_q``, the chance that a target vertex actually gets
swapped.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field

import numpy as np
from scipy.signal import convolve2d, fftconvolve
from scipy.special import comb

from .errors import BudgetExceededError, DomainError, NoConvergenceError
from .graph_core import NEWBORN, ORIGINAL, Graph


@dataclass(frozen=True)
class SwapStrategy:
    """Activation probability ``Pi_q`` per target degree ``q >= 2``."""

    active: dict

    def __post_init__(self):
        for q, pi in self.active.items():
            if int(q) != q or q < 2:
                raise DomainError(f"swap degree must be an integer >= 2, got {q}")
            if not 0.0 <= pi <= 1.0:
                raise DomainError(f"Pi_{q}={pi} outside [0, 1]")

    @classmethod
    def of(cls, *degrees):
        """Deterministic strategy swapping every listed degree."""
        return cls({int(q): 1.0 for q in degrees})

    def pi(self, q):
        return self.active.get(q, 0.0)

    @property
    def degrees(self):
        return sorted(q for q, pi in self.active.items() if pi > 0)

    def __bool__(self):
        return bool(self.degrees)


@dataclass
class SwapReport:
    eligible: dict = field(default_factory=dict)
    performed: dict = field(default_factory=dict)
    skipped_duplicate: dict = field(default_factory=dict)
    centers: list = field(default_factory=list)
    # newborn edges standing for two single-copy links (one per 2-swap)
    paired: list = field(default_factory=list)

    @property
    def eta(self):
        return {
            q: self.performed.get(q, 0) / n for q, n in self.eligible.items() if n > 0
        }


def apply_qswaps(g, strategy, rng):
    """Apply q-swaps during a breadth-first traversal of ``g``.

    Roots are taken in a random order; each traversal covers one component.
    A vertex of original degree ``q`` is swapped when the strategy selects it
    and all of its edges are still original and unused. Its neighbors, in
    stored adjacency order, are joined into a cycle of newborn edges (a single
    edge for ``q = 2``) and the vertex is left isolated. Swaps whose cycle would
    duplicate an existing edge are skipped and counted.

    Returns
    -------
    graph : Graph
        Surviving original edges followed by newborn edges.
    report : SwapReport
    """
    if g.count_class(NEWBORN):
        raise ValueError("q-swaps apply only to graphs with original edges")
    n = g.N
    indptr, indices, eids = g.csr()
    indptr = indptr.tolist()
    indices = indices.tolist()
    eids = eids.tolist()
    deg = g.degrees.tolist()
    us, vs = g.us.tolist(), g.vs.tolist()
    original_keys = {(min(a, b), max(a, b)) for a, b in zip(us, vs)}
    pis = {q: strategy.pi(q) for q in strategy.degrees}

    touched = [False] * n
    visited = [False] * n
    consumed = np.zeros(g.edge_count, dtype=bool)
    newborn = set()
    new_u, new_v = [], []
    report = SwapReport(
        eligible={q: 0 for q in pis},
        performed={q: 0 for q in pis},
        skipped_duplicate={q: 0 for q in pis},
    )

    queue = deque()
    for root in rng.permutation(n).tolist():
        if visited[root]:
            continue
        visited[root] = True
        queue.append(root)
        while queue:
            v = queue.popleft()
            lo, hi = indptr[v], indptr[v + 1]
            nbrs = indices[lo:hi]
            for w in nbrs:
                if not visited[w]:
                    visited[w] = True
                    queue.append(w)
            q = deg[v]
            pi = pis.get(q)
            if pi is None:
                continue
            report.eligible[q] += 1
            if touched[v]:
                continue
            if pi < 1.0 and rng.random() >= pi:
                continue
            if q == 2:
                ring = [(nbrs[0], nbrs[1])]
            else:
                ring = [(nbrs[i], nbrs[(i + 1) % q]) for i in range(q)]
            keys = [(min(a, b), max(a, b)) for a, b in ring]
            if any(k in original_keys or k in newborn for k in keys):
                report.skipped_duplicate[q] += 1
                continue
            for e in eids[lo:hi]:
                consumed[e] = True
            touched[v] = True
            for w in nbrs:
                touched[w] = True
            for a, b in keys:
                newborn.add((a, b))
                new_u.append(a)
                new_v.append(b)
            report.performed[q] += 1
            report.centers.append(v)
            if q == 2:
                report.paired.append(keys[0])

    keep = ~consumed
    out_u = np.concatenate((g.us[keep], np.asarray(new_u, dtype=np.int64)))
    out_v = np.concatenate((g.vs[keep], np.asarray(new_v, dtype=np.int64)))
    cls = np.concatenate(
        (
            np.full(int(keep.sum()), ORIGINAL, dtype=np.int8),
            np.full(len(new_u), NEWBORN, dtype=np.int8),
        )
    )
    return Graph(n, out_u, out_v, cls, validate=False), report


def link_copies(g, report):
    """Number of single-copy links carried by each edge of a swapped graph.

    A 2-swap consumes both copies on each of its two edges, so its newborn edge
    holds two independent links; every other edge holds one.
    """
    copies = np.ones(g.edge_count, dtype=np.int64)
    if report.paired:
        paired = set(report.paired)
        for e, (a, b) in enumerate(zip(g.us.tolist(), g.vs.tolist())):
            if g.edge_class[e] == NEWBORN and (min(a, b), max(a, b)) in paired:
                copies[e] = 2
    return copies


# -- eta_2 closed forms ------------------------------------------------------------


def _check_r1(r1):
    if not 0.0 <= r1 < 1.0:
        raise DomainError(f"excess probability r1={r1} outside [0, 1)")


def eta2_max(r1):
    """2-swap probability when every degree-2 chain is entered at an end."""
    _check_r1(r1)
    return 1.0 / (1.0 + r1)


def eta2_min(r1):
    _check_r1(r1)
    return (1.0 - (1.0 - r1) * r1 * r1) / (1.0 + r1)


def eta2_rand(r1):
    """2-swap probability when each chain is started at a random vertex."""
    _check_r1(r1)
    if r1 == 0.0:
        return 1.0
    if r1 < 1e-4:
        # atanh(r)/r = 1 + r^2/3 + ...; avoid cancellation near zero
        return 0.5 * (1.0 + (1.0 - r1) ** 2 * (1.0 + r1 * r1 / 3.0 + r1**4 / 5.0))
    return (r1 + (1.0 - r1) ** 2 * math.atanh(r1)) / (2.0 * r1)


def xi2(s, t, r1):
    """Probability that a random degree-2 vertex has ``s`` degree-2 vertices at
    odd and ``t`` at even distance (itself included) in its chain."""
    if s < 0 or t < 0 or abs(s - t) > 1 or t == 0:
        return 0.0
    return comb(2, 1 + s - t, exact=True) * (1.0 - r1) ** 2 * r1 ** (s + t - 1) * t


# -- generating function of xi -----------------------------------------------------


def _targets(strategy, excess):
    qs = strategy.degrees
    a = {q: strategy.pi(q) * excess.get(q, 0.0) for q in qs}
    # a random target vertex has degree q with probability proportional to
    # p_q, i.e. to r_{q-1}/q; one target degree gives weight 1
    w = {q: strategy.pi(q) * excess.get(q, 0.0) / q for q in qs}
    tot = sum(w.values())
    if tot == 0:
        w = {q: 1.0 / len(qs) for q in qs}
    else:
        w = {q: v / tot for q, v in w.items()}
    return qs, a, w


def h_xi_eval(x, y, strategy, excess, start_degree=None, tol=1e-12, max_iter=100_000,
              damping=1.0):
    """Generating function of xi at ``(x, y)``.

    ``excess`` maps each target degree ``q`` to ``r_{q-1}``, the probability
    that an edge leads to a vertex of degree ``q``. The odd/even branch
    functions are found by iteration from zero; the result averages the start
    vertex over target degrees (or uses ``start_degree`` alone).
    """
    if not (0 <= x <= 1 and 0 <= y <= 1):
        raise DomainError("x and y must lie in [0, 1]")
    qs, a, w = _targets(strategy, excess)
    if start_degree is not None:
        w = {q: float(q == start_degree) for q in qs}
    c0 = 1.0 - sum(a.values())
    hs = ht = 0.0
    for it in range(max_iter):
        ns = c0 + y * sum(a[q] * ht ** (q - 1) for q in qs)
        nt = c0 + x * sum(a[q] * hs ** (q - 1) for q in qs)
        ns = hs + damping * (ns - hs)
        nt = ht + damping * (nt - ht)
        if abs(ns - hs) < tol and abs(nt - ht) < tol:
            hs, ht = ns, nt
            break
        hs, ht = ns, nt
    else:
        raise NoConvergenceError(f"h_S/h_T did not converge in {max_iter} steps")
    return x * sum(w[q] * hs**q for q in qs)


def h_xi_closed(x, y, r1):
    """Closed form of the xi generating function for 2-swaps only."""
    return x * (1 - r1) ** 2 * (1 + r1 * y) ** 2 / (1 - r1 * r1 * x * y) ** 2


def _mul2(a, b, order):
    conv = convolve2d if order <= 16 else fftconvolve
    c = conv(a, b)[: order + 1, : order + 1]
    c[np.add.outer(np.arange(order + 1), np.arange(order + 1)) > order] = 0.0
    return c


def _pow2(a, k, order):
    out = np.zeros_like(a)
    out[0, 0] = 1.0
    for _ in range(k):
        out = _mul2(out, a, order)
    return out


def xi_coefficients(strategy, excess, order, start_degree=None):
    """Array ``xi[s, t]`` for ``s + t <= order`` by truncated series iteration.

    ``s`` counts odd-distance and ``t`` even-distance cluster vertices.
    """
    qs, a, w = _targets(strategy, excess)
    if start_degree is not None:
        w = {q: float(q == start_degree) for q in qs}
    c0 = 1.0 - sum(a.values())
    size = order + 1
    one = np.zeros((size, size))
    one[0, 0] = 1.0
    ymono = np.zeros((size, size))
    xmono = np.zeros((size, size))
    if order >= 1:
        ymono[1, 0] = 1.0  # first axis: power of y (odd count s)
        xmono[0, 1] = 1.0  # second axis: power of x (even count t)
    hs = np.zeros((size, size))
    ht = np.zeros((size, size))
    for _ in range(order + 2):
        sum_t = sum(a[q] * _pow2(ht, q - 1, order) for q in qs)
        sum_s = sum(a[q] * _pow2(hs, q - 1, order) for q in qs)
        hs, ht = c0 * one + _mul2(ymono, sum_t, order), c0 * one + _mul2(xmono, sum_s, order)
    hxi = sum(w[q] * _pow2(hs, q, order) for q in qs)
    return _mul2(xmono, hxi, order)


def eta_rand(strategy, excess, q, order=80):
    """``eta_q`` for random starts from the truncated xi series.

    Returns ``(eta, tail)`` where ``tail`` is the xi mass beyond ``order``.
    """
    xi = xi_coefficients(strategy, excess, order, start_degree=q)
    s, t = np.indices(xi.shape)
    with np.errstate(invalid="ignore", divide="ignore"):
        frac = np.where(s + t > 0, t / (s + t), 0.0)
    return float(np.sum(frac * xi)), float(1.0 - xi.sum())


def eta_q_rand_series(q, r, n, max_terms=1_000_000):
    """``eta_q`` for a single target degree, exact to order ``n`` in ``r``.

    Sums over branching histories ``k_0 = 1, k_1 <= q, k_i <= (q-1) k_{i-1}``;
    swaps happen on the even generations.
    """
    if q < 2 or n < 1:
        raise DomainError("need q >= 2 and n >= 1")
    if not 0.0 <= r < 1.0:
        raise DomainError(f"r={r} outside [0, 1)")
    total = 0.0
    terms = 0
    stack = [((1, ), 1.0)]
    while stack:
        ks, weight = stack.pop()
        i = len(ks)
        if i == n + 1:
            terms += 1
            if terms > max_terms:
                raise BudgetExceededError(f"more than {max_terms} branching histories")
            even = sum(ks[0::2])
            free = q + (q - 2) * sum(ks[1:n]) - ks[n]
            total += even / sum(ks) * weight * r ** sum(ks[1:]) * (1.0 - r) ** free
            continue
        width = q * ks[0] if i == 1 else (q - 1) * ks[-1]
        for k in range(width + 1):
            stack.append((ks + (k,), weight * comb(width, k, exact=True)))
    return total


def simulate_branching_eta(q, r, n, rng, samples=100_000):
    """Monte Carlo of the truncated branching process behind ``eta_q``.

    Returns ``(mean, standard_error)``.
    """
    k = np.ones(samples, dtype=np.int64)
    gens = [k]
    for i in range(1, n + 1):
        width = q * gens[-1] if i == 1 else (q - 1) * gens[-1]
        gens.append(rng.binomial(width, r))
    gens = np.array(gens, dtype=np.float64)
    ratio = gens[0::2].sum(axis=0) / gens.sum(axis=0)
    return float(ratio.mean()), float(ratio.std(ddof=1) / math.sqrt(samples))


def enumerate_strategies(degrees):
    """Every deterministic strategy over ``degrees``, the empty one included."""
    degrees = sorted(degrees)
    for r in range(len(degrees) + 1):
        for subset in itertools.combinations(degrees, r):
            yield SwapStrategy.of(*subset)
