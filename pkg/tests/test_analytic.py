import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import optimize, special

from entperc.analytic import (
    analytic_eta,
    bethe_swap_residual,
    bethe_swap_threshold,
    best_strategy,
    critical_phi2,
    er_S_lambertW,
    er_swap_residual,
    er_swap_threshold,
    find_threshold,
    gain,
    giant_S,
    giant_S_tilde,
    lambertw,
    limited_avg_size,
    limited_gf_P,
    s_hat,
    solve_u,
    solve_u_tilde,
    ws_limited_avg,
    ws_limited_avg_direct,
    ws_limited_gf,
)
from entperc.degree_models import DegreeModel
from entperc.errors import DomainError, NoTransitionError
from entperc.qswap import SwapStrategy
from entperc.quantum_links import phi2_of_phi1

ER25 = DegreeModel.poisson(2.5)


def er_S_oracle(a):
    """Positive root of S = 1 - exp(-a S) by bracketing."""
    if a <= 1:
        return 0.0
    return optimize.brentq(lambda S: S - 1 + math.exp(-a * S), 1e-12, 1.0, xtol=1e-15)


# -- Lambert W ----------------------------------------------------------------------


@given(st.floats(-1 / math.e + 1e-6, 50.0))
def test_lambertw_against_scipy(x):
    assert lambertw(x) == pytest.approx(special.lambertw(x).real, abs=1e-10, rel=1e-12)


@given(st.floats(-1 / math.e, 50.0))
def test_lambertw_residual(x):
    w = lambertw(x)
    assert w >= -1.0
    assert w * math.exp(w) == pytest.approx(x, abs=1e-15, rel=1e-13)


def test_lambertw_domain():
    with pytest.raises(DomainError):
        lambertw(-0.5)


# -- solve_u and giant_S --------------------------------------------------------------


def test_solve_u_examples():
    assert solve_u(0.0, ER25).u == 1.0
    assert solve_u(0.3, ER25).u == 1.0
    res = solve_u(1.0, ER25)
    assert res.converged and res.u == pytest.approx(0.10735, abs=1e-5)
    assert res.u == pytest.approx(math.exp(2.5 * (res.u - 1)), abs=1e-12)


def test_iteration_and_newton_agree():
    for phi2 in (0.45, 0.6, 0.9, 1.0):
        a = solve_u(phi2, ER25, method="newton").u
        b = solve_u(phi2, ER25, method="iterate").u
        assert a == pytest.approx(b, abs=1e-9)


def test_giant_S_examples():
    assert giant_S(0.3, ER25) == 0
    assert giant_S(1.0, ER25) == pytest.approx(0.8926, abs=1e-4)
    assert giant_S(1.0, DegreeModel.delta(3)) == 1.0


def test_lambertw_route_examples():
    assert er_S_lambertW(2.0, 0.5) == 0
    assert er_S_lambertW(2.5, 1.0) == pytest.approx(giant_S(1.0, ER25), abs=1e-10)
    assert er_S_lambertW(2.0, 1.0) == pytest.approx(er_S_oracle(2.0), abs=1e-12)
    assert er_S_lambertW(2.0, 1.0) == pytest.approx(0.7968, abs=1e-4)


@given(st.floats(0.2, 8.0), st.floats(0.01, 1.0))
def test_route_equivalence(z, phi2):
    a = er_S_lambertW(z, phi2)
    b = giant_S(phi2, DegreeModel.poisson(z))
    assert a == pytest.approx(b, abs=1e-10)
    assert a == pytest.approx(er_S_oracle(z * phi2), abs=1e-10)


@given(st.floats(0.0, 1.0), st.floats(0.0, 1.0))
def test_giant_S_monotone(a, b):
    lo, hi = sorted((a, b))
    m = DegreeModel.power_law_cutoff(1.0, 10.0)
    assert giant_S(lo, m) <= giant_S(hi, m) + 1e-10


def test_critical_phi2_examples():
    assert critical_phi2(ER25) == pytest.approx(0.4)
    assert critical_phi2(DegreeModel.delta(3)) == pytest.approx(0.5)
    assert critical_phi2(DegreeModel.delta(2)) == pytest.approx(1.0)


# -- after swaps ----------------------------------------------------------------------


def test_empty_strategy_reduces():
    for phi1 in (0.1, 0.3, 0.7, 1.0):
        assert solve_u_tilde(phi1, ER25, SwapStrategy({})).u == solve_u(
            phi2_of_phi1(phi1), ER25
        ).u
        assert giant_S_tilde(phi1, ER25, SwapStrategy({})) == giant_S(
            phi2_of_phi1(phi1), ER25
        )


@given(st.floats(0.0, 1.0))
def test_zero_eta_is_rewiring_only(phi1):
    s = SwapStrategy.of(2, 3)
    u = solve_u_tilde(phi1, ER25, s).u
    got = giant_S_tilde(phi1, ER25, s, eta={2: 0.0, 3: 0.0})
    assert got == pytest.approx(max(0.0, 1 - float(ER25.gp(u))), abs=1e-12)


def test_er_swap_lowers_u_at_full_occupation():
    assert solve_u_tilde(1.0, ER25, SwapStrategy.of(2)).u < solve_u(1.0, ER25).u + 1e-12


def test_bethe_threshold():
    # oracle: bisection on the displayed 3-swap condition
    f = lambda p: 2 * p + p**3 * (2 * p - 4) - (1 - p) / 2
    root = optimize.bisect(f, 0.01, 0.5, xtol=1e-14)
    assert root == pytest.approx(0.214, abs=1e-3)
    assert bethe_swap_threshold(3) == pytest.approx(root, abs=1e-10)
    assert bethe_swap_residual(3, root) == pytest.approx(0, abs=1e-10)
    th = find_threshold(DegreeModel.delta(3), SwapStrategy.of(3))
    assert th.phi_star == pytest.approx(root, abs=2e-6)
    classical = find_threshold(DegreeModel.delta(3))
    assert classical.phi_star == pytest.approx(0.2679, abs=1e-4)
    assert abs(gain(classical.phi_star, th.phi_star)) == pytest.approx(0.20, abs=0.01)


def test_er_thresholds():
    th = find_threshold(ER25)
    assert th.phi_star == pytest.approx(2 - math.sqrt(3.2), abs=1e-6)
    assert phi2_of_phi1(th.phi_star) * 2.5 == pytest.approx(1.0, abs=1e-6)
    th2 = find_threshold(ER25, SwapStrategy.of(2))
    assert abs(er_swap_residual(2.5, th2.phi_star, 2)) < 1e-6
    assert th2.phi_star == pytest.approx(er_swap_threshold(2.5, 2), abs=2e-6)
    th3 = find_threshold(ER25, SwapStrategy.of(3))
    assert abs(er_swap_residual(2.5, th3.phi_star, 3)) < 1e-6


@given(st.floats(1.01, 8.0))
def test_er_threshold_property(z):
    th = find_threshold(DegreeModel.poisson(z))
    assert phi2_of_phi1(th.phi_star) * z == pytest.approx(1.0, abs=1e-6)


def test_no_transition():
    with pytest.raises(NoTransitionError):
        find_threshold(DegreeModel.poisson(0.5))


def test_gain_and_s_hat():
    assert gain(0.3, 0.3) == 0
    assert gain(0.25, 0.2) == pytest.approx(-0.2)
    assert s_hat(0.5, 0.8926, 0.5) == pytest.approx(0.8926)
    assert s_hat(0.0, 0.8926, 0.5) == 0
    with pytest.raises(ZeroDivisionError):
        s_hat(0.1, 0.9, 0.0)
    s = SwapStrategy.of(2, 3)
    S1 = giant_S(1.0, ER25)
    S1t = giant_S_tilde(1.0, ER25, s)
    assert s_hat(S1t, S1, S1t) == pytest.approx(0.8926, abs=1e-4)


def test_best_strategy_beats_classical():
    m = DegreeModel.poisson(3.0)
    strat, th = best_strategy(m, degrees=(2, 3, 4))
    assert th.phi_star < find_threshold(m).phi_star
    assert strat


def test_analytic_eta_in_unit_interval():
    eta = analytic_eta(ER25, SwapStrategy.of(2, 3))
    assert all(0 < v < 1 for v in eta.values())


# -- limited paths ----------------------------------------------------------------------


def test_limited_avg_examples():
    m = DegreeModel.poisson(2.0)
    assert limited_avg_size(m, 0) == 1
    assert limited_avg_size(m, 2) == pytest.approx(7)
    crit = DegreeModel.poisson(1.0)
    assert limited_avg_size(crit, 5) == pytest.approx(6)


def test_limited_gf_examples():
    P = limited_gf_P(DegreeModel.poisson(2.0), 0, 20)
    assert P[1] == 1 and P.sum() == 1
    P = limited_gf_P(DegreeModel.delta(2), 1, 20)
    assert P[3] == pytest.approx(1.0)
    P = limited_gf_P(DegreeModel.poisson(1.0), 1, 30)
    shifted = [0.0] + [math.exp(-1) / math.factorial(s - 1) for s in range(1, 31)]
    np.testing.assert_allclose(P, shifted, atol=1e-14)


@pytest.mark.parametrize("l", [1, 2, 3])
def test_limited_gf_mean_matches_closed_form(l):
    m = DegreeModel.poisson(1.5)
    P = limited_gf_P(m, l, 200)
    assert P.sum() == pytest.approx(1.0, abs=1e-10)
    assert np.dot(np.arange(P.size), P) == pytest.approx(limited_avg_size(m, l), rel=1e-9)


def test_ws_examples():
    assert [ws_limited_avg(0.0, l) for l in range(5)] == [1, 3, 5, 7, 9]
    assert ws_limited_avg(0.2, 1) == pytest.approx(3.4, abs=1e-14)
    assert ws_limited_avg(0.2, 2) == pytest.approx(7.16, abs=1e-14)
    assert ws_limited_avg_direct(0.2, 2) == pytest.approx(7.16, abs=1e-14)
    h = ws_limited_gf(0.0, 3, 20)
    assert h[7] == 1 and h.sum() == 1
    h = ws_limited_gf(0.2, 2, 200)
    assert h.sum() == pytest.approx(1.0, abs=1e-10)
    assert np.dot(np.arange(h.size), h) == pytest.approx(7.16, abs=1e-9)


@given(st.floats(0.0, 1.0), st.floats(0.0, 1.0), st.integers(0, 15))
def test_ws_monotone(b1, b2, l):
    lo, hi = sorted((b1, b2))
    assert ws_limited_avg(lo, l) <= ws_limited_avg(hi, l) + 1e-9
    assert ws_limited_avg(lo, l) <= ws_limited_avg(lo, l + 1)
    assert ws_limited_avg(lo, l) == pytest.approx(ws_limited_avg_direct(lo, l), rel=1e-12)
