import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from entperc.errors import DomainError
from entperc.quantum_links import (
    SQRT2_POINT,
    PureLink,
    WernerLink,
    alpha_of_F,
    fidelity_after_l,
    max_path_length,
    phi2_of_phi1,
    scp_double,
    scp_single,
    teleport_fidelity,
)


def test_scp_examples():
    assert scp_single(0.5) == 1 and scp_double(0.5) == 1
    assert scp_single(1.0) == 0 and scp_double(1.0) == 0
    assert scp_single(0.75) == pytest.approx(0.5)
    assert scp_double(0.75) == pytest.approx(0.875)
    assert PureLink(0.75, copies=1).scp == pytest.approx(0.5)
    with pytest.raises(DomainError):
        scp_single(0.4)
    with pytest.raises(DomainError):
        PureLink(0.7, copies=3)


def test_phi2_of_phi1_examples():
    assert phi2_of_phi1(0.0) == 0
    assert phi2_of_phi1(SQRT2_POINT) == pytest.approx(1.0, abs=1e-15)
    assert phi2_of_phi1(0.4) == pytest.approx(0.72)
    with pytest.raises(DomainError):
        phi2_of_phi1(1.5)


def test_werner_examples():
    assert alpha_of_F(1.0) == 1
    assert all(fidelity_after_l(1.0, l) == 1 for l in range(10))
    assert fidelity_after_l(0.9, 1) == pytest.approx(0.95)
    assert teleport_fidelity(1.0, 2) == 1
    assert teleport_fidelity(0.5, 2) == pytest.approx(2 / 3)
    assert WernerLink(0.7).alpha == pytest.approx(0.6)
    with pytest.raises(DomainError):
        WernerLink(0.2)


def test_max_path_length_examples():
    assert max_path_length(2 / 3, 0.9) == 10
    assert max_path_length(0.99, 0.5) == 0
    assert max_path_length(2 / 3, 1.0) == math.inf


@given(st.floats(0.5, 1.0))
def test_two_copies_never_worse(lam):
    assert scp_double(lam) >= scp_single(lam)


@given(st.floats(0.0, 1.0), st.floats(0.0, 1.0))
def test_phi2_monotone_and_clamped(a, b):
    lo, hi = sorted((a, b))
    assert phi2_of_phi1(lo) <= phi2_of_phi1(hi)
    if lo >= SQRT2_POINT:
        assert phi2_of_phi1(lo) == 1.0


@given(st.floats(0.5, 1.0))
def test_phi2_matches_lambda_elimination(lam):
    assert phi2_of_phi1(scp_single(lam)) == pytest.approx(scp_double(lam), abs=1e-12)


@given(st.floats(0.3, 0.99), st.integers(0, 30))
def test_fidelity_strictly_decreasing(alpha, l):
    assert fidelity_after_l(alpha, l + 1) < fidelity_after_l(alpha, l)
    assert fidelity_after_l(alpha, l) > 0.5


@given(st.floats(0.501, 0.999), st.floats(0.01, 0.999))
def test_max_path_length_sandwich(f_min, alpha):
    l = max_path_length(f_min, alpha)
    assert fidelity_after_l(alpha, l) >= f_min
    assert fidelity_after_l(alpha, l + 1) < f_min
