import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import simple_graphs
from entperc.analytic import er_S_lambertW, limited_avg_size
from entperc.degree_models import DegreeModel
from entperc.generators import GeneratorSpec, gen_er, gen_honeycomb
from entperc.graph_core import NEWBORN, Graph, bfs_ball, components
from entperc.percolation_sim import (
    SweepConfig,
    bond_percolate,
    bootstrap_se,
    fidelity_scan,
    first_crossing,
    limited_component_scan,
    threshold_scan,
)
from entperc.qswap import SwapStrategy
from entperc.quantum_links import SQRT2_POINT
from entperc.seeding import derive_rng


def test_sweep_config_validation():
    with pytest.raises(ValueError):
        SweepConfig(phi_grid=[0.3, 0.1])
    with pytest.raises(ValueError):
        SweepConfig(replicas=0)


def test_bond_percolate_extremes():
    g = gen_er(2000, 2.0, derive_rng(1))
    full = bond_percolate(g, 1.0, 1.0, derive_rng(2))
    assert np.array_equal(full.sizes, components(g).sizes)
    empty = bond_percolate(g, 0.0, 0.0, derive_rng(2))
    assert empty.sizes.tolist() == [1] * g.N
    with pytest.raises(ValueError):
        bond_percolate(g, 1.2, 0.5, derive_rng(2))


def test_bond_percolate_er_giant():
    g = gen_er(10**6, 2.5, derive_rng(3))
    s = bond_percolate(g, 1.0, 1.0, derive_rng(4)).giant_fraction
    assert abs(s - er_S_lambertW(2.5, 1.0)) < 0.001


def test_copies_raise_occupation():
    # two parallel single-copy links connect with probability 1 - (1 - p)^2
    g = Graph(2, [0], [1], [NEWBORN])
    rng = derive_rng(5)
    hits = sum(
        bond_percolate(g, 0.0, 0.3, rng, copies=np.array([2])).giant_size == 2
        for _ in range(20000)
    )
    assert abs(hits / 20000 - 0.51) < 0.015


def test_bootstrap_se():
    rng = derive_rng(6)
    x = rng.normal(size=(400, 2))
    se = bootstrap_se(x, derive_rng(7), 500)
    assert np.allclose(se, 1 / 20, rtol=0.2)
    assert bootstrap_se(x[:1], rng).tolist() == [0, 0]


# -- threshold scans ------------------------------------------------------------------


GRID = list(np.round(np.arange(0.15, 0.33, 0.01), 3))


def test_er_threshold_scan():
    cfg = SweepConfig(phi_grid=GRID, replicas=2, seed=1, regenerate=False, bootstrap=50)
    res = threshold_scan(GeneratorSpec("er", 10**5, {"z": 2.5}), None, cfg)
    assert abs(res.threshold - (2 - math.sqrt(3.2))) <= 0.02
    assert np.all((0 <= res.S) & (res.S <= 1))
    assert np.all(res.S_err >= 0) and np.all(res.s_avg_err >= 0)
    # S non-decreasing within 2 sigma
    d = np.diff(res.S)
    assert np.all(d >= -2 * (res.S_err[1:] + res.S_err[:-1]) - 1e-12)


def test_bethe_threshold_scan():
    grid = list(np.round(np.arange(0.2, 0.34, 0.01), 3))
    cfg = SweepConfig(phi_grid=grid, replicas=2, seed=2, regenerate=False, bootstrap=50)
    res = threshold_scan(GeneratorSpec("random_regular", 10**5, {"k": 3}), None, cfg)
    assert abs(res.threshold - (2 - math.sqrt(3))) <= 0.02


def test_swap_scan_shape():
    grid = [0.25, 0.3, SQRT2_POINT, 1.0]
    cfg = SweepConfig(phi_grid=grid, replicas=2, seed=3, regenerate=False, bootstrap=50)
    gen = GeneratorSpec("er", 50000, {"z": 2.5})
    plain = threshold_scan(gen, None, cfg)
    swapped = threshold_scan(gen, SwapStrategy.of(2, 3), cfg)
    s_hat = swapped.S * plain.S[-1] / swapped.S[-1]
    assert s_hat[0] > plain.S[0] and s_hat[1] > plain.S[1]
    assert s_hat[2] < plain.S[2]
    assert set(swapped.eta) == {2, 3}


def test_scan_reproducible():
    cfg = SweepConfig(phi_grid=[0.2, 0.4], replicas=2, seed=9, bootstrap=20)
    gen = GeneratorSpec("er", 3000, {"z": 2.5})
    a = threshold_scan(gen, SwapStrategy.of(2), cfg)
    b = threshold_scan(gen, SwapStrategy.of(2), cfg)
    assert np.array_equal(a.S, b.S) and np.array_equal(a.s_avg, b.s_avg)
    assert a.eta == b.eta


# -- limited paths ----------------------------------------------------------------------


def test_limited_scan_basics():
    g = gen_er(5000, 2.0, derive_rng(4))
    res = limited_component_scan(g, [0, 1, 2, 3], source_sample=500, seed=1, bootstrap=50)
    assert res.s_l[0] * g.N == pytest.approx(1.0)
    assert np.all(np.diff(res.s_l) >= 0)
    assert res.hist[0] == 0 and res.l_av > 0


def test_limited_scan_matches_closed_form():
    g = gen_er(10**5, 2.0, derive_rng(5))
    res = limited_component_scan(g, [1, 2, 3, 4], source_sample=2000, seed=2, bootstrap=200)
    m = DegreeModel.poisson(2.0)
    for l, s, e in zip(res.l_values, res.s_l * g.N, res.s_l_err * g.N):
        assert abs(s - limited_avg_size(m, l)) <= 3 * e + 1e-9


@given(simple_graphs(max_n=20))
def test_limited_scan_saturates(g):
    res = limited_component_scan(g, None, source_sample=None, bootstrap=10)
    sizes = components(g).sizes
    assert res.s_l[-1] == pytest.approx(np.sum(sizes**2) / g.N**2)
    assert np.all(np.diff(res.s_l) >= -1e-15)
    # column for radius l is the mean bfs ball
    for l in range(min(3, len(res.s_l))):
        balls = [bfs_ball(g, v, l) for v in range(g.N)]
        assert res.s_l[l] == pytest.approx(np.mean(balls) / g.N)


# -- fidelity ---------------------------------------------------------------------------


def test_fidelity_examples():
    g = gen_honeycomb(8, 8)
    res = fidelity_scan(g, [0.5001, 1.0], f_min=0.9, source_sample=None, seed=1, bootstrap=10)
    assert res.l_values[0] == 0
    assert res.s_l[0] == pytest.approx(1 / g.N)
    assert res.s_l[1] == pytest.approx(components(g).pair_fraction())
    assert math.isinf(res.info["path_limits"][1])


def test_first_crossing():
    assert first_crossing([0, 1, 2], [0, 0.5, 1.0], 0.75) == pytest.approx(1.5)
    assert math.isnan(first_crossing([0, 1], [0, 0.1], 0.5))
