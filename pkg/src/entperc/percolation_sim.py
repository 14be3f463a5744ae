"""Seeded Monte Carlo: bond percolation scans, limited-path cluster sizes and
fidelity scans."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import EmptyPoolError
from .generators import generate
from .graph_core import (
    NEWBORN,
    average_path_length,
    avg_finite_size,
    components,
    distance_levels,
)
from .qswap import SwapStrategy, apply_qswaps, link_copies
from .quantum_links import alpha_of_F, max_path_length, phi2_of_phi1
from .seeding import BOOTSTRAP, GRAPH, OCCUPY, SOURCES, derive_rng

ONSET_FRACTION = 2e-3


@dataclass
class SweepConfig:
    phi_grid: list = field(default_factory=list)
    F_grid: list = field(default_factory=list)
    replicas: int = 1
    source_sample: int = 1000
    l_values: list = field(default_factory=list)
    seed: int = 0
    f_min: float = 2.0 / 3.0
    regenerate: bool = True  # fresh graph for every grid point
    bootstrap: int = 1000

    def __post_init__(self):
        if self.replicas < 1:
            raise ValueError("replicas must be >= 1")
        for name in ("phi_grid", "F_grid", "l_values"):
            vals = list(getattr(self, name))
            if vals != sorted(vals):
                raise ValueError(f"{name} must be sorted ascending")


@dataclass
class SweepResult:
    grid: np.ndarray
    S: np.ndarray = None
    S_err: np.ndarray = None
    s_avg: np.ndarray = None
    s_avg_err: np.ndarray = None
    l_values: np.ndarray = None
    s_l: np.ndarray = None  # <s_l>/N
    s_l_err: np.ndarray = None
    hist: np.ndarray = None
    l_av: float = math.nan
    threshold: float = math.nan
    threshold_onset: float = math.nan
    eta: dict = field(default_factory=dict)
    info: dict = field(default_factory=dict)


def bootstrap_se(samples, rng, resamples=1000):
    """Bootstrap standard error of the mean along axis 0."""
    samples = np.asarray(samples, dtype=np.float64)
    n = samples.shape[0]
    if n < 2:
        return np.zeros(samples.shape[1:])
    means = np.empty((resamples,) + samples.shape[1:])
    for b in range(resamples):
        means[b] = samples[rng.integers(0, n, size=n)].mean(axis=0)
    return means.std(axis=0, ddof=1)


def bond_percolate(g, p_original, p_newborn, rng, copies=None):
    """Keep each edge with the probability of its class; return components.

    ``copies`` optionally gives the number of independent single-copy links
    behind each newborn edge (see :func:`~entperc.qswap.link_copies`); such an
    edge is kept if any of them converts.
    """
    for p in (p_original, p_newborn):
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"occupation probability {p} outside [0, 1]")
    p_new = p_newborn if copies is None else 1.0 - (1.0 - p_newborn) ** copies
    p = np.where(g.edge_class == NEWBORN, p_new, p_original)
    keep = rng.random(g.edge_count) < p
    return components(g, keep)


def _finite_mean(stats):
    try:
        return avg_finite_size(stats, exclude_giant=True)
    except EmptyPoolError:
        return 0.0


def threshold_scan(gen, strategy, cfg):
    """Giant component and finite-cluster susceptibility across ``cfg.phi_grid``.

    Original edges are occupied with the two-copy SCP and newborn edges with
    the single-copy SCP ``phi1``. The threshold estimate is the grid point of
    largest mean finite-cluster size; ``threshold_onset`` is the first point
    where the giant fraction exceeds ``ONSET_FRACTION``.
    """
    strategy = strategy or SwapStrategy({})
    grid = np.asarray(cfg.phi_grid, dtype=np.float64)
    S = np.zeros((grid.size, cfg.replicas))
    s = np.zeros_like(S)
    performed, eligible = {}, {}

    def prepare(*path):
        rng = derive_rng(cfg.seed, GRAPH, *path)
        g = generate(gen, rng)
        copies = None
        if strategy:
            g, rep = apply_qswaps(g, strategy, rng)
            copies = link_copies(g, rep)
            for q in rep.eligible:
                eligible[q] = eligible.get(q, 0) + rep.eligible[q]
                performed[q] = performed.get(q, 0) + rep.performed[q]
        return g, copies

    def measure(prepared, i, r):
        g, copies = prepared
        rng = derive_rng(cfg.seed, OCCUPY, i, r)
        phi = grid[i]
        stats = bond_percolate(g, phi2_of_phi1(phi), phi, rng, copies)
        S[i, r] = stats.giant_fraction
        s[i, r] = _finite_mean(stats)

    if cfg.regenerate:
        for i in range(grid.size):
            for r in range(cfg.replicas):
                measure(prepare(i, r), i, r)
    else:
        for r in range(cfg.replicas):
            prepared = prepare(r)
            for i in range(grid.size):
                measure(prepared, i, r)

    brng = derive_rng(cfg.seed, BOOTSTRAP)
    res = SweepResult(grid=grid)
    res.S = S.mean(axis=1)
    res.S_err = bootstrap_se(S.T, brng, cfg.bootstrap)
    res.s_avg = s.mean(axis=1)
    res.s_avg_err = bootstrap_se(s.T, brng, cfg.bootstrap)
    if grid.size:
        res.threshold = float(grid[np.argmax(res.s_avg)])
        above = np.flatnonzero(res.S > ONSET_FRACTION)
        res.threshold_onset = float(grid[above[0]]) if above.size else math.nan
    res.eta = {q: performed[q] / eligible[q] for q in eligible if eligible[q]}
    res.info = {"replica_S": S, "replica_s": s}
    return res


def _source_levels(g, source_sample, rng):
    if source_sample is None or source_sample >= g.N:
        sources = np.arange(g.N)
    else:
        sources = np.sort(rng.choice(g.N, size=source_sample, replace=False))
    return sources, distance_levels(g, sources)


def _balls(levels, l_values):
    """Ball sizes per source (rows) for each requested radius (columns)."""
    out = np.empty((len(levels), len(l_values)), dtype=np.float64)
    for i, lev in enumerate(levels):
        cum = np.cumsum(lev)
        for j, l in enumerate(l_values):
            out[i, j] = cum[-1] if l >= cum.size else cum[int(l)]
    return out


def _histogram(levels):
    hist = np.zeros(max(lev.size for lev in levels), dtype=np.int64)
    for lev in levels:
        hist[: lev.size] += lev
    hist[0] = 0
    return hist


def limited_component_scan(g, l_values=None, source_sample=1000, rng=None, seed=0,
                           bootstrap=1000):
    """Mean ``l``-hop ball size over sampled sources, normalized by N.

    Every edge counts as occupied. Without ``l_values`` all radii up to the
    largest eccentricity seen are reported. ``rng`` picks the sources
    (defaults to a stream derived from ``seed``).
    """
    if rng is None:
        rng = derive_rng(seed, SOURCES)
    _, levels = _source_levels(g, source_sample, rng)
    hist = _histogram(levels)
    if l_values is None:
        l_values = np.arange(hist.size)
    l_values = np.asarray(l_values, dtype=np.int64)
    balls = _balls(levels, l_values) / g.N
    res = SweepResult(grid=l_values.astype(np.float64), l_values=l_values)
    res.s_l = balls.mean(axis=0)
    res.s_l_err = bootstrap_se(balls, derive_rng(seed, BOOTSTRAP), bootstrap)
    res.hist = hist
    res.l_av = average_path_length(hist)
    res.info = {"sources": len(levels)}
    return res


def fidelity_scan(g, F_grid, f_min=2.0 / 3.0, source_sample=1000, rng=None, seed=0,
                  bootstrap=1000):
    """Fraction of vertex pairs able to share fidelity ``>= f_min`` per link
    singlet fraction ``F``: the mean ball of radius ``max_path_length`` over N."""
    if rng is None:
        rng = derive_rng(seed, SOURCES)
    F_grid = np.asarray(F_grid, dtype=np.float64)
    _, levels = _source_levels(g, source_sample, rng)
    lmax = [max_path_length(f_min, alpha_of_F(F)) for F in F_grid]
    radii = [g.N if math.isinf(l) else int(l) for l in lmax]
    balls = _balls(levels, radii) / g.N
    hist = _histogram(levels)
    res = SweepResult(grid=F_grid, l_values=np.asarray(radii))
    res.s_l = balls.mean(axis=0)
    res.s_l_err = bootstrap_se(balls, derive_rng(seed, BOOTSTRAP), bootstrap)
    res.hist = hist
    res.l_av = average_path_length(hist)
    res.info = {"path_limits": lmax}
    return res


def first_crossing(grid, values, level):
    """Linear interpolation of the first grid point where ``values`` reach ``level``."""
    grid = np.asarray(grid, dtype=np.float64)
    values = np.asarray(values, dtype=np.float64)
    idx = np.flatnonzero(values >= level)
    if idx.size == 0:
        return math.nan
    i = idx[0]
    if i == 0:
        return float(grid[0])
    x0, x1, y0, y1 = grid[i - 1], grid[i], values[i - 1], values[i]
    return float(x0 + (level - y0) * (x1 - x0) / (y1 - y0))
