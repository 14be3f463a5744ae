"""Undirected simple graphs with component and hop-distance primitives.

Vertices are dense integers ``0..N-1``. Edges are stored as two parallel
integer arrays plus a per-edge class tag (``ORIGINAL`` or ``NEWBORN``); a CSR
adjacency is built lazily and keeps neighbors in edge-insertion order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import (
    DuplicateEdgeError,
    EmptyPoolError,
    SelfLoopError,
    VertexOutOfRangeError,
)

ORIGINAL = 0
NEWBORN = 1

#: Fraction of N above which the largest component counts as "giant".
GIANT_CUTOFF = 1e-2


class Graph:
    """Immutable undirected simple graph.

    Parameters
    ----------
    n : int
        Number of vertices.
    us, vs : array_like of int
        Edge endpoints; edge ``e`` joins ``us[e]`` and ``vs[e]``.
    edge_class : array_like of int8, optional
        ``ORIGINAL`` (default) or ``NEWBORN`` per edge.
    validate : bool
        Check range, self-loops and duplicates. Generators that guarantee
        these already pass ``False``.
    """

    def __init__(self, n, us, vs, edge_class=None, validate=True):
        n = int(n)
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        us = np.ascontiguousarray(us, dtype=np.int64).reshape(-1)
        vs = np.ascontiguousarray(vs, dtype=np.int64).reshape(-1)
        if us.shape != vs.shape:
            raise ValueError("endpoint arrays differ in length")
        if edge_class is None:
            edge_class = np.zeros(us.shape[0], dtype=np.int8)
        else:
            edge_class = np.ascontiguousarray(edge_class, dtype=np.int8)
            if edge_class.shape != us.shape:
                raise ValueError("edge_class length differs from edge count")
        if validate:
            _check_edges(n, us, vs)
        for arr in (us, vs, edge_class):
            arr.flags.writeable = False
        self._n = n
        self._us = us
        self._vs = vs
        self._cls = edge_class
        self._csr = None

    @property
    def N(self):
        return self._n

    @property
    def edge_count(self):
        return self._us.shape[0]

    @property
    def edges(self):
        """``(M, 2)`` array of endpoints."""
        return np.column_stack((self._us, self._vs))

    @property
    def us(self):
        return self._us

    @property
    def vs(self):
        return self._vs

    @property
    def edge_class(self):
        return self._cls

    @property
    def degrees(self):
        return np.bincount(self._us, minlength=self._n) + np.bincount(
            self._vs, minlength=self._n
        )

    def csr(self):
        """``(indptr, indices, edge_ids)`` adjacency arrays."""
        if self._csr is None:
            m = self._us.shape[0]
            src = np.concatenate((self._us, self._vs))
            dst = np.concatenate((self._vs, self._us))
            eid = np.concatenate((np.arange(m), np.arange(m)))
            # interleave both directions of each edge so that insertion order
            # is preserved per vertex under a stable sort
            order_key = np.concatenate((2 * np.arange(m), 2 * np.arange(m) + 1))
            pre = np.argsort(order_key, kind="stable")
            src, dst, eid = src[pre], dst[pre], eid[pre]
            order = np.argsort(src, kind="stable")
            indptr = np.zeros(self._n + 1, dtype=np.int64)
            np.cumsum(np.bincount(src, minlength=self._n), out=indptr[1:])
            self._csr = (indptr, dst[order], eid[order])
        return self._csr

    def neighbors(self, v):
        indptr, indices, _ = self.csr()
        return indices[indptr[v] : indptr[v + 1]]

    def incident_edges(self, v):
        indptr, _, eid = self.csr()
        return eid[indptr[v] : indptr[v + 1]]

    def adjacency(self):
        """Neighbor list of every vertex as plain Python lists."""
        return [self.neighbors(v).tolist() for v in range(self._n)]

    def has_edge(self, u, v):
        return bool(np.any(self.neighbors(u) == v))

    def count_class(self, cls):
        return int(np.count_nonzero(self._cls == cls))

    def __eq__(self, other):
        if not isinstance(other, Graph) or other.N != self.N:
            return False
        return _edge_keys(self) == _edge_keys(other)

    __hash__ = None

    def __repr__(self):
        return f"Graph(N={self._n}, M={self.edge_count})"


def _edge_keys(g):
    a = np.minimum(g.us, g.vs)
    b = np.maximum(g.us, g.vs)
    return sorted(zip(a.tolist(), b.tolist(), g.edge_class.tolist()))


def _check_edges(n, us, vs):
    bad = (us < 0) | (us >= n) | (vs < 0) | (vs >= n)
    if bad.any():
        e = int(np.argmax(bad))
        raise VertexOutOfRangeError(
            f"edge ({us[e]}, {vs[e]}) outside 0..{n - 1}"
        )
    loops = us == vs
    if loops.any():
        raise SelfLoopError(int(us[np.argmax(loops)]))
    if us.size:
        key = np.minimum(us, vs) * n + np.maximum(us, vs)
        order = np.argsort(key, kind="stable")
        dup = np.flatnonzero(key[order][1:] == key[order][:-1])
        if dup.size:
            e = order[dup[0] + 1]
            raise DuplicateEdgeError(int(us[e]), int(vs[e]))


def build_graph(n, edges):
    """Graph on ``n`` vertices from an iterable of ``(u, v)`` pairs.

    All edges are tagged ``ORIGINAL``. Raises ``SelfLoopError``,
    ``DuplicateEdgeError`` or ``VertexOutOfRangeError`` on bad input.

    >>> build_graph(3, [(0, 1), (1, 2)]).degrees.tolist()
    [1, 2, 1]
    """
    arr = np.asarray(list(edges), dtype=np.int64).reshape(-1, 2)
    return Graph(n, arr[:, 0], arr[:, 1])


@dataclass(frozen=True)
class ComponentStats:
    """Component sizes of a graph, largest first."""

    sizes: np.ndarray
    N: int

    @property
    def giant_size(self):
        return int(self.sizes[0]) if self.sizes.size else 0

    @property
    def giant_fraction(self):
        return self.giant_size / self.N if self.N else 0.0

    @property
    def n_components(self):
        return int(self.sizes.size)

    def pair_fraction(self):
        """Probability that two random vertices (with replacement) share a component."""
        s = self.sizes.astype(np.float64)
        return float(np.sum(s * s) / (self.N * self.N))


def component_labels(g, keep=None):
    """Root label per vertex; ``keep`` masks which edges are present."""
    if keep is None:
        keep = np.ones(g.edge_count, dtype=np.bool_)
    return _kernels.union_find_labels(g.N, g.us, g.vs, keep)


def components(g, keep=None):
    """Partition ``g`` (restricted to the ``keep`` edge mask) into components."""
    labels = component_labels(g, keep)
    counts = np.bincount(labels, minlength=g.N)
    sizes = np.sort(counts[counts > 0])[::-1]
    return ComponentStats(sizes=sizes, N=g.N)


def avg_finite_size(stats, exclude_giant=None, cutoff=GIANT_CUTOFF):
    """Mean size of the component containing a uniformly random vertex.

    Parameters
    ----------
    stats : ComponentStats
    exclude_giant : bool or None
        ``True`` always drops the largest component from both the sum and the
        vertex pool, ``False`` never does. ``None`` drops it only when it holds
        more than ``cutoff * N`` vertices.
    """
    if stats.N < 1:
        raise EmptyPoolError("graph has no vertices")
    sizes = stats.sizes.astype(np.float64)
    if exclude_giant is None:
        exclude_giant = stats.giant_size > cutoff * stats.N
    if exclude_giant:
        sizes = sizes[1:]
    pool = sizes.sum()
    if pool == 0:
        raise EmptyPoolError("no vertices outside the largest component")
    return float(np.sum(sizes * sizes) / pool)


def bfs_ball(g, source, l):
    """Number of vertices within ``l`` hops of ``source``, source included."""
    if l < 0:
        raise ValueError("l must be non-negative")
    indptr, indices, _ = g.csr()
    dist = np.full(g.N, -1, dtype=np.int64)
    queue = np.empty(g.N, dtype=np.int64)
    return int(_kernels.bfs_ball_size(indptr, indices, int(source), int(l), dist, queue))


def distance_levels(g, sources):
    """Per-source arrays of vertex counts at hop distance 0, 1, 2, ..."""
    indptr, indices, _ = g.csr()
    dist = np.full(g.N, -1, dtype=np.int64)
    queue = np.empty(g.N, dtype=np.int64)
    return [
        _kernels.bfs_levels(indptr, indices, int(s), dist, queue) for s in sources
    ]


def default_sources(n, rng=None, sample=1000, exact_below=10_000):
    """All vertices for small graphs, otherwise ``min(n, sample)`` random ones."""
    if n <= exact_below:
        return np.arange(n)
    if rng is None:
        raise ValueError("an rng is required to sample sources on large graphs")
    return np.sort(rng.choice(n, size=min(n, sample), replace=False))


def path_length_histogram(g, sources=None, rng=None):
    """Counts ``n[l]`` of ordered (source, target) pairs at hop distance ``l``.

    ``n[0]`` is always 0. With every vertex as a source each unordered pair is
    counted twice, so divide by 2 before normalizing by ``N(N-1)/2``.
    """
    if sources is None:
        sources = default_sources(g.N, rng)
    sources = np.asarray(sources)
    if sources.size == 0:
        raise ValueError("source sample is empty")
    hist = np.zeros(1, dtype=np.int64)
    for lev in distance_levels(g, sources):
        if lev.size > hist.size:
            hist = np.pad(hist, (0, lev.size - hist.size))
        hist[: lev.size] += lev
    hist[0] = 0
    return hist


def average_path_length(hist):
    """Mean distance over connected pairs in a ``path_length_histogram``."""
    hist = np.asarray(hist, dtype=np.float64)
    total = hist[1:].sum()
    if total == 0:
        return 0.0
    return float(np.dot(np.arange(1, hist.size), hist[1:]) / total)


def write_edge_list(g, path):
    """Write one ``u v`` line per edge, preceded by a vertex-count comment."""
    with open(path, "w") as fh:
        fh.write(f"# N {g.N}\n")
        for u, v in zip(g.us.tolist(), g.vs.tolist()):
            fh.write(f"{u} {v}\n")
