"""Random and regular network ensembles, plus edge-list ingestion."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .degree_models import DegreeModel
from .errors import EmptyGraphError, GenerationFailedError, ParseError
from .graph_core import Graph

MAX_RESTARTS = 100
MAX_REDRAWS = 1000


# -- configuration model -----------------------------------------------------


def _pair_keys(a, b, n):
    return np.minimum(a, b) * n + np.maximum(a, b)


def _match_stubs(stubs, n, rng, max_redraws):
    """Uniform stub matching; offending pairs are re-drawn among themselves.

    Returns endpoint arrays or ``None`` when the leftover stubs cannot be
    placed after ``max_redraws`` rounds.
    """
    stubs = rng.permutation(stubs)
    a, b = stubs[0::2], stubs[1::2]
    key = _pair_keys(a, b, n)
    # keep the first occurrence of each distinct non-loop pair
    ok = a != b
    _, first = np.unique(key, return_index=True)
    keep = np.zeros(a.size, dtype=bool)
    keep[first] = True
    ok &= keep
    accepted = set(key[ok].tolist())
    ua, ub = [a[ok]], [b[ok]]
    pool = np.concatenate((a[~ok], b[~ok]))
    rounds = 0
    while pool.size:
        if rounds >= max_redraws:
            return None
        rounds += 1
        pool = rng.permutation(pool)
        pa, pb = pool[0::2], pool[1::2]
        leftover = []
        for x, y in zip(pa.tolist(), pb.tolist()):
            k = min(x, y) * n + max(x, y)
            if x == y or k in accepted:
                leftover.extend((x, y))
            else:
                accepted.add(k)
                ua.append(np.array([x]))
                ub.append(np.array([y]))
        pool = np.array(leftover, dtype=np.int64)
    return np.concatenate(ua), np.concatenate(ub)


def gen_config_model(model, n, rng, max_restarts=MAX_RESTARTS, max_redraws=MAX_REDRAWS):
    """Configuration-model graph with degrees drawn from ``model``.

    Odd degree sums trigger a fresh degree sequence. Self-loops and multi-edges
    are never produced: offending stub pairs are re-drawn, and after
    ``max_redraws`` unsuccessful rounds the whole construction restarts.
    """
    if n < 2:
        raise ValueError("configuration model needs N >= 2")
    for _ in range(max_restarts):
        degrees = model.sample(rng, n)
        if degrees.sum() % 2:
            continue
        stubs = np.repeat(np.arange(n, dtype=np.int64), degrees)
        matched = _match_stubs(stubs, n, rng, max_redraws)
        if matched is not None:
            return Graph(n, matched[0], matched[1], validate=False)
    raise GenerationFailedError(
        f"no simple graph after {max_restarts} restarts for {model!r}, N={n}"
    )


def gen_random_regular(n, k, rng, max_restarts=MAX_RESTARTS):
    if (n * k) % 2 or not 0 < k < n:
        raise GenerationFailedError(f"no {k}-regular simple graph on {n} vertices")
    return gen_config_model(DegreeModel.delta(k), n, rng, max_restarts)


# -- Erdos-Renyi ---------------------------------------------------------------


def gen_er(n, z, rng):
    """Gilbert graph: each pair joined independently with probability z/N.

    The edge count is drawn from its binomial law and that many distinct pairs
    are then sampled uniformly.
    """
    if not 0 < z < n:
        raise ValueError("need 0 < z < N")
    pairs = n * (n - 1) // 2
    m = int(rng.binomial(pairs, z / n))
    chosen = np.empty(0, dtype=np.int64)
    while chosen.size < m:
        need = m - chosen.size
        a = rng.integers(0, n, size=need + need // 8 + 8)
        b = rng.integers(0, n, size=a.size)
        good = a != b
        key = _pair_keys(a[good], b[good], n)
        merged = np.concatenate((chosen, key))
        _, first = np.unique(merged, return_index=True)
        chosen = merged[np.sort(first)][:m]
    us, vs = np.divmod(chosen, n)
    return Graph(n, us, vs, validate=False)


# -- small world -----------------------------------------------------------------


def gen_ws(n, beta, rng):
    """Ring of N vertices plus Binomial(N, beta) random shortcuts.

    Shortcut endpoints are uniform and independent; a shortcut that would be a
    self-loop or duplicate is re-drawn.
    """
    if n < 3:
        raise ValueError("ring needs N >= 3")
    if not 0.0 <= beta <= 1.0:
        raise ValueError("beta must lie in [0, 1]")
    ring_u = np.arange(n, dtype=np.int64)
    ring_v = (ring_u + 1) % n
    existing = set(_pair_keys(ring_u, ring_v, n).tolist())
    n_short = int(rng.binomial(n, beta))
    su = np.empty(n_short, dtype=np.int64)
    sv = np.empty(n_short, dtype=np.int64)
    filled = 0
    while filled < n_short:
        need = n_short - filled
        a = rng.integers(0, n, size=need)
        b = rng.integers(0, n, size=need)
        for x, y in zip(a.tolist(), b.tolist()):
            if x == y:
                continue
            k = min(x, y) * n + max(x, y)
            if k in existing:
                continue
            existing.add(k)
            su[filled], sv[filled] = x, y
            filled += 1
    return Graph(n, np.concatenate((ring_u, su)), np.concatenate((ring_v, sv)), validate=False)


def ws_shortcut_count(g):
    """Edges beyond the base ring of a :func:`gen_ws` graph."""
    return g.edge_count - g.N


# -- honeycomb -----------------------------------------------------------------


def gen_honeycomb(rows, cols):
    """Periodic honeycomb lattice with ``2*rows*cols`` vertices of degree 3.

    Cell ``(i, j)`` holds sublattice sites A (index ``2c``) and B (``2c+1``);
    A links to B of its own cell, of the cell above and of the cell to the left.
    """
    if rows < 2 or cols < 2:
        raise ValueError("honeycomb needs rows, cols >= 2")
    i, j = np.meshgrid(np.arange(rows), np.arange(cols), indexing="ij")
    i, j = i.ravel(), j.ravel()

    def cell(r, c):
        return (r % rows) * cols + (c % cols)

    a = 2 * cell(i, j)
    us = np.concatenate((a, a, a))
    vs = np.concatenate(
        (2 * cell(i, j) + 1, 2 * cell(i - 1, j) + 1, 2 * cell(i, j - 1) + 1)
    )
    return Graph(2 * rows * cols, us, vs)


# -- edge lists ------------------------------------------------------------------


def _parse_edge_lines(path):
    arcs = []
    n_hint = None
    with open(path) as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                parts = line[1:].split()
                if len(parts) == 2 and parts[0] == "N" and parts[1].isdigit():
                    n_hint = int(parts[1])
                continue
            tok = line.split()
            if len(tok) == 3 and tok[2] != "directed":
                raise ParseError(line_no, f"unknown edge attribute {tok[2]!r}")
            if len(tok) not in (2, 3):
                raise ParseError(line_no, "expected two vertex labels")
            arcs.append((tok[0], tok[1]))
    return arcs, n_hint


def _label_index(arcs, n_hint):
    labels = {x for arc in arcs for x in arc}
    try:
        ints = sorted(int(x) for x in labels)
        numeric = all(str(int(x)) == x for x in labels)
    except ValueError:
        numeric = False
    if numeric:
        if n_hint is not None and ints and 0 <= ints[0] and ints[-1] < n_hint:
            return {str(k): k for k in range(n_hint)}
        return {str(k): idx for idx, k in enumerate(ints)}
    index = {}
    for arc in arcs:
        for x in arc:
            index.setdefault(x, len(index))
    return index


def load_edge_list(path, bidirectional_only=False, degree_cutoff=None, iterative=False):
    """Read an undirected simple graph from an edge-list file.

    Lines hold two labels and an optional ``directed`` token; ``#`` starts a
    comment. Integer labels keep their numeric order (``# N <count>`` pads
    isolated vertices); other labels are numbered by first appearance.

    Parameters
    ----------
    bidirectional_only : bool
        Treat each line as an arc and keep ``{u, v}`` only if both ``u v`` and
        ``v u`` appear.
    degree_cutoff : int, optional
        Drop every vertex whose degree is ``>= degree_cutoff``. One pass on the
        original degrees unless ``iterative`` is set.

    Returns
    -------
    graph : Graph
    labels : list of str
        Original label of each vertex of ``graph``.
    """
    arcs, n_hint = _parse_edge_lines(path)
    index = _label_index(arcs, n_hint)
    if not index:
        raise EmptyGraphError(f"{path} contains no vertices")
    n = len(index)
    a = np.array([index[x] for x, _ in arcs], dtype=np.int64)
    b = np.array([index[y] for _, y in arcs], dtype=np.int64)
    if bidirectional_only:
        directed = set(zip(a.tolist(), b.tolist()))
        mutual = [(x, y) for x, y in directed if x < y and (y, x) in directed]
        mutual.sort()
        a = np.array([x for x, _ in mutual], dtype=np.int64)
        b = np.array([y for _, y in mutual], dtype=np.int64)
    else:
        ok = a != b
        a, b = a[ok], b[ok]
        key = _pair_keys(a, b, n)
        _, first = np.unique(key, return_index=True)
        first.sort()
        a, b = a[first], b[first]

    alive = np.ones(n, dtype=bool)
    if degree_cutoff is not None:
        while True:
            emask = alive[a] & alive[b]
            deg = np.bincount(a[emask], minlength=n) + np.bincount(b[emask], minlength=n)
            drop = alive & (deg >= degree_cutoff)
            if not drop.any():
                break
            alive &= ~drop
            if not iterative:
                break
    emask = alive[a] & alive[b]
    new_id = np.cumsum(alive) - 1
    if not alive.any():
        raise EmptyGraphError("degree cutoff removed every vertex")
    inv = {v: k for k, v in index.items()}
    labels = [inv[i] for i in np.flatnonzero(alive).tolist()]
    g = Graph(int(alive.sum()), new_id[a[emask]], new_id[b[emask]], validate=False)
    return g, labels


# -- dispatch ----------------------------------------------------------------------

GENERATOR_KINDS = ("config", "er", "random_regular", "ws", "honeycomb", "edge_list")


@dataclass
class GeneratorSpec:
    """Which ensemble to draw from and with what parameters.

    ``params`` keys by kind: ``config`` takes ``model`` (a DegreeModel);
    ``er`` takes ``z``; ``random_regular`` takes ``k``; ``ws`` takes ``beta``;
    ``honeycomb`` takes ``rows`` and ``cols`` (N is then derived); ``edge_list``
    takes ``path`` plus optional ``bidirectional_only`` and ``degree_cutoff``.
    """

    kind: str
    N: int = 0
    params: dict = field(default_factory=dict)
    seed: int = 0

    def violations(self):
        out = []
        p = self.params
        if self.kind not in GENERATOR_KINDS:
            return [f"generator.kind: unknown kind {self.kind!r}"]
        if self.kind not in ("honeycomb", "edge_list") and self.N < 1:
            out.append("generator.N: must be >= 1")
        if self.kind == "er" and not 0 < p.get("z", -1) < max(self.N, 1):
            out.append("generator.z: need 0 < z < N")
        if self.kind == "ws" and not 0.0 <= p.get("beta", -1) <= 1.0:
            out.append("generator.beta: must lie in [0, 1]")
        if self.kind == "random_regular" and p.get("k", 0) < 1:
            out.append("generator.k: must be >= 1")
        if self.kind == "honeycomb" and min(p.get("rows", 0), p.get("cols", 0)) < 2:
            out.append("generator.rows/cols: must be >= 2")
        if self.kind == "config" and not isinstance(p.get("model"), DegreeModel):
            out.append("generator.model: a degree model is required")
        if self.kind == "edge_list" and not p.get("path"):
            out.append("generator.path: required for edge lists")
        return out

    def degree_model(self):
        """Analytic degree model of the ensemble, if it has one."""
        if self.kind == "er":
            return DegreeModel.poisson(self.params["z"])
        if self.kind == "random_regular":
            return DegreeModel.delta(self.params["k"])
        if self.kind == "config":
            return self.params["model"]
        return None


def generate(spec, rng):
    p = spec.params
    if spec.kind == "config":
        return gen_config_model(p["model"], spec.N, rng)
    if spec.kind == "er":
        return gen_er(spec.N, p["z"], rng)
    if spec.kind == "random_regular":
        return gen_random_regular(spec.N, p["k"], rng)
    if spec.kind == "ws":
        return gen_ws(spec.N, p["beta"], rng)
    if spec.kind == "honeycomb":
        return gen_honeycomb(p["rows"], p["cols"])
    if spec.kind == "edge_list":
        g, _ = load_edge_list(
            p["path"], p.get("bidirectional_only", False), p.get("degree_cutoff")
        )
        return g
    raise ValueError(f"unknown generator kind {spec.kind!r}")
