import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from conftest import simple_graphs
from entperc.errors import (
    DuplicateEdgeError,
    EmptyPoolError,
    SelfLoopError,
    VertexOutOfRangeError,
)
from entperc.graph_core import (
    NEWBORN,
    ORIGINAL,
    ComponentStats,
    Graph,
    average_path_length,
    avg_finite_size,
    bfs_ball,
    build_graph,
    components,
    path_length_histogram,
    write_edge_list,
)
from entperc.generators import gen_er, load_edge_list
from entperc.seeding import derive_rng


def ring(n):
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def stats(*sizes):
    return ComponentStats(np.array(sorted(sizes, reverse=True)), sum(sizes))


# -- build_graph ---------------------------------------------------------------


def test_path_graph_degrees():
    g = build_graph(3, [(0, 1), (1, 2)])
    assert g.degrees.tolist() == [1, 2, 1]
    assert g.count_class(ORIGINAL) == 2


def test_self_loop_rejected():
    with pytest.raises(SelfLoopError):
        build_graph(2, [(0, 0)])


def test_duplicate_rejected():
    with pytest.raises(DuplicateEdgeError):
        build_graph(4, [(0, 1), (0, 1)])
    with pytest.raises(DuplicateEdgeError):
        build_graph(4, [(0, 1), (1, 0)])


def test_vertex_range():
    with pytest.raises(VertexOutOfRangeError):
        build_graph(2, [(0, 2)])


def test_graph_arrays_are_read_only():
    g = build_graph(3, [(0, 1)])
    with pytest.raises(ValueError):
        g.us[0] = 2


def test_edge_class_tags():
    g = Graph(3, [0, 1], [1, 2], [ORIGINAL, NEWBORN])
    assert g.count_class(NEWBORN) == 1
    assert g.edge_class.tolist() == [0, 1]


# -- components ----------------------------------------------------------------


def test_components_examples():
    assert components(build_graph(3, [(0, 1), (1, 2)])).sizes.tolist() == [3]
    assert components(build_graph(4, [(0, 1), (2, 3)])).sizes.tolist() == [2, 2]
    s = components(build_graph(5, []))
    assert s.sizes.tolist() == [1] * 5
    assert s.giant_size == 1


def test_components_edge_mask():
    g = build_graph(3, [(0, 1), (1, 2)])
    s = components(g, np.array([True, False]))
    assert s.sizes.tolist() == [2, 1]


# -- avg_finite_size -----------------------------------------------------------


def test_avg_finite_size_examples():
    assert avg_finite_size(stats(2, 2), exclude_giant=False) == 2
    assert avg_finite_size(stats(3, 1), exclude_giant=True) == 1
    assert avg_finite_size(stats(4, 2, 2), exclude_giant=False) == 3


def test_avg_finite_size_empty_pool():
    with pytest.raises(EmptyPoolError):
        avg_finite_size(stats(5), exclude_giant=True)


def test_avg_finite_size_default_cutoff():
    # 1 vertex of 1000 is below the 1% cutoff: nothing is excluded
    s = stats(1, *([1] * 999))
    assert avg_finite_size(s) == 1
    s = stats(500, *([1] * 500))
    assert avg_finite_size(s) == 1


# -- bfs_ball ------------------------------------------------------------------


def test_bfs_ball_examples():
    g = build_graph(3, [(0, 1), (1, 2)])
    assert bfs_ball(g, 0, 0) == 1
    assert bfs_ball(g, 1, 1) == 3
    r = ring(10)
    for v in range(10):
        assert bfs_ball(r, v, 3) == 7


def _explicit_bfs(adj, s, l):
    seen, frontier = {s}, [s]
    for _ in range(l):
        nxt = []
        for v in frontier:
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return len(seen)


@given(simple_graphs(), st.integers(0, 6), st.data())
def test_bfs_ball_against_explicit_bfs(g, l, data):
    v = data.draw(st.integers(0, g.N - 1))
    assert bfs_ball(g, v, l) == _explicit_bfs(g.adjacency(), v, l)


# -- path length histogram -----------------------------------------------------


def test_histogram_examples():
    tri = build_graph(3, [(0, 1), (1, 2), (0, 2)])
    assert path_length_histogram(tri).tolist() == [0, 6]
    path = build_graph(3, [(0, 1), (1, 2)])
    assert path_length_histogram(path).tolist() == [0, 4, 2]


def test_histogram_peak_er():
    g = gen_er(1000, 2.0, derive_rng(3))
    hist = path_length_histogram(g)
    target = np.log(1000) / np.log(2.0)
    assert abs(int(np.argmax(hist)) - target) <= 2
    assert abs(average_path_length(hist) - target) <= 2


# -- invariants ----------------------------------------------------------------


@given(simple_graphs())
def test_graph_invariants(g):
    adj = g.adjacency()
    for u, nb in enumerate(adj):
        assert u not in nb
        assert len(set(nb)) == len(nb)
        for v in nb:
            assert u in adj[v]
    assert g.degrees.sum() == 2 * g.edge_count
    assert components(g).sizes.sum() == g.N


@given(simple_graphs(), st.data())
def test_ball_monotone_and_saturates(g, data):
    v = data.draw(st.integers(0, g.N - 1))
    balls = [bfs_ball(g, v, l) for l in range(g.N + 1)]
    assert all(a <= b for a, b in zip(balls, balls[1:]))
    # the component of v, by brute force
    comp = _explicit_bfs(g.adjacency(), v, g.N)
    assert balls[-1] == comp


@given(simple_graphs())
def test_full_histogram_counts_even(g):
    hist = path_length_histogram(g, sources=np.arange(g.N))
    assert np.all(hist % 2 == 0)
    s = components(g).sizes
    assert hist.sum() == int(np.sum(s * (s - 1)))


@given(g=simple_graphs())
def test_edge_list_roundtrip(tmp_path_factory, g):
    assume(g.edge_count > 0)  # an edgeless file is an EmptyGraphError
    path = tmp_path_factory.mktemp("el") / "g.edges"
    write_edge_list(g, path)
    h, _ = load_edge_list(path)
    assert h == g
