import numpy as np
import pytest
from hypothesis import settings
from hypothesis import strategies as st

from entperc.graph_core import build_graph

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


@st.composite
def simple_graphs(draw, max_n=30):
    """Random simple graphs as (N, edge list) built from a drawn edge subset."""
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    if not pairs:
        return build_graph(n, [])
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges = [p for p, keep in zip(pairs, mask) if keep]
    return build_graph(n, edges)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# -- acceptance report ------------------------------------------------------------

ACCEPTANCE_LOG = []


def record(tag, passed, detail):
    """One pass/fail line per acceptance criterion, echoed at the end of the run."""
    line = f"[{'PASS' if passed else 'FAIL'}] {tag}: {detail}"
    ACCEPTANCE_LOG.append(line)
    print(line)
    return passed


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LOG:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LOG:
            terminalreporter.write_line(line)
