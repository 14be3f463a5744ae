"""Seed splitting: every random stream is ``SeedSequence(master, spawn_key=path)``.

``path`` is a tuple of non-negative integers naming the stream, e.g.
``(grid_index, replica)``. Streams with distinct paths are independent, and
the same ``(master, path)`` always reproduces the same numbers.
"""

import numpy as np

# Stream families used by the simulation engine.
GRAPH = 0
OCCUPY = 1
SOURCES = 2
BOOTSTRAP = 3


def derive_rng(master_seed, *path):
    ss = np.random.SeedSequence(int(master_seed), spawn_key=tuple(int(p) for p in path))
    return np.random.default_rng(ss)
