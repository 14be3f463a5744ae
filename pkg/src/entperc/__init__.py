"""Entanglement percolation on complex networks.

Generating-function analytics (giant components, thresholds, q-swap gains,
limited-path sizes) alongside seeded Monte Carlo on generated or ingested
graphs.
"""

from .degree_models import DegreeModel
from .graph_core import ComponentStats, Graph, build_graph, components
from .qswap import SwapReport, SwapStrategy, apply_qswaps

__version__ = "0.1.0"

__all__ = [
    "ComponentStats",
    "DegreeModel",
    "Graph",
    "SwapReport",
    "SwapStrategy",
    "apply_qswaps",
    "build_graph",
    "components",
]
