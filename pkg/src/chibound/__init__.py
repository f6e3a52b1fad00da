"""Certified (k, d)-colourings of double-star-free graphs via template peeling."""

from .bounds import bound_audit
from .degen import DegenColouring, chain, to_proper, verify_kd
from .graph import Graph, build_graph, read_graph
from .pipeline import colour_graph
from .profiles import DESK1, DESK2, PAPER1, ThresholdProfile

__all__ = [
    "DESK1",
    "DESK2",
    "DegenColouring",
    "Graph",
    "PAPER1",
    "ThresholdProfile",
    "bound_audit",
    "build_graph",
    "chain",
    "colour_graph",
    "read_graph",
    "to_proper",
    "verify_kd",
]

__version__ = "0.1.0"
