"""Exact verification tools for deletion properties of line hypergraphs of cubic graphs."""

from .construct import build_biggs_smith
from .graph import Graph, parse_graph6, write_graph6
from .hyper import verify_lovasz_property, weak_conjecture_witness
from .mis import alpha_avoiding, max_independent_set

__all__ = [
    "Graph",
    "alpha_avoiding",
    "build_biggs_smith",
    "max_independent_set",
    "parse_graph6",
    "verify_lovasz_property",
    "weak_conjecture_witness",
    "write_graph6",
]
