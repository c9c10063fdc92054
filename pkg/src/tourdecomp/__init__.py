"""Path decompositions of tournaments and oriented graphs."""

from .decomposition import (
    GENERAL,
    INVALID,
    PARTIAL,
    PERFECT,
    Classification,
    PathDecomposition,
    classify_decomposition,
)
from .digraph import Digraph, directed_cycle, parse_edge_list, format_edge_list, transitive_tournament
from .excess import ExcessProfile, excess, excess_profile, threshold_sets, total_excess

__all__ = [
    "Classification",
    "Digraph",
    "ExcessProfile",
    "GENERAL",
    "INVALID",
    "PARTIAL",
    "PERFECT",
    "PathDecomposition",
    "classify_decomposition",
    "directed_cycle",
    "excess",
    "excess_profile",
    "format_edge_list",
    "parse_edge_list",
    "threshold_sets",
    "total_excess",
    "transitive_tournament",
]

__version__ = "0.1.0"
