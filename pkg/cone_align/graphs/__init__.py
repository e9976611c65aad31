"""Graph representation, loading and the noisy-permutation protocol."""

from .sparse_graph import (
    SparseGraph,
    GroundTruthPermutation,
    permute_graph,
    drop_edges,
    pad_to_size,
)
from .loader import load_edge_list, save_edge_list
from .generators import synth_graph, parse_generator_descriptor

__all__ = [
    "SparseGraph",
    "GroundTruthPermutation",
    "permute_graph",
    "drop_edges",
    "pad_to_size",
    "load_edge_list",
    "save_edge_list",
    "synth_graph",
    "parse_generator_descriptor",
]
