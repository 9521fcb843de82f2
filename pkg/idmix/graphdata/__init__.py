"""Graph data model, propagation operator, batching and synthetic graphs."""

from idmix.graphdata.graph import Graph, canonical_edges
from idmix.graphdata.propagation import PropagationOperator, normalized_adjacency, spmm
from idmix.graphdata.batching import BatchedGraph, disjoint_union, mean_pool
from idmix.graphdata.synthetic import FEATURE_MODES, random_split, sbm_generate

__all__ = [
    "Graph",
    "canonical_edges",
    "PropagationOperator",
    "normalized_adjacency",
    "spmm",
    "BatchedGraph",
    "disjoint_union",
    "mean_pool",
    "FEATURE_MODES",
    "random_split",
    "sbm_generate",
]
