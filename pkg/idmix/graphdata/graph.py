"""
Undirected attributed graph.

Edges are stored once per undirected pair as an ``m x 2`` integer array with
``u < v``, sorted lexicographically and free of duplicates and self-loops.
"""

from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np
import numpy.typing as npt

from idmix.errors import SchemaError
from idmix.numcore.matrix import Matrix, as_matrix

EdgeArray = npt.NDArray[np.int64]


@dataclass(frozen=True, eq=False)
class Graph:
    """
    Node feature matrix plus undirected edge structure.

    Use ``Graph.from_edges`` for raw edge lists; the constructor expects
    already canonical edges and only validates them.

    Attributes:
        features: n x d float64 feature matrix
        edges: m x 2 canonical edge array
        node_labels: Optional per-node class ids
        graph_label: Optional class id of the whole graph
    """

    features: Matrix
    edges: EdgeArray = field(default_factory=lambda: np.zeros((0, 2), dtype=np.int64))
    node_labels: Optional[npt.NDArray[np.int64]] = None
    graph_label: Optional[int] = None

    def __post_init__(self):
        edges = np.asarray(self.edges, dtype=np.int64).reshape(-1, 2)
        object.__setattr__(self, "edges", edges)
        n = self.features.shape[0]
        if edges.size:
            if edges.min() < 0 or edges.max() >= n:
                raise SchemaError(f"edge endpoint out of range [0, {n})")
            if np.any(edges[:, 0] >= edges[:, 1]):
                raise SchemaError("edges must satisfy u < v")
            keys = edges[:, 0] * n + edges[:, 1]
            if np.any(np.diff(keys) <= 0):
                raise SchemaError("edges must be sorted and duplicate-free")
        if self.node_labels is not None:
            labels = np.asarray(self.node_labels, dtype=np.int64)
            if labels.shape != (n,):
                raise SchemaError(
                    f"node_labels has length {labels.size}, expected {n}"
                )
            object.__setattr__(self, "node_labels", labels)

    @classmethod
    def from_edges(
        cls,
        features,
        edges=(),
        node_labels=None,
        graph_label: Optional[int] = None,
    ) -> "Graph":
        """
        Build a graph from any list of node pairs.

        Pairs are oriented ``u < v``, deduplicated and sorted; self-loops are
        dropped.

        Raises:
            SchemaError: If an endpoint is outside ``[0, n)``
        """
        x = as_matrix(features, "features")
        return cls(x, canonical_edges(edges, x.shape[0]), node_labels, graph_label)

    @property
    def n(self) -> int:
        return self.features.shape[0]

    @property
    def d(self) -> int:
        return self.features.shape[1]

    @property
    def num_edges(self) -> int:
        return self.edges.shape[0]

    def with_features(self, features: Matrix) -> "Graph":
        return replace(self, features=features)

    def with_edges(self, edges: EdgeArray) -> "Graph":
        return replace(self, edges=edges)

    def edge_set(self) -> set:
        return {(int(u), int(v)) for u, v in self.edges}

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, d={self.d}, edges={self.num_edges})"


def canonical_edges(edges, n: int) -> EdgeArray:
    """Orient, deduplicate and sort an edge list; drop self-loops."""
    arr = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    if arr.size == 0:
        return np.zeros((0, 2), dtype=np.int64)
    if arr.min() < 0 or arr.max() >= n:
        bad = int(np.flatnonzero((arr < 0).any(axis=1) | (arr >= n).any(axis=1))[0])
        raise SchemaError(
            f"edge {bad} ({arr[bad, 0]}, {arr[bad, 1]}) references a node outside [0, {n})"
        )
    arr = np.sort(arr, axis=1)
    arr = arr[arr[:, 0] != arr[:, 1]]
    return np.unique(arr, axis=0)
