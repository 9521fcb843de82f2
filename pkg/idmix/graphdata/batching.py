"""
Batching of small graphs by disjoint union, and mean pooling.
"""

from dataclasses import dataclass
from typing import Sequence

import numpy as np
import numpy.typing as npt

from idmix.errors import DimensionError, SchemaError
from idmix.graphdata.graph import Graph
from idmix.numcore.matrix import Matrix


@dataclass(frozen=True, eq=False)
class BatchedGraph:
    """
    One graph made of several source graphs with no edges between them.

    Attributes:
        graph: The union graph
        node_to_graph: Source graph index of every node, non-decreasing
        graph_count: Number of source graphs
    """

    graph: Graph
    node_to_graph: npt.NDArray[np.int64]
    graph_count: int

    @property
    def sizes(self) -> np.ndarray:
        return np.bincount(self.node_to_graph, minlength=self.graph_count)


def disjoint_union(graphs: Sequence[Graph]) -> BatchedGraph:
    """
    Stack graphs into one block-diagonal graph.

    Node indices are offset cumulatively. Node labels are kept only when every
    graph has them; graph labels are dropped from the union.

    Raises:
        SchemaError: If the sequence is empty or feature widths differ
    """
    if not graphs:
        raise SchemaError("disjoint_union: no graphs given")
    width = graphs[0].d
    for idx, g in enumerate(graphs):
        if g.d != width:
            raise SchemaError(
                f"disjoint_union: graph {idx} has feature width {g.d}, expected {width}"
            )

    sizes = np.array([g.n for g in graphs], dtype=np.int64)
    offsets = np.concatenate([[0], np.cumsum(sizes)[:-1]])
    features = np.vstack([g.features for g in graphs])
    edges = np.vstack([g.edges + off for g, off in zip(graphs, offsets)])
    labels = None
    if all(g.node_labels is not None for g in graphs):
        labels = np.concatenate([g.node_labels for g in graphs])

    node_to_graph = np.repeat(np.arange(len(graphs), dtype=np.int64), sizes)
    # Offsetting preserves per-graph ordering, so the stacked edges stay canonical.
    union = Graph(features, edges, labels)
    return BatchedGraph(union, node_to_graph, len(graphs))


def mean_pool(h: Matrix, batch: BatchedGraph) -> Matrix:
    """
    Average node rows per source graph.

    Args:
        h: Node embeddings of the union graph
        batch: The batch ``h`` was computed on

    Returns:
        graph_count x width matrix

    Raises:
        DimensionError: If ``h`` has the wrong number of rows
    """
    if h.shape[0] != batch.node_to_graph.size:
        raise DimensionError(
            f"mean_pool: {h.shape[0]} rows for a batch of {batch.node_to_graph.size} nodes"
        )
    sums = np.zeros((batch.graph_count, h.shape[1]), dtype=np.float64)
    np.add.at(sums, batch.node_to_graph, h)
    counts = np.maximum(batch.sizes, 1).astype(np.float64)
    return sums / counts[:, None]
