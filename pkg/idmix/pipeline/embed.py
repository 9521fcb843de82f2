"""
Frozen embedding extraction.
"""

from typing import Sequence, Union

import numpy as np

from idmix.encoder.gcn import encode
from idmix.encoder.model import ModelParams
from idmix.errors import SchemaError
from idmix.graphdata.batching import disjoint_union, mean_pool
from idmix.graphdata.graph import Graph
from idmix.graphdata.propagation import normalized_adjacency
from idmix.numcore.matrix import Matrix

# Graphs per encoder pass when pooling a graph collection.
EMBED_CHUNK = 512


def embed(data: Union[Graph, Sequence[Graph]], params: ModelParams) -> Matrix:
    """
    Encoder output on the original, unaugmented input.

    No masking, dropping or mixup is applied; the projection head is not
    used. A single graph yields one row per node; a sequence of graphs yields
    one mean-pooled row per graph.

    Raises:
        DimensionError: If the feature width does not match the encoder
    """
    if isinstance(data, Graph):
        return encode(normalized_adjacency(data), data.features, params.encoder)[0]

    graphs = list(data)
    if not graphs:
        raise SchemaError("embed: no graphs given")
    pooled = []
    for start in range(0, len(graphs), EMBED_CHUNK):
        batch = disjoint_union(graphs[start : start + EMBED_CHUNK])
        h = encode(normalized_adjacency(batch.graph), batch.graph.features, params.encoder)[0]
        pooled.append(mean_pool(h, batch))
    return np.vstack(pooled)
