"""
Stochastic block model generator and random node splits.
"""

from typing import Dict, Sequence

import numpy as np
from loguru import logger

from idmix.errors import SchemaError
from idmix.graphdata.graph import Graph
from idmix.numcore.rng import Rng

FEATURE_MODES = ("onehot_block_noisy", "random")
_FEATURE_NOISE = 0.1
_MIN_FEATURE_WIDTH = 8


def sbm_generate(
    block_sizes: Sequence[int],
    p_in: float,
    p_out: float,
    feature_mode: str,
    rng: Rng,
) -> Graph:
    """
    Sample an undirected stochastic block model with planted communities.

    Each unordered node pair gets one Bernoulli draw, with ``p_in`` inside a
    block and ``p_out`` across blocks. Node labels are the block ids.

    Args:
        block_sizes: Nodes per block, all >= 1
        p_in: Intra-block edge probability in [0, 1]
        p_out: Inter-block edge probability in [0, 1]
        feature_mode: ``onehot_block_noisy`` (one-hot block id plus N(0, 0.1^2)
            noise, width max(8, blocks)) or ``random`` (standard normal)
        rng: Random stream; edges and features use separate child streams

    Returns:
        Graph with node_labels

    Raises:
        SchemaError: On empty blocks, bad probabilities or unknown mode
    """
    sizes = [int(b) for b in block_sizes]
    if not sizes or min(sizes) < 1:
        raise SchemaError(f"sbm_generate: every block needs at least one node, got {sizes}")
    for name, p in (("p_in", p_in), ("p_out", p_out)):
        if not 0.0 <= p <= 1.0:
            raise SchemaError(f"sbm_generate: {name} must be in [0, 1], got {p}")
    if feature_mode not in FEATURE_MODES:
        raise SchemaError(
            f"sbm_generate: unknown feature_mode '{feature_mode}', expected one of {FEATURE_MODES}"
        )
    if p_in <= p_out:
        logger.warning(f"sbm_generate: p_in={p_in} <= p_out={p_out}, no planted structure")

    k = len(sizes)
    n = sum(sizes)
    labels = np.repeat(np.arange(k, dtype=np.int64), sizes)

    rows, cols = np.triu_indices(n, k=1)
    probs = np.where(labels[rows] == labels[cols], p_in, p_out)
    keep = rng.split("edges").random(rows.size) < probs
    edges = np.stack([rows[keep], cols[keep]], axis=1).astype(np.int64)

    feature_rng = rng.split("features")
    if feature_mode == "onehot_block_noisy":
        width = max(_MIN_FEATURE_WIDTH, k)
        features = np.zeros((n, width), dtype=np.float64)
        features[np.arange(n), labels] = 1.0
        features += feature_rng.normal(0.0, _FEATURE_NOISE, size=(n, width))
    else:
        features = feature_rng.normal(0.0, 1.0, size=(n, max(_MIN_FEATURE_WIDTH, k)))

    logger.debug(f"sbm_generate: n={n}, blocks={k}, edges={edges.shape[0]}")
    # triu_indices yields pairs already sorted with u < v.
    return Graph(features, edges, labels)


def random_split(
    n: int, rng: Rng, train_fraction: float = 0.1, test_fraction: float = 0.8
) -> Dict[str, np.ndarray]:
    """
    Random train/val/test partition of ``range(n)``.

    Train and test take ``round(fraction * n)`` nodes (at least one each);
    validation gets the rest. Index lists are sorted.
    """
    if n < 2:
        raise SchemaError(f"random_split: need at least 2 nodes, got {n}")
    perm = rng.permutation(n)
    n_train = max(1, int(round(train_fraction * n)))
    n_test = max(1, min(n - n_train, int(round(test_fraction * n))))
    return {
        "train": np.sort(perm[:n_train]),
        "val": np.sort(perm[n_train : n - n_test]),
        "test": np.sort(perm[n - n_test :]),
    }
