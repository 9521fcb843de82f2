"""
Alignment and uniformity of embeddings on the unit hypersphere.
"""

import math
from typing import Optional

import numpy as np
from scipy.spatial.distance import pdist
from scipy.special import logsumexp

from idmix.config.models import MetricConfig
from idmix.errors import DegenerateBatchError, DimensionError
from idmix.numcore.matrix import Matrix, l2_normalize_rows


def alignment(z_a: Matrix, z_b: Matrix, cfg: Optional[MetricConfig] = None) -> float:
    """
    Mean distance between positive pairs, raised to ``align_alpha``.

    Row ``i`` of ``z_a`` and ``z_b`` are the same node in two views.

    Raises:
        DimensionError: If the shapes differ
        NumericError: If a row has zero norm and normalization is on
    """
    cfg = cfg or MetricConfig()
    if z_a.shape != z_b.shape:
        raise DimensionError(f"alignment: shapes {z_a.shape} and {z_b.shape} differ")
    if cfg.normalize_first:
        z_a = l2_normalize_rows(z_a, "alignment view a")[0]
        z_b = l2_normalize_rows(z_b, "alignment view b")[0]
    dist = np.linalg.norm(z_a - z_b, axis=1)
    return float(np.mean(dist**cfg.align_alpha))


def uniformity(z: Matrix, cfg: Optional[MetricConfig] = None) -> float:
    """
    Log of the mean Gaussian potential over distinct unordered pairs.

    ``log mean_{i<j} exp(-t * |z_i - z_j|^2)``; lower means better spread.

    Raises:
        DegenerateBatchError: If fewer than 2 rows are given
        NumericError: If a row has zero norm and normalization is on
    """
    cfg = cfg or MetricConfig()
    if z.shape[0] < 2:
        raise DegenerateBatchError(f"uniformity: needs at least 2 rows, got {z.shape[0]}")
    if cfg.normalize_first:
        z = l2_normalize_rows(z, "uniformity")[0]
    sq = pdist(z, metric="sqeuclidean")
    return float(logsumexp(-cfg.uniform_t * sq) - math.log(sq.size))
