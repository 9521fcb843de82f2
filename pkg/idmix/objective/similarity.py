"""
Pairwise similarity between the mixed view and the contrast view.
"""

from dataclasses import dataclass
from typing import Optional, Tuple, Union

import numpy as np

from idmix.config.models import LossConfig, Similarity
from idmix.errors import DimensionError
from idmix.numcore.matrix import Matrix, l2_normalize_rows, matmul


@dataclass(eq=False)
class SimilarityCache:
    kind: Similarity
    a: Matrix
    b: Matrix
    norms_a: Optional[np.ndarray] = None
    norms_b: Optional[np.ndarray] = None


def _kind(cfg: Union[LossConfig, Similarity, str]) -> Similarity:
    if isinstance(cfg, LossConfig):
        return cfg.similarity
    return Similarity(cfg)


def similarity_forward(
    z_mixed: Matrix, z_other: Matrix, cfg: Union[LossConfig, Similarity, str]
) -> Tuple[Matrix, SimilarityCache]:
    """
    N x N similarities ``S[i, j] = sim(z_mixed[i], z_other[j])``, with cache.

    Temperature is not applied here.

    Raises:
        DimensionError: If the two matrices differ in shape
        NumericError: If a row has zero norm under cosine similarity
    """
    if z_mixed.shape != z_other.shape:
        raise DimensionError(
            f"similarity: views have shapes {z_mixed.shape} and {z_other.shape}"
        )
    kind = _kind(cfg)
    if kind == Similarity.COSINE:
        a, norms_a = l2_normalize_rows(z_mixed, "mixed view")
        b, norms_b = l2_normalize_rows(z_other, "contrast view")
        return matmul(a, b.T), SimilarityCache(kind, a, b, norms_a, norms_b)
    return matmul(z_mixed, z_other.T), SimilarityCache(kind, z_mixed, z_other)


def similarity_matrix(
    z_mixed: Matrix, z_other: Matrix, cfg: Union[LossConfig, Similarity, str]
) -> Matrix:
    """Similarity matrix without a backward cache."""
    return similarity_forward(z_mixed, z_other, cfg)[0]


def similarity_backward(grad_sim: Matrix, cache: SimilarityCache) -> Tuple[Matrix, Matrix]:
    """
    Gradients of the loss with respect to both inputs.

    Returns:
        Tuple of (dL/dz_mixed, dL/dz_other)
    """
    grad_a = matmul(grad_sim, cache.b)
    grad_b = matmul(grad_sim.T, cache.a)
    if cache.kind == Similarity.COSINE:
        grad_a = _normalize_backward(grad_a, cache.a, cache.norms_a)
        grad_b = _normalize_backward(grad_b, cache.b, cache.norms_b)
    return grad_a, grad_b


def _normalize_backward(grad_u: Matrix, u: Matrix, norms: np.ndarray) -> Matrix:
    # u = z / |z|  =>  dz = (du - u <u, du>) / |z|
    radial = np.sum(u * grad_u, axis=1, keepdims=True)
    return (grad_u - u * radial) / norms[:, None]
