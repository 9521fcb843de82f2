"""Similarity, mixed N-pair loss and representation diagnostics."""

from idmix.objective.similarity import (
    SimilarityCache,
    similarity_backward,
    similarity_forward,
    similarity_matrix,
)
from idmix.objective.loss import LossResult, cross_entropy, decomposed_loss, mixed_npair_loss
from idmix.objective.metrics import alignment, uniformity

__all__ = [
    "SimilarityCache",
    "similarity_backward",
    "similarity_forward",
    "similarity_matrix",
    "LossResult",
    "cross_entropy",
    "decomposed_loss",
    "mixed_npair_loss",
    "alignment",
    "uniformity",
]
