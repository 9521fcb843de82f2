"""
Mixed identity N-pair loss.

For anchors ``i`` with mixed labels ``P'``:

    L = - sum_i sum_j P'[i, j] * log_softmax(S[i] / tau)[j]

Summed over anchors by default; ``mean`` divides by N.
"""

from dataclasses import dataclass
from typing import Union

import numpy as np

from idmix.config.models import LossConfig, Reduction
from idmix.errors import DimensionError
from idmix.mixup.base import MixAssignment
from idmix.mixup.labels import label_matrix
from idmix.numcore.matrix import Matrix, ensure_finite, softmax_rows, stable_log_softmax_rows


@dataclass(frozen=True, eq=False)
class LossResult:
    """Loss value and its gradient with respect to the similarity matrix."""

    value: float
    grad_sim: Matrix


def _scale(n: int, reduction: Union[Reduction, str]) -> float:
    return 1.0 / n if Reduction(reduction) == Reduction.MEAN else 1.0


def _check(sim: Matrix, a: MixAssignment) -> None:
    if sim.ndim != 2 or sim.shape[0] != sim.shape[1]:
        raise DimensionError(f"loss: similarity matrix must be square, got {sim.shape}")
    if a.n != sim.shape[0]:
        raise DimensionError(
            f"loss: assignment has {a.n} rows for a {sim.shape} similarity matrix"
        )


def mixed_npair_loss(
    sim: Matrix,
    a: MixAssignment,
    cfg: LossConfig,
    reduction: Union[Reduction, str] = Reduction.SUM,
) -> LossResult:
    """
    Temperature-scaled cross-entropy against the mixed identity labels.

    Args:
        sim: N x N similarities, mixed view rows against contrast view columns
        a: Mixup assignment of the same batch
        cfg: Temperature and similarity settings
        reduction: ``sum`` or ``mean`` over anchors

    Returns:
        LossResult with the scalar loss and dL/dsim

    Raises:
        DimensionError: If shapes and assignment disagree
    """
    _check(sim, a)
    n = sim.shape[0]
    logits = sim / cfg.tau
    log_p = stable_log_softmax_rows(logits)
    targets = label_matrix(a)
    scale = _scale(n, reduction)

    value = -float(np.sum(targets * log_p)) * scale
    # Target rows sum to one, so d/dlogits = softmax - targets.
    grad_logits = (softmax_rows(logits) - targets) * scale
    grad_sim = grad_logits / cfg.tau
    ensure_finite(grad_sim, "loss gradient")
    return LossResult(value, grad_sim)


def cross_entropy(
    logits: Matrix, targets: np.ndarray, reduction: Union[Reduction, str] = Reduction.SUM
) -> np.ndarray:
    """
    Per-row cross-entropy with integer targets, scaled for ``reduction``.

    Returns:
        Length-N vector of per-row contributions; their sum is the reduced loss
    """
    log_p = stable_log_softmax_rows(logits)
    rows = np.arange(logits.shape[0])
    return -log_p[rows, np.asarray(targets, dtype=np.int64)] * _scale(logits.shape[0], reduction)


def decomposed_loss(
    sim: Matrix,
    a: MixAssignment,
    cfg: LossConfig,
    reduction: Union[Reduction, str] = Reduction.SUM,
) -> float:
    """
    The same loss as two weighted cross-entropies.

    ``lam * CE(S / tau, identity) + (1 - lam) * CE(S / tau, partner)``, with
    per-row weights when the assignment carries them.
    """
    _check(sim, a)
    logits = sim / cfg.tau
    n = sim.shape[0]
    weights = a.row_weights()
    own = cross_entropy(logits, np.arange(n), reduction)
    other = cross_entropy(logits, a.partner, reduction)
    return float(np.sum(weights * own) + np.sum((1.0 - weights) * other))
