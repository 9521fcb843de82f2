"""
Mixing-ratio sampling and identity label construction.
"""

from typing import List, Optional, Tuple, Union

import numpy as np

from idmix.config.models import MixupConfig
from idmix.errors import DimensionError
from idmix.mixup.base import MixAssignment
from idmix.numcore.matrix import Matrix
from idmix.numcore.rng import Rng

LabelRow = List[Tuple[int, float]]


def sample_lambda(
    cfg: MixupConfig, rng: Rng, size: Optional[int] = None
) -> Union[float, np.ndarray]:
    """
    Draw the batch mixing ratio.

    One Beta(alpha, beta) draw, or ``cfg.fixed_lambda`` when set; folded to
    ``max(lam, 1 - lam)`` when ``cfg.fold_lambda`` is on. ``size`` draws an
    array instead of a scalar.
    """
    if cfg.fixed_lambda is not None:
        lam = np.full(size, cfg.fixed_lambda) if size is not None else float(cfg.fixed_lambda)
    else:
        lam = rng.beta(cfg.beta_alpha, cfg.beta_beta, size)
    if cfg.fold_lambda:
        lam = np.maximum(lam, 1.0 - lam)
    return float(lam) if size is None else np.asarray(lam, dtype=np.float64)


def implied_label_rows(a: MixAssignment, n: int) -> List[LabelRow]:
    """
    Sparse rows of the mixed label matrix.

    Row ``i`` is ``[(i, w_i), (partner[i], 1 - w_i)]``, merged into
    ``[(i, 1.0)]`` when the partner is the row itself.

    Raises:
        DimensionError: If ``n`` differs from the assignment size
    """
    if n != a.n:
        raise DimensionError(f"implied_label_rows: assignment has {a.n} rows, asked for {n}")
    weights = a.row_weights()
    rows: List[LabelRow] = []
    for i, (j, w) in enumerate(zip(a.partner.tolist(), weights.tolist())):
        if j == i:
            rows.append([(i, 1.0)])
        else:
            rows.append([(i, w), (j, 1.0 - w)])
    return rows


def label_matrix(a: MixAssignment) -> Matrix:
    """Dense N x N mixed label matrix; every row sums to 1."""
    n = a.n
    weights = a.row_weights()
    p = np.zeros((n, n), dtype=np.float64)
    idx = np.arange(n)
    np.add.at(p, (idx, idx), weights)
    np.add.at(p, (idx, a.partner), 1.0 - weights)
    return p
