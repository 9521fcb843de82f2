"""Dense numerical foundation: matrices, randomness, parameters, Adam, gradient oracle."""

from idmix.numcore.matrix import (
    Matrix,
    as_matrix,
    ensure_finite,
    l2_normalize_rows,
    matmul,
    softmax_rows,
    stable_log_softmax_rows,
)
from idmix.numcore.rng import Rng
from idmix.numcore.params import ParamTensor, glorot_init
from idmix.numcore.optim import AdamState, adam_step
from idmix.numcore.gradcheck import finite_diff_check

__all__ = [
    "Matrix",
    "as_matrix",
    "ensure_finite",
    "l2_normalize_rows",
    "matmul",
    "softmax_rows",
    "stable_log_softmax_rows",
    "Rng",
    "ParamTensor",
    "glorot_init",
    "AdamState",
    "adam_step",
    "finite_diff_check",
]
