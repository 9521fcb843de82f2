"""
Central finite-difference gradient oracle.
"""

import math
from typing import Callable, Sequence

from loguru import logger

from idmix.errors import NumericError, SchemaError
from idmix.numcore.params import ParamTensor

LossFn = Callable[[Sequence[ParamTensor]], float]


def finite_diff_check(
    loss_fn: LossFn, params: Sequence[ParamTensor], eps: float = 1e-5
) -> float:
    """
    Compare analytic gradients against central differences.

    ``loss_fn`` must be deterministic, return the scalar loss and leave the
    analytic gradient of that loss in every ``param.grad``. It is called once
    at the current point, then twice per coordinate.

    Args:
        loss_fn: Loss evaluation that also fills gradients
        params: Parameters to perturb
        eps: Perturbation size, within [1e-7, 1e-3]

    Returns:
        Max over coordinates of |analytic - numeric| / max(1, |numeric|)

    Raises:
        SchemaError: If ``eps`` is outside its allowed range
        NumericError: If the loss is not finite at any evaluated point
    """
    if not 1e-7 <= eps <= 1e-3:
        raise SchemaError(f"finite_diff_check: eps must be in [1e-7, 1e-3], got {eps}")

    _finite(loss_fn(params), "base point")
    analytic = [p.grad.copy() for p in params]

    worst = 0.0
    worst_at = None
    for p, grad in zip(params, analytic):
        flat = p.value.reshape(-1)
        for idx in range(flat.size):
            original = flat[idx]
            flat[idx] = original + eps
            plus = _finite(loss_fn(params), f"{p.name}[{idx}] + eps")
            flat[idx] = original - eps
            minus = _finite(loss_fn(params), f"{p.name}[{idx}] - eps")
            flat[idx] = original

            numeric = (plus - minus) / (2.0 * eps)
            err = abs(grad.flat[idx] - numeric) / max(1.0, abs(numeric))
            if err > worst:
                worst, worst_at = err, (p.name, idx)

    for p, grad in zip(params, analytic):
        p.grad[...] = grad

    logger.debug(f"finite_diff_check: max relative error {worst:.3e} at {worst_at}")
    return worst


def _finite(value: float, where: str) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise NumericError(f"finite_diff_check: loss is not finite at {where}")
    return value
