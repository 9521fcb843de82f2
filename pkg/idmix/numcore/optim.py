"""
Adam optimizer with L2-coupled weight decay.
"""

from dataclasses import dataclass, field
from typing import Dict, Sequence

import numpy as np

from idmix.errors import DimensionError, NumericError
from idmix.numcore.matrix import Matrix
from idmix.numcore.params import ParamTensor


@dataclass
class AdamState:
    """
    Optimizer state: per-parameter moments, step counter and hyperparameters.

    Moments are keyed by parameter name and created lazily on the first step.
    """

    lr: float = 1e-3
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    weight_decay: float = 0.0
    t: int = 0
    m: Dict[str, Matrix] = field(default_factory=dict)
    v: Dict[str, Matrix] = field(default_factory=dict)


def adam_step(params: Sequence[ParamTensor], state: AdamState) -> AdamState:
    """
    Apply one Adam update in place.

    The weight decay term ``weight_decay * value`` is added to the gradient
    before the moment updates. The step counter is incremented before use.

    Args:
        params: Parameters with populated gradients
        state: Optimizer state, updated in place

    Returns:
        The same ``state`` object

    Raises:
        NumericError: If a gradient holds non-finite entries
    """
    for p in params:
        if not np.all(np.isfinite(p.grad)):
            raise NumericError(f"adam_step: gradient of '{p.name}' is not finite")

    state.t += 1
    bc1 = 1.0 - state.beta1**state.t
    bc2 = 1.0 - state.beta2**state.t

    for p in params:
        g = p.grad
        if state.weight_decay:
            g = g + state.weight_decay * p.value

        if p.name not in state.m:
            state.m[p.name] = np.zeros_like(p.value)
            state.v[p.name] = np.zeros_like(p.value)
        m, v = state.m[p.name], state.v[p.name]
        if m.shape != p.value.shape:
            raise DimensionError(
                f"adam_step: moment shape {m.shape} does not match '{p.name}' {p.value.shape}"
            )

        m *= state.beta1
        m += (1.0 - state.beta1) * g
        v *= state.beta2
        v += (1.0 - state.beta2) * (g * g)

        denom = np.sqrt(v / bc2) + state.eps
        p.value -= (state.lr / bc1) * m / denom
        p.version += 1

    return state
