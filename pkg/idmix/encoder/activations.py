"""Elementwise activations and their derivatives."""

from typing import Union

import numpy as np

from idmix.config.models import Activation
from idmix.numcore.matrix import Matrix

LEAKY_SLOPE = 0.01


def activate(q: Matrix, kind: Union[Activation, str]) -> Matrix:
    kind = Activation(kind)
    if kind == Activation.RELU:
        return np.maximum(q, 0.0)
    if kind == Activation.LEAKY_RELU:
        return np.where(q > 0.0, q, LEAKY_SLOPE * q)
    return q.copy()


def activate_grad(q: Matrix, upstream: Matrix, kind: Union[Activation, str]) -> Matrix:
    """Gradient through the activation, evaluated at pre-activation ``q``."""
    kind = Activation(kind)
    if kind == Activation.RELU:
        return np.where(q > 0.0, upstream, 0.0)
    if kind == Activation.LEAKY_RELU:
        return np.where(q > 0.0, upstream, LEAKY_SLOPE * upstream)
    return upstream
