"""
Trainable parameter tensors and Glorot initialization.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from idmix.errors import DimensionError
from idmix.numcore.matrix import Matrix
from idmix.numcore.rng import Rng


@dataclass(eq=False)
class ParamTensor:
    """
    A weight matrix paired with its gradient buffer.

    ``version`` is bumped on every optimizer update so that forward caches
    taken before the update can be detected as stale.
    """

    name: str
    value: Matrix
    grad: Matrix = field(default=None)
    version: int = 0

    def __post_init__(self):
        self.value = np.ascontiguousarray(self.value, dtype=np.float64)
        if self.grad is None:
            self.grad = np.zeros_like(self.value)
        if self.grad.shape != self.value.shape:
            raise DimensionError(
                f"{self.name}: grad shape {self.grad.shape} != value shape {self.value.shape}"
            )

    @property
    def shape(self) -> tuple:
        return self.value.shape

    def zero_grad(self) -> None:
        self.grad[...] = 0.0

    def copy(self) -> "ParamTensor":
        return ParamTensor(self.name, self.value.copy(), self.grad.copy(), self.version)


def glorot_init(fan_in: int, fan_out: int, rng: Rng) -> Matrix:
    """
    Glorot (Xavier) uniform initialization.

    Args:
        fan_in: Input width (rows)
        fan_out: Output width (columns)
        rng: Random stream

    Returns:
        fan_in x fan_out matrix with entries uniform on [-a, a],
        a = sqrt(6 / (fan_in + fan_out))

    Raises:
        DimensionError: If either dimension is below 1
    """
    if fan_in < 1 or fan_out < 1:
        raise DimensionError(
            f"glorot_init: dimensions must be >= 1, got ({fan_in}, {fan_out})"
        )
    bound = math.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-bound, bound, size=(fan_in, fan_out))
