"""
Projection head Z = act(H W1) W2.
"""

from dataclasses import dataclass
from typing import Tuple

from idmix.config.models import Activation
from idmix.encoder.activations import activate, activate_grad
from idmix.errors import DimensionError, StateError
from idmix.numcore.matrix import Matrix, matmul
from idmix.numcore.params import ParamTensor, glorot_init
from idmix.numcore.rng import Rng


@dataclass(eq=False)
class ProjectionParams:
    """Two-layer MLP head; activation after the first layer only."""

    w1: ParamTensor
    w2: ParamTensor
    activation: Activation = Activation.RELU

    def __post_init__(self):
        self.activation = Activation(self.activation)
        if self.w1.shape[1] != self.w2.shape[0]:
            raise DimensionError(
                f"projection widths do not chain: W1 {self.w1.shape}, W2 {self.w2.shape}"
            )

    @classmethod
    def init(
        cls, in_dim: int, hidden_dim: int, out_dim: int, rng: Rng,
        activation: Activation = Activation.RELU,
    ) -> "ProjectionParams":
        return cls(
            ParamTensor("head.W1", glorot_init(in_dim, hidden_dim, rng.split("W1"))),
            ParamTensor("head.W2", glorot_init(hidden_dim, out_dim, rng.split("W2"))),
            Activation(activation),
        )


@dataclass(eq=False)
class ProjectionCache:
    params: ProjectionParams
    h: Matrix
    pre_activation: Matrix
    hidden: Matrix
    versions: Tuple[int, int]
    consumed: bool = False


def project(h: Matrix, params: ProjectionParams) -> Tuple[Matrix, ProjectionCache]:
    """
    Map encoder outputs into the contrastive space.

    Returns:
        Tuple of (Z, cache for ``project_backward``)

    Raises:
        DimensionError: If ``h`` does not match W1
    """
    if h.shape[1] != params.w1.shape[0]:
        raise DimensionError(f"project: input {h.shape} does not fit W1 {params.w1.shape}")
    u = matmul(h, params.w1.value)
    a = activate(u, params.activation)
    z = matmul(a, params.w2.value)
    cache = ProjectionCache(params, h, u, a, (params.w1.version, params.w2.version))
    return z, cache


def project_backward(upstream: Matrix, cache: ProjectionCache) -> Matrix:
    """
    Backpropagate ``dL/dZ`` through the head, accumulating W1/W2 gradients.

    Returns:
        Gradient with respect to the head input H
    """
    params = cache.params
    if cache.consumed:
        raise StateError("project_backward: cache already consumed")
    if (params.w1.version, params.w2.version) != cache.versions:
        raise StateError("project_backward: weights were updated after the forward pass")
    cache.consumed = True

    params.w2.grad += matmul(cache.hidden.T, upstream)
    du = activate_grad(cache.pre_activation, matmul(upstream, params.w2.value.T), params.activation)
    params.w1.grad += matmul(cache.h.T, du)
    return matmul(du, params.w1.value.T)
