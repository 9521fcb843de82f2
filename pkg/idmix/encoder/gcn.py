"""
GCN encoder: H(l+1) = act(S H(l) W(l)), with H(0) = X.

Rows are nodes and weights multiply from the right. There are no bias terms.
"""

from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

from idmix.config.models import Activation
from idmix.encoder.activations import activate, activate_grad
from idmix.errors import DimensionError, StateError
from idmix.graphdata.propagation import PropagationOperator, spmm
from idmix.numcore.matrix import Matrix, ensure_finite, matmul
from idmix.numcore.params import ParamTensor, glorot_init
from idmix.numcore.rng import Rng


@dataclass(eq=False)
class EncoderParams:
    """
    Layer weights W0..W(L-1) of the shared encoder.

    Attributes:
        weights: One ParamTensor per layer; layer ``l`` maps width l to l+1
        activation: Nonlinearity applied after each layer
        activate_last: Whether the final layer is activated too
    """

    weights: List[ParamTensor]
    activation: Activation = Activation.RELU
    activate_last: bool = True

    def __post_init__(self):
        self.activation = Activation(self.activation)
        if not self.weights:
            raise DimensionError("encoder needs at least one layer")
        for prev, nxt in zip(self.weights, self.weights[1:]):
            if prev.shape[1] != nxt.shape[0]:
                raise DimensionError(
                    f"encoder widths do not chain: {prev.name} {prev.shape} -> {nxt.name} {nxt.shape}"
                )

    @classmethod
    def init(
        cls,
        widths: Sequence[int],
        rng: Rng,
        activation: Activation = Activation.RELU,
        activate_last: bool = True,
    ) -> "EncoderParams":
        """Glorot-initialize layers for ``widths = [in, hidden..., out]``."""
        weights = [
            ParamTensor(f"encoder.W{l}", glorot_init(fan_in, fan_out, rng.split(f"W{l}")))
            for l, (fan_in, fan_out) in enumerate(zip(widths, widths[1:]))
        ]
        return cls(weights, Activation(activation), activate_last)

    @property
    def layers(self) -> int:
        return len(self.weights)

    @property
    def widths(self) -> List[int]:
        return [self.weights[0].shape[0]] + [w.shape[1] for w in self.weights]

    def layer_activation(self, l: int) -> Activation:
        if l == self.layers - 1 and not self.activate_last:
            return Activation.IDENTITY
        return self.activation


@dataclass(eq=False)
class EncoderCache:
    """Forward state of one ``encode`` call, consumed by ``encode_backward``."""

    params: EncoderParams
    s: PropagationOperator
    inputs: List[Matrix] = field(default_factory=list)
    pre_activations: List[Matrix] = field(default_factory=list)
    versions: Tuple[int, ...] = ()
    consumed: bool = False


def encode(
    s: PropagationOperator, x: Matrix, params: EncoderParams
) -> Tuple[Matrix, EncoderCache]:
    """
    Run the encoder forward.

    Args:
        s: Propagation operator of the graph
        x: n x width0 node features
        params: Encoder weights

    Returns:
        Tuple of (H, cache for ``encode_backward``)

    Raises:
        DimensionError: If ``x`` does not fit ``s`` or the first layer
    """
    if x.shape[0] != s.n:
        raise DimensionError(f"encode: features {x.shape} for an operator of {s.n} nodes")
    if x.shape[1] != params.widths[0]:
        raise DimensionError(
            f"encode: feature width {x.shape[1]} != encoder input width {params.widths[0]}"
        )

    cache = EncoderCache(params, s, versions=tuple(w.version for w in params.weights))
    h = x
    for l, w in enumerate(params.weights):
        cache.inputs.append(h)
        q = spmm(s, matmul(h, w.value))
        cache.pre_activations.append(q)
        h = activate(q, params.layer_activation(l))
    ensure_finite(h, "encoder output")
    return h, cache


def encode_backward(upstream: Matrix, cache: EncoderCache) -> Matrix:
    """
    Backpropagate ``dL/dH`` through the encoder.

    Weight gradients are added to each ``ParamTensor.grad``.

    Args:
        upstream: Gradient with respect to the encoder output
        cache: Cache from the matching ``encode`` call

    Returns:
        Gradient with respect to the input features

    Raises:
        StateError: If the cache was already used or weights changed since
        DimensionError: If ``upstream`` does not match the output shape
    """
    params = cache.params
    if cache.consumed:
        raise StateError("encode_backward: cache already consumed")
    if tuple(w.version for w in params.weights) != cache.versions:
        raise StateError("encode_backward: weights were updated after the forward pass")
    expected = cache.pre_activations[-1].shape
    if upstream.shape != expected:
        raise DimensionError(f"encode_backward: upstream {upstream.shape} != output {expected}")
    cache.consumed = True

    s_t = PropagationOperator(cache.s.matrix.T.tocsr())
    grad = upstream
    for l in reversed(range(params.layers)):
        w = params.weights[l]
        dq = activate_grad(cache.pre_activations[l], grad, params.layer_activation(l))
        dp = spmm(s_t, dq)
        w.grad += matmul(cache.inputs[l].T, dp)
        grad = matmul(dp, w.value.T)
    return grad
