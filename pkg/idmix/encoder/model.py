"""
Full trainable model: shared encoder plus projection head.
"""

from dataclasses import dataclass
from typing import Dict, List

from idmix.config.models import EncoderConfig
from idmix.encoder.gcn import EncoderParams
from idmix.encoder.projection import ProjectionParams
from idmix.numcore.params import ParamTensor
from idmix.numcore.rng import Rng


@dataclass(eq=False)
class ModelParams:
    """Encoder weights W0..W(L-1) and head weights W1, W2."""

    encoder: EncoderParams
    head: ProjectionParams

    @classmethod
    def init(cls, in_dim: int, cfg: EncoderConfig, rng: Rng) -> "ModelParams":
        """
        Glorot-initialize a model for ``in_dim`` input features.

        Encoder and head draw from the child streams ``encoder`` and ``head``.
        """
        encoder = EncoderParams.init(
            cfg.widths(in_dim), rng.split("encoder"), cfg.activation, cfg.activate_last
        )
        head = ProjectionParams.init(
            cfg.out_dim, cfg.proj_hidden_dim, cfg.proj_out_dim, rng.split("head"), cfg.activation
        )
        return cls(encoder, head)

    def parameters(self) -> List[ParamTensor]:
        return [*self.encoder.weights, self.head.w1, self.head.w2]

    def named(self) -> Dict[str, ParamTensor]:
        return {p.name: p for p in self.parameters()}

    def zero_grad(self) -> None:
        for p in self.parameters():
            p.zero_grad()

    def layout(self) -> Dict[str, object]:
        """Non-weight settings needed to rebuild the model from saved arrays."""
        return {
            "layers": self.encoder.layers,
            "activation": self.encoder.activation.value,
            "activate_last": self.encoder.activate_last,
        }
