"""
Finite-difference check of the full training loss on a small seeded instance.
"""

from typing import Optional, Sequence

from idmix.config.models import (
    AugmentConfig,
    EncoderConfig,
    LossConfig,
    MixupConfig,
    TrainConfig,
)
from idmix.encoder.model import ModelParams
from idmix.graphdata.synthetic import sbm_generate
from idmix.numcore.gradcheck import finite_diff_check
from idmix.numcore.params import ParamTensor
from idmix.numcore.rng import Rng
from idmix.pipeline.step import training_step

GRADCHECK_NODES = 12


def gradcheck_config(seed: int) -> TrainConfig:
    """Small model, random mixup with lambda fixed at 0.7, dot similarity, tau 0.2."""
    return TrainConfig(
        seed=seed,
        augment_a=AugmentConfig(p_edge=0.2, p_feat=0.3),
        augment_b=AugmentConfig(p_edge=0.2, p_feat=0.3),
        mixup=MixupConfig(strategy="random", fixed_lambda=0.7, fold_lambda=False),
        loss=LossConfig(tau=0.2, similarity="dot"),
        encoder=EncoderConfig(
            layers=2, hidden_dim=6, out_dim=5, proj_hidden_dim=5, proj_out_dim=4
        ),
    )


def gradient_check(
    seed: int = 7, eps: float = 1e-5, cfg: Optional[TrainConfig] = None
) -> float:
    """
    Max relative error between analytic and numeric gradients of one step.

    The instance is a 12-node two-block random graph with 8 noisy one-hot
    features. Every loss evaluation reuses the same step stream, so views,
    lambda and partners are fixed while parameters are perturbed.
    """
    cfg = cfg or gradcheck_config(seed)
    root = Rng(seed)
    graph = sbm_generate([6, 6], 0.6, 0.1, "onehot_block_noisy", root.split("graph"))
    params = ModelParams.init(graph.d, cfg.encoder, root.split("init"))
    step_rng = root.split("step")

    def loss_fn(_: Sequence[ParamTensor]) -> float:
        return training_step(graph, params, cfg, step_rng).loss

    return finite_diff_check(loss_fn, params.parameters(), eps)
