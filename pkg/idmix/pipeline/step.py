"""
One contrastive training step.

views -> shared encoder on both views -> mixup on view A -> projection head
-> similarity -> mixed N-pair loss -> explicit backward into ModelParams.

The trainer and the gradient oracle both go through ``training_step``.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np
from loguru import logger

from idmix.augment.views import ViewPair, make_views
from idmix.config.models import MixupStrategyName, TrainConfig, ViewMode
from idmix.encoder.gcn import encode, encode_backward
from idmix.encoder.model import ModelParams
from idmix.encoder.projection import project, project_backward
from idmix.errors import NumericError, StateError
from idmix.graphdata.graph import Graph
from idmix.graphdata.propagation import normalized_adjacency
from idmix.mixup.base import MixAssignment, MixupStrategy
from idmix.mixup.factory import MixupStrategyFactory
from idmix.mixup.labels import sample_lambda
from idmix.numcore.matrix import Matrix
from idmix.numcore.rng import Rng
from idmix.objective.loss import mixed_npair_loss
from idmix.objective.similarity import similarity_backward, similarity_forward


@dataclass(eq=False)
class StepResult:
    """Outputs of one step, kept for diagnostics and tests."""

    loss: float
    lam: float
    assignment: MixAssignment
    views: ViewPair
    h_a: Matrix
    h_b: Matrix
    h_mixed: Matrix


def training_step(
    graph: Graph,
    params: ModelParams,
    cfg: TrainConfig,
    rng: Rng,
    strategy: Optional[MixupStrategy] = None,
    backward: bool = True,
) -> StepResult:
    """
    Run forward and (optionally) backward for one batch.

    Gradients are zeroed first, so on return every ``ParamTensor.grad`` holds
    exactly this step's gradient.

    Args:
        graph: The batch (a full graph or a disjoint union)
        params: Model parameters, gradients overwritten
        cfg: Training configuration
        rng: Stream for this step; ``views``, ``lambda`` and ``mixup`` children
            are used
        strategy: Mixup strategy, built from ``cfg.mixup`` when omitted
        backward: Skip gradient computation when False

    Returns:
        StepResult with the loss value

    Raises:
        NumericError: If the loss is not finite
        StateError: If the two views were not encoded by the same weights
    """
    strategy = strategy or MixupStrategyFactory.from_config(cfg.mixup)
    views = make_views(
        graph,
        cfg.augment_a,
        cfg.augment_b,
        rng.split("views"),
        single_view=cfg.view_mode == ViewMode.SINGLE,
    )

    h_a, enc_a = encode(normalized_adjacency(views.view_a), views.view_a.features, params.encoder)
    h_b, enc_b = encode(normalized_adjacency(views.view_b), views.view_b.features, params.encoder)
    if enc_a.params is not params.encoder or enc_b.params is not params.encoder:
        raise StateError("both views must be encoded by the shared encoder")

    if cfg.mixup.strategy == MixupStrategyName.NONE:
        lam = 1.0
    else:
        lam = sample_lambda(cfg.mixup, rng.split("lambda"))
    h_mixed, assignment = strategy.mix(h_a, lam, rng.split("mixup"))

    z_a, head_a = project(h_mixed, params.head)
    z_b, head_b = project(h_b, params.head)
    sim, sim_cache = similarity_forward(z_a, z_b, cfg.loss)
    result = mixed_npair_loss(sim, assignment, cfg.loss, cfg.reduction)
    if not np.isfinite(result.value):
        raise NumericError(f"loss is not finite ({result.value})")

    if backward:
        params.zero_grad()
        grad_z_a, grad_z_b = similarity_backward(result.grad_sim, sim_cache)
        grad_h_mixed = project_backward(grad_z_a, head_a)
        grad_h_b = project_backward(grad_z_b, head_b)
        encode_backward(strategy.backward(grad_h_mixed, assignment), enc_a)
        encode_backward(grad_h_b, enc_b)

    logger.trace(f"step: loss={result.value:.6g} lam={lam:.4f} strategy={assignment.strategy}")
    return StepResult(result.value, lam, assignment, views, h_a, h_b, h_mixed)
