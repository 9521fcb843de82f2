"""
Stochastic graph views: attribute masking and edge dropping.

An entry, column or edge is removed with probability ``p``; survivors are
bit-identical to the source.
"""

from dataclasses import dataclass, field
from typing import Dict, Tuple, Union

import numpy as np
from loguru import logger

from idmix.config.models import AugmentConfig, FeatureGranularity
from idmix.errors import SchemaError
from idmix.graphdata.graph import Graph
from idmix.numcore.matrix import Matrix
from idmix.numcore.rng import Rng

NO_AUGMENTATION = AugmentConfig(p_edge=0.0, p_feat=0.0)


@dataclass(frozen=True, eq=False)
class ViewPair:
    """
    Two independently augmented realizations of one graph.

    Attributes:
        view_a: The view whose embeddings get mixed
        view_b: The untouched contrast view
        provenance: Seed and spawn key of the stream behind each view
    """

    view_a: Graph
    view_b: Graph
    provenance: Dict[str, Tuple[int, Tuple[int, ...]]] = field(default_factory=dict)


def _check_probability(p: float, what: str) -> None:
    if not 0.0 <= p < 1.0:
        raise SchemaError(f"{what} must be in [0, 1), got {p}")


def mask_attributes(
    x: Matrix,
    p_feat: float,
    granularity: Union[FeatureGranularity, str],
    rng: Rng,
) -> Matrix:
    """
    Zero features at random.

    Args:
        x: n x d feature matrix
        p_feat: Probability that a column (per_dimension) or a cell
            (per_entry) is zeroed
        granularity: ``per_dimension`` or ``per_entry``
        rng: Random stream

    Returns:
        Masked copy of ``x`` with the same shape

    Raises:
        SchemaError: If ``p_feat`` is outside [0, 1)
    """
    _check_probability(p_feat, "p_feat")
    granularity = FeatureGranularity(granularity)
    if p_feat == 0.0:
        return x.copy()
    if granularity == FeatureGranularity.PER_DIMENSION:
        keep = (rng.random(x.shape[1]) >= p_feat)[None, :]
    else:
        keep = rng.random(x.shape) >= p_feat
    return np.where(keep, x, 0.0)


def drop_edges(g: Graph, p_edge: float, rng: Rng) -> Graph:
    """
    Remove each undirected edge independently with probability ``p_edge``.

    One draw per stored edge keeps the implied adjacency symmetric. Features
    and labels are carried over unchanged.

    Raises:
        SchemaError: If ``p_edge`` is outside [0, 1)
    """
    _check_probability(p_edge, "p_edge")
    if p_edge == 0.0 or g.num_edges == 0:
        return g
    keep = rng.random(g.num_edges) >= p_edge
    return g.with_edges(g.edges[keep])


def augment(g: Graph, cfg: AugmentConfig, rng: Rng) -> Graph:
    """Apply edge dropping then attribute masking from two child streams."""
    dropped = drop_edges(g, cfg.p_edge, rng.split("edges"))
    masked = mask_attributes(
        dropped.features, cfg.p_feat, cfg.feat_granularity, rng.split("features")
    )
    return dropped.with_features(masked)


def make_views(
    g: Graph,
    cfg_a: AugmentConfig,
    cfg_b: AugmentConfig,
    rng: Rng,
    single_view: bool = False,
) -> ViewPair:
    """
    Build the two contrastive views of ``g``.

    The views draw from the disjoint child streams ``view_a`` and ``view_b``,
    so changing one view's configuration never alters the other view.

    Args:
        g: Source graph
        cfg_a: Augmentation for the mixed view
        cfg_b: Augmentation for the contrast view
        rng: Random stream for this step
        single_view: Replace ``cfg_a`` with no augmentation

    Returns:
        ViewPair with provenance of both streams
    """
    if single_view:
        cfg_a = NO_AUGMENTATION
    rng_a, rng_b = rng.split("view_a"), rng.split("view_b")
    view_a = augment(g, cfg_a, rng_a)
    view_b = augment(g, cfg_b, rng_b)
    logger.debug(
        f"make_views: edges {g.num_edges} -> {view_a.num_edges} / {view_b.num_edges}"
    )
    return ViewPair(
        view_a,
        view_b,
        {"view_a": (rng_a.seed, rng_a.spawn_key), "view_b": (rng_b.seed, rng_b.spawn_key)},
    )
