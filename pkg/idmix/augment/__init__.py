"""Stochastic view generation."""

from idmix.augment.views import (
    NO_AUGMENTATION,
    ViewPair,
    augment,
    drop_edges,
    make_views,
    mask_attributes,
)

__all__ = [
    "NO_AUGMENTATION",
    "ViewPair",
    "augment",
    "drop_edges",
    "make_views",
    "mask_attributes",
]
