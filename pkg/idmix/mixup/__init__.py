"""Identity-label mixup of node embeddings."""

from idmix.mixup.base import MixAssignment, MixupStrategy
from idmix.mixup.strategies import (
    CutMixup,
    LocalMixup,
    NoMixup,
    RandomMixup,
    cut_mixup,
    local_mixup,
    nearest_partners,
    random_mixup,
)
from idmix.mixup.labels import implied_label_rows, label_matrix, sample_lambda
from idmix.mixup.factory import MixupStrategyFactory

__all__ = [
    "MixAssignment",
    "MixupStrategy",
    "CutMixup",
    "LocalMixup",
    "NoMixup",
    "RandomMixup",
    "cut_mixup",
    "local_mixup",
    "nearest_partners",
    "random_mixup",
    "implied_label_rows",
    "label_matrix",
    "sample_lambda",
    "MixupStrategyFactory",
]
