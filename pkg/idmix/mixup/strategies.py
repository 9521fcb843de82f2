"""
Concrete mixup strategies.

- random: partner from a uniform random permutation
- cut: random permutation partner, per-coordinate Bernoulli(lam) keep mask
- local: partner is the nearest other row in Euclidean distance
- none: identity, the plain identity-target baseline
"""

from typing import Optional, Tuple, Union

import numpy as np
from scipy.spatial.distance import cdist

from idmix.config.models import CutLabelMode
from idmix.mixup.base import MixAssignment, MixupStrategy, check_batch
from idmix.numcore.matrix import Matrix
from idmix.numcore.rng import Rng


def _convex(h: Matrix, partner: np.ndarray, lam: float) -> Matrix:
    if lam == 1.0:
        return h.copy()
    return lam * h + (1.0 - lam) * h[partner]


def random_mixup(h: Matrix, lam: float, rng: Rng) -> Tuple[Matrix, MixAssignment]:
    """
    Mix each row with a partner drawn by random permutation.

    ``h'_i = lam * h_i + (1 - lam) * h_partner[i]``
    """
    check_batch(h, "random_mixup")
    partner = rng.permutation(h.shape[0]).astype(np.int64)
    return _convex(h, partner, lam), MixAssignment(partner, float(lam), "random")


def cut_mixup(
    h: Matrix,
    lam: float,
    rng: Rng,
    label_mode: Union[CutLabelMode, str] = CutLabelMode.NOMINAL,
) -> Tuple[Matrix, MixAssignment]:
    """
    Splice coordinates of each row with those of a permutation partner.

    Each coordinate keeps the row's own value with probability ``lam``. Labels
    carry the nominal ``lam`` unless ``label_mode`` is ``realized``, in which
    case each row is weighted by its kept fraction.
    """
    check_batch(h, "cut_mixup")
    n, d = h.shape
    partner = rng.split("partner").permutation(n).astype(np.int64)
    masks = rng.split("mask").random((n, d)) < lam
    mixed = np.where(masks, h, h[partner])

    lam_rows: Optional[np.ndarray] = None
    if CutLabelMode(label_mode) == CutLabelMode.REALIZED:
        lam_rows = masks.mean(axis=1) if d else np.ones(n)
    return mixed, MixAssignment(partner, float(lam), "cut", masks, lam_rows)


def nearest_partners(h: Matrix) -> np.ndarray:
    """Index of the nearest other row; ties go to the lowest index."""
    dist = cdist(h, h, metric="sqeuclidean")
    np.fill_diagonal(dist, np.inf)
    return np.argmin(dist, axis=1).astype(np.int64)


def local_mixup(h: Matrix, lam: float) -> Tuple[Matrix, MixAssignment]:
    """
    Mix each row with its nearest neighbour among the other rows.

    Raises:
        DegenerateBatchError: If ``h`` has fewer than 2 rows
    """
    check_batch(h, "local_mixup", min_rows=2)
    partner = nearest_partners(h)
    return _convex(h, partner, lam), MixAssignment(partner, float(lam), "local")


class RandomMixup(MixupStrategy):
    name = "random"

    def mix(self, h, lam, rng):
        return random_mixup(h, lam, rng)


class CutMixup(MixupStrategy):
    name = "cut"

    def __init__(self, label_mode: Union[CutLabelMode, str] = CutLabelMode.NOMINAL):
        self.label_mode = CutLabelMode(label_mode)

    def mix(self, h, lam, rng):
        return cut_mixup(h, lam, rng, self.label_mode)


class LocalMixup(MixupStrategy):
    name = "local"

    def mix(self, h, lam, rng):
        return local_mixup(h, lam)


class NoMixup(MixupStrategy):
    """Leaves embeddings untouched and assigns identity labels."""

    name = "none"

    def mix(self, h, lam, rng):
        check_batch(h, "no_mixup")
        return h.copy(), MixAssignment.identity(h.shape[0], self.name)
