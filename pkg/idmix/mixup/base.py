"""
Base class for embedding-space mixup strategies.

A strategy mixes every row of H with one partner row and records the mixed
identity labels as a compact ``MixAssignment``.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
import numpy.typing as npt

from idmix.errors import DegenerateBatchError, DimensionError, SchemaError
from idmix.numcore.matrix import Matrix
from idmix.numcore.rng import Rng


@dataclass(frozen=True, eq=False)
class MixAssignment:
    """
    Mixed identity labels of one batch.

    Row ``i`` of the implied label matrix has weight ``lam`` (or
    ``lam_rows[i]``) at column ``i`` and the remainder at ``partner[i]``.

    Attributes:
        partner: Index of the node mixed into each row
        lam: Mixing ratio shared by the batch
        strategy: Name of the strategy that produced it
        cut_masks: Per-row keep masks (cut strategy only)
        lam_rows: Per-row label weights overriding ``lam``
    """

    partner: npt.NDArray[np.int64]
    lam: float
    strategy: str
    cut_masks: Optional[npt.NDArray[np.bool_]] = None
    lam_rows: Optional[np.ndarray] = None

    def __post_init__(self):
        partner = np.asarray(self.partner, dtype=np.int64)
        object.__setattr__(self, "partner", partner)
        n = partner.size
        if n and (partner.min() < 0 or partner.max() >= n):
            raise SchemaError(f"partner indices must lie in [0, {n})")
        if not 0.0 <= self.lam <= 1.0:
            raise SchemaError(f"lam must be in [0, 1], got {self.lam}")
        if self.lam_rows is not None and np.shape(self.lam_rows) != (n,):
            raise DimensionError(f"lam_rows has shape {np.shape(self.lam_rows)}, expected ({n},)")

    @property
    def n(self) -> int:
        return self.partner.size

    def row_weights(self) -> np.ndarray:
        """Label weight of each row on its own identity."""
        if self.lam_rows is not None:
            return np.asarray(self.lam_rows, dtype=np.float64)
        return np.full(self.n, float(self.lam))

    @classmethod
    def identity(cls, n: int, strategy: str = "none") -> "MixAssignment":
        return cls(np.arange(n, dtype=np.int64), 1.0, strategy)


class MixupStrategy(ABC):
    """Abstract base class for partner selection strategies."""

    name: str = ""

    @abstractmethod
    def mix(self, h: Matrix, lam: float, rng: Rng) -> Tuple[Matrix, MixAssignment]:
        """
        Mix the rows of ``h``.

        Args:
            h: N x d embeddings of one view
            lam: Mixing ratio
            rng: Random stream for partner and mask draws

        Returns:
            Tuple of (mixed embeddings, assignment)
        """

    def backward(self, upstream: Matrix, assignment: MixAssignment) -> Matrix:
        """
        Gradient of the mixed embeddings with respect to ``h``.

        Partner choice is treated as constant, including the distance-based
        choice of the local strategy.
        """
        if upstream.shape[0] != assignment.n:
            raise DimensionError(
                f"mixup backward: {upstream.shape[0]} rows for {assignment.n} partners"
            )
        if assignment.cut_masks is not None:
            own = np.where(assignment.cut_masks, upstream, 0.0)
            other = upstream - own
        else:
            own = assignment.lam * upstream
            other = (1.0 - assignment.lam) * upstream
        grad = own.copy()
        np.add.at(grad, assignment.partner, other)
        return grad


def check_batch(h: Matrix, strategy: str, min_rows: int = 1) -> None:
    if h.ndim != 2:
        raise DimensionError(f"{strategy}: embeddings must be 2-D, got {h.shape}")
    if h.shape[0] < min_rows:
        raise DegenerateBatchError(
            f"{strategy}: needs at least {min_rows} rows, got {h.shape[0]}"
        )
