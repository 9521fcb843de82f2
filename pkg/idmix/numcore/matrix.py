"""
Dense float64 matrix helpers.

Matrices are plain ``numpy`` arrays of dtype float64 with rows as samples
(nodes) and columns as features. Every public operation checks its shapes and
keeps results finite.
"""

from typing import Optional, Sequence

import numpy as np
import numpy.typing as npt
from scipy.special import log_softmax, softmax

from idmix.errors import DimensionError, NumericError

Matrix = npt.NDArray[np.float64]

# Rows per worker below which parallel matmul falls back to one product.
_MIN_ROWS_PER_WORKER = 64


def as_matrix(data, name: str = "matrix") -> Matrix:
    """
    Convert array-like data to a C-contiguous 2-D float64 matrix.

    Args:
        data: Nested sequences or an array
        name: Name used in error messages

    Returns:
        A float64 matrix

    Raises:
        DimensionError: If the data is not two dimensional
        NumericError: If any entry is not finite
    """
    matrix = np.ascontiguousarray(np.asarray(data, dtype=np.float64))
    if matrix.ndim != 2:
        raise DimensionError(f"{name} must be 2-D, got shape {matrix.shape}")
    ensure_finite(matrix, name)
    return matrix


def ensure_finite(matrix: np.ndarray, name: str) -> None:
    """Raise ``NumericError`` naming ``name`` if ``matrix`` holds NaN or Inf."""
    if not np.all(np.isfinite(matrix)):
        bad = int(np.count_nonzero(~np.isfinite(matrix)))
        raise NumericError(f"{name} contains {bad} non-finite entries")


def matmul(a: Matrix, b: Matrix, workers: Optional[int] = None) -> Matrix:
    """
    Matrix product ``a @ b``.

    With ``workers > 1`` the rows of ``a`` are split into blocks that are
    multiplied on a thread pool and stacked back in order.

    Args:
        a: Left operand (n x k)
        b: Right operand (k x m)
        workers: Number of worker threads, None or 1 for a single product

    Returns:
        The n x m product

    Raises:
        DimensionError: If ``a.cols != b.rows``
    """
    if a.ndim != 2 or b.ndim != 2 or a.shape[1] != b.shape[0]:
        raise DimensionError(
            f"matmul: cannot multiply shapes {a.shape} and {b.shape}"
        )

    if not workers or workers <= 1 or a.shape[0] < 2 * _MIN_ROWS_PER_WORKER:
        return a @ b

    from idmix.utils.concurrent import ParallelExecutor

    blocks: Sequence[Matrix] = np.array_split(a, workers, axis=0)
    executor = ParallelExecutor(max_workers=workers)
    parts = executor.execute_tasks(
        lambda block: block @ b, list(blocks), task_name="matmul block",
        show_progress=False,
    )
    return np.vstack(parts)


def stable_log_softmax_rows(s: Matrix) -> Matrix:
    """
    Row-wise log-softmax with row-max subtraction.

    Args:
        s: Finite score matrix

    Returns:
        Matrix of the same shape whose rows log-sum-exp to zero
    """
    ensure_finite(s, "scores")
    return log_softmax(s, axis=1)


def softmax_rows(s: Matrix) -> Matrix:
    """Row-wise softmax, the exponential of ``stable_log_softmax_rows``."""
    return softmax(s, axis=1)


def l2_normalize_rows(z: Matrix, what: str = "embeddings") -> tuple[Matrix, np.ndarray]:
    """
    Scale every row to unit L2 norm.

    Args:
        z: Matrix to normalize
        what: Name used in error messages

    Returns:
        Tuple of (normalized matrix, row norms)

    Raises:
        NumericError: If some row has zero norm
    """
    norms = np.linalg.norm(z, axis=1)
    zero = np.flatnonzero(norms == 0.0)
    if zero.size:
        raise NumericError(f"{what}: row {int(zero[0])} has zero norm")
    return z / norms[:, None], norms
