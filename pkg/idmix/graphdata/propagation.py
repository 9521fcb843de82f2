"""
Symmetric-normalized propagation operator S = D^-1/2 (A + I) D^-1/2.
"""

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from idmix.errors import DimensionError
from idmix.graphdata.graph import Graph
from idmix.numcore.matrix import Matrix


@dataclass(frozen=True, eq=False)
class PropagationOperator:
    """
    Sparse symmetric operator in compressed row form.

    Attributes:
        matrix: n x n ``scipy.sparse.csr_matrix``
    """

    matrix: sp.csr_matrix

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    @property
    def indptr(self) -> np.ndarray:
        return self.matrix.indptr

    @property
    def indices(self) -> np.ndarray:
        return self.matrix.indices

    @property
    def data(self) -> np.ndarray:
        return self.matrix.data

    def to_dense(self) -> Matrix:
        return self.matrix.toarray()

    def permuted(self, perm: np.ndarray) -> "PropagationOperator":
        """Operator of the graph whose node ``i`` is this graph's ``perm[i]``."""
        return PropagationOperator(self.matrix[perm][:, perm].tocsr())


def normalized_adjacency(g: Graph) -> PropagationOperator:
    """
    Build S for ``g`` with a self-loop on every node.

    Isolated nodes get degree 1 from their self-loop, so S is always defined.

    Args:
        g: Source graph

    Returns:
        The propagation operator
    """
    n = g.n
    u, v = g.edges[:, 0], g.edges[:, 1]
    loops = np.arange(n, dtype=np.int64)
    rows = np.concatenate([u, v, loops])
    cols = np.concatenate([v, u, loops])
    a_hat = sp.csr_matrix(
        (np.ones(rows.size, dtype=np.float64), (rows, cols)), shape=(n, n)
    )
    deg = np.asarray(a_hat.sum(axis=1)).ravel()
    d_inv_sqrt = sp.diags(1.0 / np.sqrt(deg))
    s = (d_inv_sqrt @ a_hat @ d_inv_sqrt).tocsr()
    s.sort_indices()
    return PropagationOperator(s)


def spmm(s: PropagationOperator, h: Matrix) -> Matrix:
    """
    Sparse-dense product ``S @ h``.

    Raises:
        DimensionError: If ``h`` does not have ``s.n`` rows
    """
    if h.ndim != 2 or h.shape[0] != s.matrix.shape[1]:
        raise DimensionError(
            f"spmm: operator {s.matrix.shape} cannot multiply matrix {h.shape}"
        )
    return np.asarray(s.matrix @ h, dtype=np.float64)
