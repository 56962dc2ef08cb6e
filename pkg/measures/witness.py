"""Correlation-matrix rank as a witness of quantum correlations."""

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple

import numpy as np

from common.linalg import ComplexMatrix, kron, singular_values
from common.states import DensityMatrix
from common.utils import Config


@dataclass(frozen=True)
class CorrelationRank:
    rank: int
    witnessed: bool
    singular_values: Tuple[float, ...]

    def __iter__(self):
        # Unpacks as (L, witnessed)
        return iter((self.rank, self.witnessed))


@lru_cache(maxsize=None)
def hermitian_basis(d: int) -> Tuple[ComplexMatrix, ...]:
    """
    Orthonormal Hermitian operator basis of C^d: 1/sqrt(d) followed by the
    generalized Gell-Mann matrices scaled to Tr(G_i G_j) = delta_ij.
    """
    basis = [np.eye(d, dtype=complex) / math.sqrt(d)]
    for j in range(d):
        for k in range(j + 1, d):
            sym = np.zeros((d, d), dtype=complex)
            sym[j, k] = sym[k, j] = 1.0
            basis.append(sym / math.sqrt(2))
            anti = np.zeros((d, d), dtype=complex)
            anti[j, k] = -1j
            anti[k, j] = 1j
            basis.append(anti / math.sqrt(2))
    for l in range(1, d):
        diag = np.zeros(d)
        diag[:l] = 1.0
        diag[l] = -l
        basis.append(np.diag(diag).astype(complex) / math.sqrt(l * (l + 1)))
    return tuple(basis)


def correlation_matrix(rho: DensityMatrix) -> np.ndarray:
    """r_ij = Tr[rho (A_i (x) B_j)], so that rho = sum r_ij A_i (x) B_j."""
    view = rho.bipartite()
    d_a, d_b = view.bipartite_dims
    basis_a = hermitian_basis(d_a)
    basis_b = hermitian_basis(d_b)
    r = np.empty((len(basis_a), len(basis_b)))
    for i, A in enumerate(basis_a):
        for j, B in enumerate(basis_b):
            r[i, j] = np.real(np.trace(view.matrix @ kron(A, B)))
    return r


def correlation_rank(rho: DensityMatrix) -> CorrelationRank:
    """
    Number of non-zero singular values L of the correlation matrix.

    ``witnessed`` is L > min(d_A, d_B); classically-correlated states never
    exceed min(d_A, d_B).
    """
    d_a, d_b = rho.bipartite_dims
    s = singular_values(correlation_matrix(rho))
    threshold = Config.RANK_TOL * (s[0] if s.size and s[0] > 0 else 1.0)
    rank = int(np.sum(s > threshold))
    return CorrelationRank(
        rank=rank,
        witnessed=rank > min(d_a, d_b),
        singular_values=tuple(float(x) for x in s),
    )
