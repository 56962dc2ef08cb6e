"""Two-qubit concurrence and entanglement of formation (Wootters)."""

import math

import numpy as np

from common.errors import DimensionError
from common.linalg import eig_hermitian, kron, pauli_matrices
from common.states import DensityMatrix
from measures.entropy import binary_entropy


def _require_two_qubits(rho: DensityMatrix) -> DensityMatrix:
    view = rho.bipartite()
    if view.bipartite_dims != (2, 2):
        raise DimensionError(f"expected a two-qubit state, got dims {view.dims}")
    return view


def concurrence(rho: DensityMatrix) -> float:
    """
    C = max(0, l1 - l2 - l3 - l4), l_i the descending square roots of the
    eigenvalues of rho (sy (x) sy) rho* (sy (x) sy).

    The l_i are taken from the Hermitian matrix sqrt(rho) rho~ sqrt(rho),
    which has the same spectrum.
    """
    view = _require_two_qubits(rho)
    sy = pauli_matrices()[1]
    flip = kron(sy, sy)
    rho_tilde = flip @ view.matrix.conj() @ flip

    w, V = eig_hermitian(view.matrix)
    sqrt_rho = (V * np.sqrt(np.clip(w, 0.0, None))) @ V.conj().T
    R = sqrt_rho @ rho_tilde @ sqrt_rho
    R = 0.5 * (R + R.conj().T)
    lam, _ = eig_hermitian(R)
    lam = np.sqrt(np.clip(lam, 0.0, None))
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def entanglement_of_formation(rho: DensityMatrix) -> float:
    """h((1 + sqrt(1 - C^2))/2) in bits."""
    c = min(1.0, concurrence(rho))
    return binary_entropy(0.5 * (1.0 + math.sqrt(1.0 - c * c)))
