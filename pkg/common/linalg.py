"""
Dense complex linear algebra for operators up to 16x16.

Matrices are plain ``numpy`` complex arrays. Hermitian spectra come either
from LAPACK (the default) or from a cyclic Jacobi solver that is kept as an
independent reference implementation.
"""

import math
from functools import reduce
from typing import Iterable, List, Sequence, Tuple

import numpy as np
import numpy.typing as npt
from scipy.linalg import schur
from typing_extensions import TypeAlias

from common.errors import ConvergenceError, DimensionError, NonHermitianError
from common.utils import Config

ComplexMatrix: TypeAlias = npt.NDArray[np.complex128]
RealVector: TypeAlias = npt.NDArray[np.float64]


def as_matrix(M: npt.ArrayLike) -> ComplexMatrix:
    """Coerce to a square 2-D complex array."""
    arr = np.asarray(M, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {arr.shape}")
    return arr


def is_hermitian(M: npt.ArrayLike, tol: float = Config.HERMITIAN_TOL) -> bool:
    arr = np.asarray(M, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        return False
    return bool(np.max(np.abs(arr - arr.conj().T), initial=0.0) <= tol)


def eig_hermitian(
    M: npt.ArrayLike, method: str = "lapack"
) -> Tuple[RealVector, ComplexMatrix]:
    """
    Eigendecomposition of a Hermitian matrix.

    Returns eigenvalues in descending order and the matching orthonormal
    eigenvectors as columns, so that ``M = V diag(w) V^dagger``.

    Args:
        M: Hermitian matrix of side at most 16
        method: "lapack" or "jacobi"
    """
    arr = as_matrix(M)
    if arr.shape[0] > Config.MAX_SIDE:
        raise DimensionError(f"side {arr.shape[0]} exceeds {Config.MAX_SIDE}")
    if not is_hermitian(arr):
        deviation = float(np.max(np.abs(arr - arr.conj().T)))
        raise NonHermitianError(
            f"matrix is not Hermitian (max |M - M^dagger| = {deviation:.3e})"
        )

    if method == "lapack":
        w, V = np.linalg.eigh(arr)
    elif method == "jacobi":
        w, V = _jacobi_hermitian(arr)
    else:
        raise ValueError(f"unknown eigensolver {method!r}")

    order = np.argsort(w)[::-1]
    return np.asarray(w, dtype=float)[order], V[:, order]


def _jacobi_hermitian(M: ComplexMatrix) -> Tuple[RealVector, ComplexMatrix]:
    """Cyclic complex Jacobi rotations until the off-diagonal mass vanishes."""
    A = 0.5 * (M + M.conj().T)
    n = A.shape[0]
    V = np.eye(n, dtype=complex)
    scale = max(1.0, float(np.linalg.norm(A)))

    for _ in range(Config.JACOBI_MAX_SWEEPS):
        off = math.sqrt(float(np.sum(np.abs(A) ** 2) - np.sum(np.abs(np.diag(A)) ** 2)))
        if off <= Config.JACOBI_TOL * scale:
            return np.real(np.diag(A)).copy(), V

        for p in range(n - 1):
            for q in range(p + 1, n):
                c_pq = A[p, q]
                r = abs(c_pq)
                if r == 0.0:
                    continue
                # Phase-align the pair, then a real symmetric rotation
                phase = c_pq / r
                a, b = A[p, p].real, A[q, q].real
                theta = 0.5 * math.atan2(2.0 * r, b - a)
                cos, sin = math.cos(theta), math.sin(theta)

                G = np.eye(n, dtype=complex)
                G[p, p] = cos
                G[p, q] = sin
                G[q, p] = -np.conj(phase) * sin
                G[q, q] = np.conj(phase) * cos

                A = G.conj().T @ A @ G
                A[p, q] = A[q, p] = 0.0
                V = V @ G

    raise ConvergenceError(
        f"Jacobi eigensolver did not converge in {Config.JACOBI_MAX_SWEEPS} sweeps"
    )


def eigvals_hermitian_batch(stack: npt.ArrayLike) -> npt.NDArray[np.float64]:
    """
    Eigenvalues of a stack of Hermitian matrices with shape (..., n, n).

    Uses the closed form for 2x2 blocks and LAPACK otherwise; the order of
    the returned eigenvalues along the last axis is unspecified.
    """
    arr = np.asarray(stack, dtype=complex)
    if arr.shape[-1] == 2:
        a = arr[..., 0, 0].real
        d = arr[..., 1, 1].real
        off = np.abs(arr[..., 0, 1]) ** 2
        mean = 0.5 * (a + d)
        radius = np.sqrt(0.25 * (a - d) ** 2 + off)
        return np.stack([mean + radius, mean - radius], axis=-1)
    return np.linalg.eigvalsh(arr)


def kron(*ops: npt.ArrayLike) -> ComplexMatrix:
    """Kronecker product of one or more matrices, left to right."""
    if not ops:
        raise ValueError("kron needs at least one operand")
    return reduce(np.kron, (np.asarray(op, dtype=complex) for op in ops))


def partial_trace(
    M: npt.ArrayLike, dims: Sequence[int], keep: Iterable[int]
) -> ComplexMatrix:
    """
    Trace out every tensor factor not listed in ``keep``.

    Kept factors appear in ascending index order in the result.
    """
    arr = as_matrix(M)
    dims = tuple(int(d) for d in dims)
    keep_set = sorted(set(keep))
    n = len(dims)

    if int(np.prod(dims)) != arr.shape[0]:
        raise DimensionError(
            f"dims {dims} (product {int(np.prod(dims))}) do not match side {arr.shape[0]}"
        )
    if not keep_set:
        raise DimensionError("keep must name at least one factor")
    if keep_set[0] < 0 or keep_set[-1] >= n:
        raise DimensionError(f"keep {keep_set} out of range for {n} factors")

    letters = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"
    rows = list(letters[:n])
    cols = list(letters[n : 2 * n])
    for i in range(n):
        if i not in keep_set:
            cols[i] = rows[i]
    out = "".join(rows[i] for i in keep_set) + "".join(cols[i] for i in keep_set)
    spec = "".join(rows) + "".join(cols) + "->" + out

    tensor = arr.reshape(dims + dims)
    side = int(np.prod([dims[i] for i in keep_set]))
    return np.einsum(spec, tensor).reshape(side, side)


def generator_length(n: int) -> int:
    return n * n


def hermitian_from_generator(h: npt.ArrayLike) -> ComplexMatrix:
    """
    Build the Hermitian matrix encoded by a real vector of length n^2.

    The first n entries are the diagonal; then, for i < j in row-major
    order, a (real, imaginary) pair gives H[i, j].
    """
    vec = np.asarray(h, dtype=float).ravel()
    n = math.isqrt(vec.size)
    if n * n != vec.size or n not in Config.GENERATOR_SIDES:
        raise DimensionError(
            f"generator length {vec.size} is not n^2 for n in {Config.GENERATOR_SIDES}"
        )

    H = np.diag(vec[:n]).astype(complex)
    iu, ju = np.triu_indices(n, k=1)
    pairs = vec[n:].reshape(-1, 2)
    H[iu, ju] = pairs[:, 0] + 1j * pairs[:, 1]
    H[ju, iu] = pairs[:, 0] - 1j * pairs[:, 1]
    return H


def unitary_from_generator(h: npt.ArrayLike) -> ComplexMatrix:
    """U = exp(iH), computed through the eigendecomposition of H."""
    H = hermitian_from_generator(h)
    w, V = np.linalg.eigh(H)
    return (V * np.exp(1j * w)) @ V.conj().T


def singular_values(M: npt.ArrayLike) -> RealVector:
    """Descending singular values."""
    return np.linalg.svd(np.asarray(M), compute_uv=False)


def hadamard() -> ComplexMatrix:
    return np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)


def pauli_matrices() -> List[ComplexMatrix]:
    """sigma_x, sigma_y, sigma_z."""
    return [
        np.array([[0, 1], [1, 0]], dtype=complex),
        np.array([[0, -1j], [1j, 0]], dtype=complex),
        np.array([[1, 0], [0, -1]], dtype=complex),
    ]


def swap_operator(d: int = 2) -> ComplexMatrix:
    """Permutation |ij> -> |ji> on C^d (x) C^d."""
    P = np.zeros((d * d, d * d), dtype=complex)
    for i in range(d):
        for j in range(d):
            P[d * i + j, d * j + i] = 1.0
    return P


def generator_from_hermitian(H: npt.ArrayLike) -> RealVector:
    """Inverse of ``hermitian_from_generator``."""
    arr = as_matrix(H)
    n = arr.shape[0]
    iu, ju = np.triu_indices(n, k=1)
    upper = arr[iu, ju]
    pairs = np.stack([upper.real, upper.imag], axis=-1).ravel()
    return np.concatenate([np.real(np.diag(arr)), pairs])


def embed_generator(h: npt.ArrayLike, side: int) -> RealVector:
    """
    Generator of the block-diagonal unitary U (+) 1 on a larger space.

    The small generator's matrix occupies the leading block and the rest of
    the big generator is zero, so exp(iH) acts as the identity there.
    """
    small = hermitian_from_generator(h)
    n = small.shape[0]
    if side < n:
        raise DimensionError(f"cannot embed side {n} into side {side}")
    big = np.zeros((side, side), dtype=complex)
    big[:n, :n] = small
    return generator_from_hermitian(big)


def generator_from_unitary(U: npt.ArrayLike) -> RealVector:
    """A generator h with unitary_from_generator(h) == U (principal angles)."""
    arr = as_matrix(U)
    T, Z = schur(arr, output="complex")
    # Unitaries are normal, so the Schur form is diagonal
    angles = np.angle(np.diag(T))
    return generator_from_hermitian((Z * angles) @ Z.conj().T)
