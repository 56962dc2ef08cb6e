import numpy as np
import pytest

from common.errors import DimensionError, NonHermitianError
from common.linalg import (
    eig_hermitian,
    eigvals_hermitian_batch,
    embed_generator,
    generator_from_unitary,
    hermitian_from_generator,
    kron,
    partial_trace,
    singular_values,
    swap_operator,
    unitary_from_generator,
)
from common.utils import Config
from conftest import random_hermitian, random_unitary


def charpoly_roots(M):
    """Eigenvalues as roots of det(x - M), descending (Faddeev-LeVerrier coefficients)."""
    n = M.shape[0]
    coeffs = [1.0 + 0j]
    Mk = np.zeros_like(M)
    for k in range(1, n + 1):
        Mk = M @ Mk + coeffs[-1] * np.eye(n)
        coeffs.append(-np.trace(M @ Mk) / k)
    roots = np.roots(coeffs)
    return np.sort(roots.real)[::-1]


@pytest.mark.parametrize("method", ["lapack", "jacobi"])
def test_eigenvalues_match_characteristic_polynomial(rng, method):
    for _ in range(100):
        M = random_hermitian(rng, 4)
        w, _ = eig_hermitian(M, method=method)
        np.testing.assert_allclose(w, charpoly_roots(M), atol=1e-8)


def test_jacobi_eigenvectors_reconstruct_matrix(rng):
    for n in (2, 3, 4, 8):
        M = random_hermitian(rng, n)
        w, V = eig_hermitian(M, method="jacobi")
        assert np.all(np.diff(w) <= 1e-12)
        np.testing.assert_allclose(V.conj().T @ V, np.eye(n), atol=Config.RECONSTRUCTION_TOL)
        np.testing.assert_allclose(V @ np.diag(w) @ V.conj().T, M, atol=Config.RECONSTRUCTION_TOL)


def test_jacobi_handles_degenerate_and_diagonal_input():
    w, V = eig_hermitian(np.eye(4), method="jacobi")
    np.testing.assert_allclose(w, np.ones(4))
    w, _ = eig_hermitian(np.diag([3.0, -1.0, 2.0]), method="jacobi")
    np.testing.assert_allclose(w, [3.0, 2.0, -1.0])


def test_eig_rejects_non_hermitian_and_oversized():
    with pytest.raises(NonHermitianError):
        eig_hermitian(np.array([[0, 1], [0, 0]]))
    with pytest.raises(DimensionError):
        eig_hermitian(np.eye(17))
    with pytest.raises(ValueError):
        eig_hermitian(np.eye(2), method="qr")


def test_batched_eigenvalues(rng):
    stack = np.stack([random_hermitian(rng, 2) for _ in range(10)])
    batched = np.sort(eigvals_hermitian_batch(stack), axis=-1)
    np.testing.assert_allclose(batched, np.linalg.eigvalsh(stack), atol=1e-12)


def test_partial_trace_of_product(rng):
    A = random_hermitian(rng, 2)
    B = random_hermitian(rng, 3)
    C = random_hermitian(rng, 2)
    M = kron(A, B, C)
    np.testing.assert_allclose(
        partial_trace(M, (2, 3, 2), [0]), A * np.trace(B) * np.trace(C), atol=1e-12
    )
    np.testing.assert_allclose(
        partial_trace(M, (2, 3, 2), [2, 0]), kron(A, C) * np.trace(B), atol=1e-12
    )
    with pytest.raises(DimensionError):
        partial_trace(M, (2, 2, 2), [0])


def test_zero_generator_is_identity():
    np.testing.assert_allclose(unitary_from_generator(np.zeros(16)), np.eye(4))


def test_generator_layout():
    h = np.array([1.0, -2.0, 0.5, 0.25])
    H = hermitian_from_generator(h)
    np.testing.assert_allclose(H, [[1.0, 0.5 + 0.25j], [0.5 - 0.25j, -2.0]])
    with pytest.raises(DimensionError):
        hermitian_from_generator(np.zeros(9))


def test_random_generator_gives_unitary(rng):
    U = unitary_from_generator(rng.normal(size=64))
    np.testing.assert_allclose(U.conj().T @ U, np.eye(8), atol=1e-12)


def test_generator_from_unitary_recovers_unitary(rng):
    for U in (random_unitary(rng, 4), swap_operator(2), -np.eye(2)):
        np.testing.assert_allclose(
            unitary_from_generator(generator_from_unitary(U)), U, atol=1e-10
        )


def test_embedded_generator_is_block_identity(rng):
    h = rng.normal(size=16)
    U_small = unitary_from_generator(h)
    U_big = unitary_from_generator(embed_generator(h, 8))
    np.testing.assert_allclose(U_big[:4, :4], U_small, atol=1e-12)
    np.testing.assert_allclose(U_big[4:, 4:], np.eye(4), atol=1e-12)
    np.testing.assert_allclose(U_big[:4, 4:], 0.0, atol=1e-12)


def test_singular_values(rng):
    np.testing.assert_allclose(singular_values(random_unitary(rng, 4)), np.ones(4), atol=1e-12)
    a, b = rng.normal(size=3), rng.normal(size=5)
    s = singular_values(np.outer(a, b))
    assert abs(s[0] - np.linalg.norm(a) * np.linalg.norm(b)) < 1e-12
    assert np.all(s[1:] < 1e-14 * s[0])


def test_swap_operator_exchanges_factors(rng):
    A = random_hermitian(rng, 2)
    B = random_hermitian(rng, 2)
    P = swap_operator(2)
    np.testing.assert_allclose(P @ kron(A, B) @ P, kron(B, A), atol=1e-12)
