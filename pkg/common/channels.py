"""Kraus channels, local application to bipartite states and Stinespring dilation."""

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np
import numpy.typing as npt

from common.errors import DimensionError
from common.linalg import (
    ComplexMatrix,
    hadamard,
    pauli_matrices,
    swap_operator,
    unitary_from_generator,
)
from common.states import DensityMatrix, Seed, make_rng
from common.utils import Config


@dataclass(frozen=True, eq=False)
class KrausChannel:
    """CPTP map given by Kraus operators satisfying sum E_i^dagger E_i = 1."""

    kraus_ops: Tuple[ComplexMatrix, ...]

    def __post_init__(self) -> None:
        ops = tuple(np.asarray(op, dtype=complex) for op in self.kraus_ops)
        if not ops:
            raise DimensionError("a channel needs at least one Kraus operator")
        n = ops[0].shape[0]
        if any(op.shape != (n, n) for op in ops):
            raise DimensionError("Kraus operators must all be n x n")
        completeness = sum(op.conj().T @ op for op in ops)
        error = float(np.max(np.abs(completeness - np.eye(n))))
        if error > Config.KRAUS_TOL:
            raise DimensionError(f"Kraus completeness violated by {error:.3e}")
        object.__setattr__(self, "kraus_ops", ops)

    @property
    def rank(self) -> int:
        return len(self.kraus_ops)

    @property
    def dim(self) -> int:
        return self.kraus_ops[0].shape[0]

    def stack(self) -> np.ndarray:
        return np.stack(self.kraus_ops)

    def apply(self, matrix: npt.ArrayLike) -> ComplexMatrix:
        """Action on an operator of the channel's own dimension."""
        K = self.stack()
        return np.einsum("kab,bc,kdc->ad", K, np.asarray(matrix, dtype=complex), K.conj())


@dataclass(frozen=True)
class LocalChannelPair:
    """E = E_A (x) E_B."""

    channel_a: KrausChannel
    channel_b: KrausChannel


def _apply_on_factor(
    matrix: ComplexMatrix, dims: Tuple[int, ...], index: int, kraus: np.ndarray
) -> ComplexMatrix:
    n = len(dims)
    tensor = matrix.reshape(dims + dims)
    tensor = np.moveaxis(tensor, [index, n + index], [0, 1])
    out = np.einsum("kab,bc...,kdc->ad...", kraus, tensor, kraus.conj())
    out = np.moveaxis(out, [0, 1], [index, n + index])
    side = matrix.shape[0]
    return out.reshape(side, side)


def apply_local(pair: LocalChannelPair, rho: DensityMatrix) -> DensityMatrix:
    """rho' = sum_ij (A_i (x) B_j) rho (A_i (x) B_j)^dagger."""
    dims = rho.bipartite_dims
    if (pair.channel_a.dim, pair.channel_b.dim) != dims:
        raise DimensionError(
            f"channel dims {(pair.channel_a.dim, pair.channel_b.dim)} "
            f"do not match state dims {dims}"
        )
    out = _apply_on_factor(rho.matrix, dims, 0, pair.channel_a.stack())
    out = _apply_on_factor(out, dims, 1, pair.channel_b.stack())
    return DensityMatrix.normalized(out, dims)


def apply_one_side(
    channel: KrausChannel, rho: DensityMatrix, side: str = "A"
) -> DensityMatrix:
    d_a, d_b = rho.bipartite_dims
    identity_a = identity_channel(d_a)
    identity_b = identity_channel(d_b)
    if side == "A":
        return apply_local(LocalChannelPair(channel, identity_b), rho)
    if side == "B":
        return apply_local(LocalChannelPair(identity_a, channel), rho)
    raise ValueError(f"side must be 'A' or 'B', got {side!r}")


def identity_channel(n: int) -> KrausChannel:
    return KrausChannel((np.eye(n, dtype=complex),))


def unitary_channel(U: npt.ArrayLike) -> KrausChannel:
    return KrausChannel((np.asarray(U, dtype=complex),))


def amplitude_damping(p: float) -> KrausChannel:
    """E_0 = |0><0| + sqrt(1-p)|1><1|, E_1 = sqrt(p)|0><1|."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"damping probability must lie in [0, 1], got {p}")
    e0 = np.array([[1, 0], [0, math.sqrt(1 - p)]], dtype=complex)
    e1 = np.array([[0, math.sqrt(p)], [0, 0]], dtype=complex)
    return KrausChannel((e0, e1))


def damping_probability(gamma_t: float) -> float:
    """p = 1 - exp(-Gamma t)."""
    if gamma_t < 0:
        raise ValueError(f"Gamma t must be non-negative, got {gamma_t}")
    return 1.0 - math.exp(-gamma_t)


def amplitude_damping_at(gamma_t: float) -> KrausChannel:
    return amplitude_damping(damping_probability(gamma_t))


def depolarizing(p: float) -> KrausChannel:
    """Qubit depolarizing channel; p = 1 maps every state to 1/2."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"depolarizing probability must lie in [0, 1], got {p}")
    ops = [math.sqrt(1 - 3 * p / 4) * np.eye(2, dtype=complex)]
    ops += [math.sqrt(p / 4) * sigma for sigma in pauli_matrices()]
    return KrausChannel(tuple(ops))


def channel_from_unitary(U: npt.ArrayLike, ancilla_dim: int) -> KrausChannel:
    """
    Kraus operators E_k[i, j] = <k, i| U |0, j> for an ancilla prepared in |0>.

    The joint space is ordered ancilla (x) system. Operators with Frobenius
    norm below ``Config.KRAUS_PRUNE`` are dropped.
    """
    U = np.asarray(U, dtype=complex)
    side = U.shape[0]
    if ancilla_dim < 1 or side % ancilla_dim:
        raise DimensionError(f"ancilla dim {ancilla_dim} does not divide side {side}")
    n = side // ancilla_dim
    blocks = U.reshape(ancilla_dim, n, ancilla_dim, n)[:, :, 0, :]
    kept = [E for E in blocks if np.linalg.norm(E) >= Config.KRAUS_PRUNE]
    return KrausChannel(tuple(kept) if kept else (blocks[0],))


def dilate(params: npt.ArrayLike, ancilla_dim: int) -> KrausChannel:
    """Channel of rank at most ``ancilla_dim`` from a joint unitary generator."""
    return channel_from_unitary(unitary_from_generator(params), ancilla_dim)


def local_unitary_pair(
    params_a: npt.ArrayLike, params_b: npt.ArrayLike
) -> LocalChannelPair:
    return LocalChannelPair(
        unitary_channel(unitary_from_generator(params_a)),
        unitary_channel(unitary_from_generator(params_b)),
    )


def random_channel(n: int, rank: int, seed: Seed = None) -> KrausChannel:
    """Channel of Kraus rank <= ``rank`` from a random dilation unitary."""
    rng = make_rng(seed)
    side = n * rank
    params = rng.normal(scale=math.pi / 2, size=side * side)
    return dilate(params, rank)


def hidden_quantumness_unitary() -> ComplexMatrix:
    """
    Controlled-Hadamard after swap on ancilla (x) system.

    Maps |0>_anc|j>_sys to |j>_anc|0>_sys and then, if the ancilla is 1,
    rotates the system to |+>.
    """
    swap = swap_operator(2)
    controlled_h = np.eye(4, dtype=complex)
    controlled_h[2:, 2:] = hadamard()
    return controlled_h @ swap


def hidden_quantumness_pair() -> LocalChannelPair:
    channel = channel_from_unitary(hidden_quantumness_unitary(), 2)
    return LocalChannelPair(channel, channel)


