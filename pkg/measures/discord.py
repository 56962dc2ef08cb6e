"""
Quantum discord with projective measurements on a qubit.

The measured side (A by default) must be a qubit. The inner maximization of
the post-measurement mutual information runs an exhaustive (theta, phi) grid
over the Bloch sphere and then a Nelder-Mead refinement from the best grid
point.
"""

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy.optimize import minimize

from common.errors import DimensionError
from common.linalg import ComplexMatrix, eigvals_hermitian_batch, pauli_matrices
from common.states import DensityMatrix
from common.utils import MEASUREMENT_REFINE, Config, OptimizerConfig, get_logger
from measures.entropy import entropy_batch, mutual_information, von_neumann_entropy

logger = get_logger(__name__)


@dataclass(frozen=True)
class MeasurementBasis:
    """Rank-1 projective qubit measurement along the Bloch direction (theta, phi)."""

    theta: float
    phi: float

    def __post_init__(self) -> None:
        if not -1e-12 <= self.theta <= math.pi + 1e-12:
            raise ValueError(f"theta must lie in [0, pi], got {self.theta}")
        if not -1e-12 <= self.phi < 2 * math.pi + 1e-12:
            raise ValueError(f"phi must lie in [0, 2pi), got {self.phi}")

    @classmethod
    def from_bloch(cls, n: np.ndarray) -> "MeasurementBasis":
        n = np.asarray(n, dtype=float)
        n = n / np.linalg.norm(n)
        theta = math.acos(float(np.clip(n[2], -1.0, 1.0)))
        phi = math.atan2(float(n[1]), float(n[0])) % (2 * math.pi)
        return cls(theta, phi)

    @classmethod
    def computational(cls) -> "MeasurementBasis":
        return cls(0.0, 0.0)

    def bloch_vector(self) -> np.ndarray:
        return _bloch(np.array(self.theta), np.array(self.phi))

    def projectors(self) -> Tuple[ComplexMatrix, ComplexMatrix]:
        """Pi_+- = (1 +- n.sigma)/2."""
        n_sigma = sum(n_k * s for n_k, s in zip(self.bloch_vector(), pauli_matrices()))
        identity = np.eye(2, dtype=complex)
        return 0.5 * (identity + n_sigma), 0.5 * (identity - n_sigma)


@dataclass(frozen=True)
class DiscordResult:
    discord: float
    mutual_information: float
    optimal_basis: MeasurementBasis
    classical_correlations: float

    def __str__(self) -> str:
        return (
            f"QD = {self.discord:.6f} bits (I = {self.mutual_information:.6f}, "
            f"J = {self.classical_correlations:.6f}, "
            f"theta = {self.optimal_basis.theta:.4f}, phi = {self.optimal_basis.phi:.4f})"
        )


def _bloch(theta: np.ndarray, phi: np.ndarray) -> np.ndarray:
    return np.stack(
        [np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)],
        axis=-1,
    )


class _ConditionalModel:
    """
    Precomputed pieces of rho for qubit measurements on side A.

    For Pi_+- = (1 +- n.sigma)/2 the unnormalized conditional states on B are
    (rho_B +- sum_k n_k T_k)/2 with T_k = Tr_A[(sigma_k (x) 1) rho].
    """

    def __init__(self, rho: DensityMatrix):
        d_a, d_b = rho.bipartite_dims
        tensor = rho.matrix.reshape(d_a, d_b, d_a, d_b)
        self.rho_b = np.einsum("abad->bd", tensor)
        self.T = np.stack(
            [np.einsum("ca,abcd->bd", sigma, tensor) for sigma in pauli_matrices()]
        )
        w = eigvals_hermitian_batch(self.rho_b)
        self.entropy_b = float(entropy_batch(w))

    def classical_information(self, n: np.ndarray) -> np.ndarray:
        """I(Pi[rho]) = S(B) - sum_+- p_+- S(rho_B|+-) for Bloch vectors n (..., 3)."""
        nT = np.einsum("...k,kij->...ij", n, self.T)
        total = np.zeros(n.shape[:-1])
        for sign in (1.0, -1.0):
            block = 0.5 * (self.rho_b + sign * nT)
            w = np.clip(eigvals_hermitian_batch(block), 0.0, None)
            p = w.sum(axis=-1)
            with np.errstate(divide="ignore", invalid="ignore"):
                plogp = np.where(p > 0, p * np.log2(np.where(p > 0, p, 1.0)), 0.0)
            # p S(block/p) = H(w) + p log p
            total += entropy_batch(w) + plogp
        return self.entropy_b - total


def classical_correlation(rho: DensityMatrix, basis: MeasurementBasis) -> float:
    """Mutual information after measuring side A in ``basis``."""
    model = _ConditionalModel(_measured_view(rho, "A"))
    return float(model.classical_information(basis.bloch_vector()))


def _measured_view(rho: DensityMatrix, measured: str) -> DensityMatrix:
    view = rho.bipartite()
    if measured == "B":
        view = view.swap()
    elif measured != "A":
        raise ValueError(f"measured side must be 'A' or 'B', got {measured!r}")
    if view.bipartite_dims[0] != 2:
        raise DimensionError(
            f"measured side has dimension {view.bipartite_dims[0]}; only qubits are supported"
        )
    return view


def discord(
    rho: DensityMatrix,
    grid: int = Config.DISCORD_GRID,
    refine: Optional[OptimizerConfig] = MEASUREMENT_REFINE,
    measured: str = "A",
) -> DiscordResult:
    """
    delta(rho) = I(rho) - max_Pi I(Pi[rho]).

    Args:
        rho: bipartite state whose measured side is a qubit
        grid: points per angle in the exhaustive search (>= 16)
        refine: simplex settings for the local refinement, or None to skip it
        measured: "A" or "B"
    """
    if grid < Config.MIN_DISCORD_GRID:
        raise ValueError(f"grid must be >= {Config.MIN_DISCORD_GRID}, got {grid}")
    view = _measured_view(rho, measured)
    model = _ConditionalModel(view)
    info = mutual_information(view)

    thetas = np.linspace(0.0, math.pi, grid)
    phis = np.linspace(0.0, 2 * math.pi, grid, endpoint=False)
    tt, pp = np.meshgrid(thetas, phis, indexing="ij")
    values = model.classical_information(_bloch(tt, pp))
    best = int(np.argmax(values))
    i, j = np.unravel_index(best, values.shape)
    best_angles = np.array([thetas[i], phis[j]])
    best_value = float(values[i, j])

    if refine is not None:
        step = refine.simplex_step
        simplex = np.array(
            [best_angles, best_angles + [step, 0.0], best_angles + [0.0, step]]
        )
        res = minimize(
            lambda x: -float(model.classical_information(_bloch(x[0], x[1]))),
            best_angles,
            method="Nelder-Mead",
            options={
                "xatol": refine.simplex_tolerance,
                "fatol": 1e-14,
                "maxiter": refine.max_evals,
                "initial_simplex": simplex,
            },
        )
        if -res.fun > best_value:
            best_value = float(-res.fun)
            best_angles = np.asarray(res.x, dtype=float)

    basis = MeasurementBasis.from_bloch(_bloch(best_angles[0], best_angles[1]))
    classical = min(best_value, info)
    delta = max(0.0, info - classical)
    logger.debug("discord %.8f (I=%.8f, grid=%d)", delta, info, grid)
    return DiscordResult(
        discord=delta,
        mutual_information=info,
        optimal_basis=basis,
        classical_correlations=info - delta,
    )


def discord_value(rho: DensityMatrix, grid: int = Config.DISCORD_GRID) -> float:
    return discord(rho, grid=grid).discord


def entropy_of_entanglement(rho: DensityMatrix) -> float:
    """S(rho_A), the pure-state value shared by discord and PD."""
    return von_neumann_entropy(rho.marginal_a())
