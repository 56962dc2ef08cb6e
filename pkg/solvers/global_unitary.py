"""
Discord maximization over global unitaries on a two-qubit state.

Unlike PQ^d, the unitary here acts jointly on A and B, so only the spectrum
of the input is fixed. The optimum depends on the mixedness alone for
pseudo-pure inputs, which reach the isotropic state of the same spectrum.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from common.errors import DimensionError
from common.linalg import generator_length, unitary_from_generator
from common.states import DensityMatrix
from common.utils import INNER_MEASUREMENT_REFINE, Config, OptimizerConfig, get_logger
from measures import discord, von_neumann_entropy
from solvers.solver import PotentialResult, Solver

logger = get_logger(__name__)


@dataclass
class GlobalUnitaryResult(PotentialResult):
    """PotentialResult plus the quantities a spectrum-vs-discord plot needs."""

    input_entropy: float = 0.0
    original_discord: float = 0.0

    def __str__(self) -> str:
        return (
            f"{super().__str__()}; S = {self.input_entropy:.6f}, "
            f"QD before = {self.original_discord:.6f}"
        )


class GlobalUnitarySolver(Solver):
    """Maximize delta(U rho U^dagger) over U in U(4)."""

    def __init__(self, rho: DensityMatrix, config: Optional[OptimizerConfig] = None):
        super().__init__(config)
        view = rho.bipartite()
        if view.bipartite_dims != (2, 2):
            raise DimensionError(f"expected a two-qubit state, got dims {view.dims}")
        self.rho = view

    @property
    def dimension(self) -> int:
        return generator_length(self.rho.side)

    def transformed(self, params: np.ndarray) -> DensityMatrix:
        return self.rho.conjugate(unitary_from_generator(params))

    def objective(self, params: np.ndarray) -> float:
        return discord(
            self.transformed(params),
            grid=Config.INNER_DISCORD_GRID,
            refine=INNER_MEASUREMENT_REFINE,
        ).discord

    def final_objective(self, params: np.ndarray) -> float:
        return discord(self.transformed(params), grid=Config.DISCORD_GRID).discord


def max_discord_global_unitary(
    rho: DensityMatrix, cfg: Optional[OptimizerConfig] = None
) -> GlobalUnitaryResult:
    solver = GlobalUnitarySolver(rho, cfg)
    found = solver.solve()
    result = GlobalUnitaryResult(
        value=found.value,
        best_params=found.best_params,
        evaluations=found.evaluations,
        starts_converged=found.starts_converged,
        starts=found.starts,
        status=found.status,
        start_values=found.start_values,
        input_entropy=von_neumann_entropy(solver.rho),
        original_discord=discord(solver.rho).discord,
    )
    logger.debug("global-unitary discord: %s", result)
    return result
