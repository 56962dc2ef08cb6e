"""
Potential quantumness PQ^d and potential discord PD.

PQ^d maximizes a correlation measure over local operations of Kraus rank
at most d. Each side's operation is the Stinespring dilation of a unitary on
ancilla (x) system with the ancilla prepared in |0>; the search runs over the
concatenated Hermitian generators of both unitaries.
"""

from typing import Dict, Optional, Sequence

import numpy as np

from common.channels import LocalChannelPair, apply_local, dilate
from common.errors import InvariantViolation, UnsupportedAncillaError
from common.linalg import embed_generator, generator_length
from common.states import DensityMatrix
from common.utils import INNER_MEASUREMENT_REFINE, Config, OptimizerConfig, get_logger
from measures import Measure, discord, get_measure, mutual_information
from solvers.solver import PotentialResult, Solver

logger = get_logger(__name__)


def _effective_ancilla(d: int) -> int:
    if d not in Config.ANCILLA_DIMS:
        raise UnsupportedAncillaError(
            f"ancilla dimension {d} not supported; choose from {Config.ANCILLA_DIMS}"
        )
    # d = 0 and d = 1 both mean local unitaries on the bare subsystems
    return max(d, 1)


class PotentialSolver(Solver):
    """Maximize q(E_A (x) E_B [rho]) over dilated local channels of rank <= d."""

    def __init__(
        self,
        rho: DensityMatrix,
        ancilla_dim: int,
        measure: Measure,
        config: Optional[OptimizerConfig] = None,
        final_measure: Optional[Measure] = None,
        anchors: Sequence[np.ndarray] = (),
    ):
        super().__init__(config, anchors)
        self.rho = rho.bipartite()
        self.ancilla_dim = _effective_ancilla(ancilla_dim)
        self.measure = measure
        self.final_measure = final_measure or measure
        d_a, d_b = self.rho.bipartite_dims
        self.length_a = generator_length(self.ancilla_dim * d_a)
        self.length_b = generator_length(self.ancilla_dim * d_b)

    @property
    def dimension(self) -> int:
        return self.length_a + self.length_b

    def channels(self, params: np.ndarray) -> LocalChannelPair:
        params = np.asarray(params, dtype=float)
        return LocalChannelPair(
            dilate(params[: self.length_a], self.ancilla_dim),
            dilate(params[self.length_a :], self.ancilla_dim),
        )

    def lift(self, params: np.ndarray, ancilla_dim: int) -> np.ndarray:
        """
        Re-express parameters found at a smaller ancilla as parameters here.

        Each side's unitary becomes U (+) 1 on the larger ancilla (x) system
        space. The extra ancilla levels are never populated from |0>, so the
        channel is unchanged.
        """
        source = _effective_ancilla(ancilla_dim)
        if source > self.ancilla_dim:
            raise UnsupportedAncillaError(
                f"cannot lift ancilla {source} parameters into ancilla {self.ancilla_dim}"
            )
        d_a, d_b = self.rho.bipartite_dims
        params = np.asarray(params, dtype=float)
        split = generator_length(source * d_a)
        return np.concatenate(
            [
                embed_generator(params[:split], self.ancilla_dim * d_a),
                embed_generator(params[split:], self.ancilla_dim * d_b),
            ]
        )

    def transformed(self, params: np.ndarray) -> DensityMatrix:
        return apply_local(self.channels(params), self.rho)

    def objective(self, params: np.ndarray) -> float:
        return self.measure(self.transformed(params))

    def final_objective(self, params: np.ndarray) -> float:
        return self.final_measure(self.transformed(params))


def potential_q(
    rho: DensityMatrix,
    d: int,
    q: Measure,
    cfg: Optional[OptimizerConfig] = None,
    final_q: Optional[Measure] = None,
) -> PotentialResult:
    """
    PQ^d(rho) = max over E in LO(d) of q(E[rho]).

    The value is the best found over all starts, a lower bound on the true
    supremum that never falls below q(rho) when the identity start is on.
    """
    solver = PotentialSolver(rho, d, q, cfg, final_q)
    result = solver.solve()
    logger.debug("PQ^%d: %s", d, result)
    return result


def potential_q_ladder(
    rho: DensityMatrix,
    ancilla_dims: Sequence[int],
    q: Measure,
    cfg: Optional[OptimizerConfig] = None,
    final_q: Optional[Measure] = None,
) -> Dict[int, PotentialResult]:
    """
    PQ^d for increasing d, each search seeded with the previous optimum.

    The lifted optimum is an anchor of the next search, so the reported
    values are non-decreasing in d.
    """
    results: Dict[int, PotentialResult] = {}
    previous = None
    for d in sorted(set(ancilla_dims)):
        solver = PotentialSolver(rho, d, q, cfg, final_q)
        if previous is not None:
            prev_d, prev_result = previous
            solver.anchors = [solver.lift(prev_result.best_params, prev_d)]
        result = solver.solve()
        logger.debug("PQ^%d (ladder): %s", d, result)
        results[d] = result
        previous = (d, result)
    return results


def max_potential_q(
    rho: DensityMatrix, q: Measure, cfg: Optional[OptimizerConfig] = None
) -> PotentialResult:
    """mPQ: PQ at ancilla dimension d_max^2, where every local operation fits."""
    d_max = max(rho.bipartite_dims)
    return potential_q(rho, d_max * d_max, q, cfg)


def _coarse_discord(rho: DensityMatrix) -> float:
    return discord(
        rho, grid=Config.INNER_DISCORD_GRID, refine=INNER_MEASUREMENT_REFINE
    ).discord


def _final_discord(rho: DensityMatrix) -> float:
    return discord(rho, grid=Config.DISCORD_GRID).discord


def potential_discord(
    rho: DensityMatrix,
    d: int = Config.DEFAULT_ANCILLA,
    cfg: Optional[OptimizerConfig] = None,
    slack: float = 1e-6,
) -> PotentialResult:
    """
    PD(rho) = max over E in LO(d) of delta(E[rho]).

    The search uses the coarse inner measurement grid; the winner is
    re-evaluated on the full grid. Raises InvariantViolation unless
    delta(rho) <= PD <= I(rho) within ``slack``.
    """
    result = potential_q(rho, d, _coarse_discord, cfg, final_q=_final_discord)
    check_order(rho, result.value, slack)
    return result


def check_order(rho: DensityMatrix, value: float, slack: float = 1e-6) -> None:
    """delta(rho) <= value <= I(rho)."""
    lower = _final_discord(rho)
    upper = mutual_information(rho)
    if value < lower - slack or value > upper + slack:
        raise InvariantViolation(
            f"potential discord {value:.8f} outside [QD, I] = [{lower:.8f}, {upper:.8f}]"
        )


def measure_from_name(name: str) -> Measure:
    """Registry lookup that maps "discord" to the coarse inner evaluation."""
    if name == "discord":
        return _coarse_discord
    return get_measure(name)


def potential_discord_ladder(
    rho: DensityMatrix,
    ancilla_dims: Sequence[int],
    cfg: Optional[OptimizerConfig] = None,
    slack: float = 1e-6,
) -> Dict[int, PotentialResult]:
    """PD at several ancilla dimensions, warm-started upward and order-checked."""
    results = potential_q_ladder(
        rho, ancilla_dims, _coarse_discord, cfg, final_q=_final_discord
    )
    for result in results.values():
        check_order(rho, result.value, slack)
    return results
