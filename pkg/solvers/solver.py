from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Sequence

import numpy as np
from scipy.optimize import minimize

from common.utils import OptimizerConfig, get_logger

logger = get_logger(__name__)


class SolutionStatus(Enum):
    """Enum for solution status."""

    CONVERGED = "converged"  # Every start met the simplex tolerance
    PARTIAL = "partial"  # Some starts hit the evaluation budget
    UNCONVERGED = "unconverged"  # No start converged


@dataclass
class PotentialResult:
    """Best value of a maximization over a parameter vector."""

    value: float
    best_params: np.ndarray
    evaluations: int
    starts_converged: int
    starts: int = 1
    status: SolutionStatus = SolutionStatus.CONVERGED
    start_values: List[float] = field(default_factory=list)

    def __str__(self) -> str:
        """Convert the result to a one-line summary."""
        return (
            f"value = {self.value:.6f} bits ({self.starts_converged}/{self.starts} "
            f"starts converged, {self.evaluations} evaluations, {self.status.value})"
        )


class Solver(ABC):
    """
    Abstract base class for multi-start Nelder-Mead maximizers.

    Subclasses define the objective over a real parameter vector and the
    vector that encodes "do nothing". The identity start is always tried
    first when enabled, so the result never falls below the objective at
    the identity.
    """

    def __init__(
        self,
        config: Optional[OptimizerConfig] = None,
        anchors: Sequence[np.ndarray] = (),
    ):
        """
        Initialize solver with optimizer settings.

        Args:
            config: restart, tolerance and budget settings
            anchors: extra deterministic starts (e.g. a known good point) that
                are also re-checked when the final value is reported
        """
        self.config = config or OptimizerConfig()
        self.anchors = [np.asarray(a, dtype=float) for a in anchors]

    @property
    @abstractmethod
    def dimension(self) -> int:
        """Length of the parameter vector."""

    @abstractmethod
    def objective(self, params: np.ndarray) -> float:
        """Value to maximize during the search."""

    def final_objective(self, params: np.ndarray) -> float:
        """Value reported for the winning parameters; defaults to the objective."""
        return self.objective(params)

    def identity_params(self) -> np.ndarray:
        return np.zeros(self.dimension)

    def starting_points(self) -> List[np.ndarray]:
        """Identity, then ``restarts`` - 1 Gaussian starts drawn from the seed, then anchors."""
        cfg = self.config
        rng = np.random.default_rng(cfg.seed)
        starts = []
        if cfg.include_identity_start:
            starts.append(self.identity_params())
        while len(starts) < cfg.restarts:
            starts.append(rng.normal(scale=cfg.start_scale, size=self.dimension))
        return starts + self.anchors

    def _initial_simplex(self, x0: np.ndarray) -> np.ndarray:
        simplex = np.tile(x0, (self.dimension + 1, 1))
        simplex[1:] += self.config.simplex_step * np.eye(self.dimension)
        return simplex

    def run_start(self, x0: np.ndarray):
        """One Nelder-Mead run; returns the scipy result (minimizing -objective)."""
        cfg = self.config
        return minimize(
            lambda x: -self.objective(x),
            x0,
            method="Nelder-Mead",
            options={
                "xatol": cfg.simplex_tolerance,
                "fatol": cfg.simplex_tolerance,
                "maxfev": cfg.max_evals,
                "initial_simplex": self._initial_simplex(x0),
            },
        )

    def solve(self) -> PotentialResult:
        """
        Run every start and keep the best.

        Ties keep the first start found. The winner, the identity and every
        anchor are re-evaluated with ``final_objective``; the largest is reported.
        """
        best_value = -np.inf
        best_params = None
        evaluations = 0
        converged = 0
        start_values = []

        starts = self.starting_points()
        for index, x0 in enumerate(starts):
            res = self.run_start(x0)
            value = -float(res.fun)
            evaluations += int(res.nfev)
            converged += int(bool(res.success))
            start_values.append(value)
            logger.debug(
                "start %d/%d: value %.6f after %d evaluations (%s)",
                index + 1,
                len(starts),
                value,
                res.nfev,
                "converged" if res.success else "budget exhausted",
            )
            if value > best_value:
                best_value = value
                best_params = np.asarray(res.x, dtype=float)

        final_value = self.final_objective(best_params)
        checkpoints = list(self.anchors)
        if self.config.include_identity_start:
            checkpoints.insert(0, self.identity_params())
        for point in checkpoints:
            baseline = self.final_objective(point)
            if baseline > final_value:
                final_value, best_params = baseline, point

        if converged == len(starts):
            status = SolutionStatus.CONVERGED
        elif converged:
            status = SolutionStatus.PARTIAL
        else:
            status = SolutionStatus.UNCONVERGED

        return PotentialResult(
            value=final_value,
            best_params=best_params,
            evaluations=evaluations,
            starts_converged=converged,
            starts=len(starts),
            status=status,
            start_values=start_values,
        )
