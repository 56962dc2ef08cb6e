"""Discord over a one-parameter channel family, and the fine-grained reduction scan."""

from dataclasses import dataclass
from typing import Callable, Dict, Optional, Sequence, Tuple

from common.channels import KrausChannel, apply_one_side
from common.errors import DimensionError
from common.states import DensityMatrix
from common.utils import get_logger
from measures import Measure, discord_value

logger = get_logger(__name__)

ChannelFamily = Callable[[float], KrausChannel]


@dataclass(frozen=True)
class RestrictedSweep:
    """Measure value after each channel of the family, in sweep order."""

    points: Tuple[Tuple[float, float], ...]

    @property
    def argmax(self) -> float:
        # First parameter reaching the maximum
        return max(self.points, key=lambda point: point[1])[0]

    @property
    def max(self) -> float:
        return max(value for _, value in self.points)

    def __iter__(self):
        return iter(self.points)

    def __len__(self) -> int:
        return len(self.points)


def potential_discord_restricted(
    rho: DensityMatrix,
    family: ChannelFamily,
    sweep: Sequence[float],
    side: str = "A",
    evaluate: Optional[Measure] = None,
) -> RestrictedSweep:
    """
    Apply ``family(p)`` on one side for every p in ``sweep`` and evaluate.

    ``evaluate`` defaults to the discord; passing a PD evaluator instead ranks
    the post-channel states by their own potential.
    """
    evaluate = evaluate or discord_value
    points = []
    for p in sweep:
        value = evaluate(apply_one_side(family(p), rho, side))
        logger.debug("restricted sweep p = %.4f: %.6f", p, value)
        points.append((float(p), float(value)))
    if not points:
        raise ValueError("sweep is empty")
    return RestrictedSweep(tuple(points))


@dataclass(frozen=True)
class ReductionResult:
    """Best single-factor reduction: factor indices (A factor, B factor) into ``dims``."""

    pair: Tuple[int, int]
    value: float
    values: Dict[Tuple[int, int], float]


def reduction_scan(rho: DensityMatrix, q: Measure = discord_value) -> ReductionResult:
    """
    Evaluate q on every reduction rho^{A_i B_j} to one factor per side.

    Ties keep the first pair in (i, j) order.
    """
    cut = rho.cut
    a_factors = range(cut)
    b_factors = range(cut, len(rho.dims))
    if len(a_factors) < 2 and len(b_factors) < 2:
        raise DimensionError(f"state with dims {rho.dims} has no composite side")

    values: Dict[Tuple[int, int], float] = {}
    for i in a_factors:
        for j in b_factors:
            values[(i, j)] = float(q(rho.marginal([i, j])))
    pair = max(values, key=values.get)
    return ReductionResult(pair=pair, value=values[pair], values=values)
