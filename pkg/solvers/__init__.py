from .solver import PotentialResult, SolutionStatus, Solver
from .potential import (
    PotentialSolver,
    check_order,
    max_potential_q,
    measure_from_name,
    potential_discord,
    potential_discord_ladder,
    potential_q,
    potential_q_ladder,
)
from .global_unitary import (
    GlobalUnitaryResult,
    GlobalUnitarySolver,
    max_discord_global_unitary,
)
from .restricted import (
    ReductionResult,
    RestrictedSweep,
    potential_discord_restricted,
    reduction_scan,
)

__all__ = [
    "Solver",
    "PotentialResult",
    "SolutionStatus",
    "PotentialSolver",
    "potential_q",
    "potential_q_ladder",
    "max_potential_q",
    "potential_discord",
    "potential_discord_ladder",
    "check_order",
    "measure_from_name",
    "GlobalUnitaryResult",
    "GlobalUnitarySolver",
    "max_discord_global_unitary",
    "RestrictedSweep",
    "ReductionResult",
    "potential_discord_restricted",
    "reduction_scan",
]
