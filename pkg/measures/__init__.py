from typing import Callable, Dict

from common.states import DensityMatrix

from .discord import (
    DiscordResult,
    MeasurementBasis,
    classical_correlation,
    discord,
    discord_value,
    entropy_of_entanglement,
)
from .entanglement import concurrence, entanglement_of_formation
from .entropy import (
    binary_entropy,
    conditional_entropy,
    mutual_information,
    von_neumann_entropy,
)
from .witness import CorrelationRank, correlation_matrix, correlation_rank, hermitian_basis

Measure = Callable[[DensityMatrix], float]

MEASURES: Dict[str, Measure] = {
    "discord": discord_value,
    "mutual_information": mutual_information,
    "eof": entanglement_of_formation,
    "concurrence": concurrence,
}


def get_measure(name: str) -> Measure:
    try:
        return MEASURES[name]
    except KeyError:
        raise ValueError(
            f"unknown measure {name!r}; choose from {sorted(MEASURES)}"
        ) from None


__all__ = [
    "Measure",
    "MEASURES",
    "get_measure",
    "DiscordResult",
    "MeasurementBasis",
    "classical_correlation",
    "discord",
    "discord_value",
    "entropy_of_entanglement",
    "concurrence",
    "entanglement_of_formation",
    "binary_entropy",
    "conditional_entropy",
    "mutual_information",
    "von_neumann_entropy",
    "CorrelationRank",
    "correlation_matrix",
    "correlation_rank",
    "hermitian_basis",
]
