"""Single-state inspection behind ``qlab inspect``."""

from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Union

from common.errors import ConfigError, DimensionError
from common.states import DensityMatrix, family_point, is_classical, is_product, load_state
from common.utils import ColoredText, Config, OptimizerConfig, get_logger
from measures import (
    CorrelationRank,
    DiscordResult,
    correlation_rank,
    discord,
    entanglement_of_formation,
    mutual_information,
    von_neumann_entropy,
)
from solvers import PotentialResult, potential_discord_ladder

logger = get_logger(__name__)


@dataclass(frozen=True)
class InspectionReport:
    dims: tuple
    entropy: float
    entropy_a: float
    entropy_b: float
    mutual_information: float
    discord: Optional[DiscordResult]
    eof: Optional[float]
    rank: CorrelationRank
    ancilla_dim: int
    measured_side: Optional[str]
    potential_discord: Optional[PotentialResult]
    mpq_ancilla_dim: int
    max_potential_discord: Optional[PotentialResult]
    product: bool
    classical: bool


def load_inspection_state(
    state_file: Optional[Union[str, Path]] = None,
    family: Optional[str] = None,
    parameter: Optional[float] = None,
) -> DensityMatrix:
    """State from a file or from a family tag and parameter (default 0)."""
    if (state_file is None) == (family is None):
        raise ConfigError("inspect needs exactly one of --state-file or --family")
    if state_file is not None:
        return load_state(state_file)
    try:
        return family_point(family, 0.0 if parameter is None else parameter).state
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def mpq_ancilla(rho: DensityMatrix) -> int:
    """d_max^2, capped so each dilated side stays within the supported size."""
    d_max = max(rho.bipartite_dims)
    fitting = [
        d
        for d in Config.ANCILLA_DIMS
        if d <= d_max * d_max and max(d, 1) * d_max <= Config.MAX_SIDE
    ]
    return max(fitting)


def measured_side(rho: DensityMatrix) -> Optional[str]:
    """Side discord can measure: A when it is a qubit, else B, else neither."""
    d_a, d_b = rho.bipartite_dims
    if d_a == 2:
        return "A"
    if d_b == 2:
        return "B"
    return None


def inspect_state(
    rho: DensityMatrix, ancilla_dim: int, cfg: Optional[OptimizerConfig] = None
) -> InspectionReport:
    view = rho.bipartite()
    try:
        eof = entanglement_of_formation(view)
    except DimensionError:
        eof = None
    mpq_d = mpq_ancilla(view)
    side = measured_side(view)
    qd: Optional[DiscordResult] = None
    pd: Optional[PotentialResult] = None
    mpq: Optional[PotentialResult] = None
    if side is None:
        logger.info("no qubit side in %s state; skipping discord", view.bipartite_dims)
    else:
        qd = discord(view, measured=side)
        # Local channels act on both sides, so PD measured on B is PD of the swap.
        oriented = view if side == "A" else view.swap()
        ladder = potential_discord_ladder(oriented, (ancilla_dim, mpq_d), cfg)
        pd, mpq = ladder[ancilla_dim], ladder[mpq_d]
    return InspectionReport(
        dims=rho.dims,
        entropy=von_neumann_entropy(view),
        entropy_a=von_neumann_entropy(view.marginal_a()),
        entropy_b=von_neumann_entropy(view.marginal_b()),
        mutual_information=mutual_information(view),
        discord=qd,
        eof=eof,
        rank=correlation_rank(view),
        ancilla_dim=ancilla_dim,
        measured_side=side,
        potential_discord=pd,
        mpq_ancilla_dim=mpq_d,
        max_potential_discord=mpq,
        product=is_product(view),
        classical=is_classical(view),
    )



def format_report(report: InspectionReport) -> str:
    def yes_no(flag: bool) -> str:
        return ColoredText.green("yes") if flag else ColoredText.yellow("no")

    def potential(result: Optional[PotentialResult]) -> str:
        if result is None:
            return "n/a (no qubit side to measure)"
        return f"{result.value:.6f}  [{result.status.value}]"

    if report.discord is None:
        qd = "n/a (no qubit side to measure)"
    else:
        basis = report.discord.optimal_basis
        qd = (
            f"{report.discord.discord:.6f}  (measured {report.measured_side},"
            f" theta = {basis.theta:.4f}, phi = {basis.phi:.4f})"
        )
    lines: List[str] = [
        ColoredText.cyan(f"=== State with dims {' x '.join(map(str, report.dims))} ==="),
        f"S(rho)          = {report.entropy:.6f}",
        f"S(rho_A)        = {report.entropy_a:.6f}",
        f"S(rho_B)        = {report.entropy_b:.6f}",
        f"I(A:B)          = {report.mutual_information:.6f}",
        f"QD              = {qd}",
        "EoF             = "
        + ("n/a (not two qubits)" if report.eof is None else f"{report.eof:.6f}"),
        f"L               = {report.rank.rank}"
        f"  (witness: {yes_no(report.rank.witnessed)})",
        f"PD(d={report.ancilla_dim})        = {potential(report.potential_discord)}",
        f"mPQ(d={report.mpq_ancilla_dim})       = {potential(report.max_potential_discord)}",
        f"product         : {yes_no(report.product)}",
        f"classical (CC)  : {yes_no(report.classical)}",
    ]
    return "\n".join(lines)
