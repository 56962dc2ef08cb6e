"""
Experiment runners behind ``qlab fig2`` .. ``qlab fig6``.

Each runner builds a list of independent ``PointTask`` values, evaluates them
(serially or on a process pool), and writes ``<fig>.csv`` plus an optional
``<fig>.svg`` into the output directory. Random samples draw from a generator
seeded by (seed, sample index), so results do not depend on the number of
workers or the order in which they finish.
"""

from dataclasses import dataclass
from functools import partial
from multiprocessing import Pool
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from common.channels import amplitude_damping, apply_one_side, damping_probability
from common.states import (
    DensityMatrix,
    ad_initial_state,
    family_point,
    pseudo_pure,
    random_density,
    random_pure_vector,
)
from common.utils import get_logger
from experiments.config import ExperimentConfig
from experiments.output import Plot, ResultRow, write_csv, write_svg
from measures import (
    correlation_rank,
    discord,
    entanglement_of_formation,
    mutual_information,
    von_neumann_entropy,
)
from solvers import max_discord_global_unitary, potential_discord

logger = get_logger(__name__)

# Upper end of the time axis in units of 1/Gamma
GAMMA_T_MAX = 5.0
MAX_RANDOM_RANK = 4


@dataclass(frozen=True)
class PointTask:
    """One state to evaluate and the ResultRow columns to fill for it."""

    family: str
    parameter: float
    columns: Tuple[str, ...]
    index: int = 0  # Seeds the sample generator of random families


@dataclass(frozen=True)
class FigureResult:
    rows: List[ResultRow]
    csv_path: Path
    svg_path: Optional[Path] = None


def sample_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng([seed, index])


def build_state(task: PointTask, cfg: ExperimentConfig) -> DensityMatrix:
    """State for a task; random families use the (seed, index) generator."""
    if task.family == "random":
        rng = sample_rng(cfg.seed, task.index)
        rank = int(rng.integers(1, MAX_RANDOM_RANK + 1))
        return random_density(4, rank, rng)
    if task.family == "ad":
        return apply_one_side(amplitude_damping(task.parameter), ad_initial_state())
    if task.family == "ad_time":
        p = damping_probability(task.parameter)
        return apply_one_side(amplitude_damping(p), ad_initial_state())
    if task.family == "pseudo_pure_random":
        psi = random_pure_vector(4, sample_rng(cfg.seed, task.index))
        return pseudo_pure(task.parameter, psi)
    return family_point(task.family, task.parameter).state


def _column_values(rho: DensityMatrix, columns: Sequence[str], cfg: ExperimentConfig) -> Dict:
    evaluators: Dict[str, Callable[[], object]] = {
        "discord": lambda: discord(rho).discord,
        "potential_discord": lambda: potential_discord(
            rho, cfg.ancilla_dim, cfg.optimizer
        ).value,
        "mutual_information": lambda: mutual_information(rho),
        "eof": lambda: entanglement_of_formation(rho),
        "entropy": lambda: von_neumann_entropy(rho),
        "correlation_rank": lambda: correlation_rank(rho).rank,
        "global_discord": lambda: max_discord_global_unitary(rho, cfg.optimizer).value,
    }
    unknown = set(columns) - set(evaluators)
    if unknown:
        raise ValueError(f"unknown result columns {sorted(unknown)}")
    return {name: evaluators[name]() for name in columns}


def evaluate_point(task: PointTask, cfg: ExperimentConfig) -> ResultRow:
    rho = build_state(task, cfg)
    values = _column_values(rho, task.columns, cfg)
    row = ResultRow(family=task.family, parameter=float(task.parameter), **values)
    logger.debug("%s @ %.4g: %s", task.family, task.parameter, values)
    return row


def evaluate_tasks(tasks: Sequence[PointTask], cfg: ExperimentConfig) -> List[ResultRow]:
    """Evaluate every task; rows come back sorted by family then parameter."""
    logger.info(
        "%s: evaluating %d states with %d job(s)", cfg.experiment, len(tasks), cfg.jobs
    )
    worker = partial(evaluate_point, cfg=cfg)
    if cfg.jobs > 1 and len(tasks) > 1:
        with Pool(processes=cfg.jobs) as pool:
            rows = pool.map(worker, tasks)
    else:
        rows = [worker(task) for task in tasks]
    return sorted(rows, key=ResultRow.sort_key)


def _grid_tasks(
    families: Sequence[str], grid: Sequence[float], columns: Tuple[str, ...]
) -> List[PointTask]:
    return [
        PointTask(family, p, columns, index)
        for family in families
        for index, p in enumerate(grid)
    ]


def _random_tasks(cfg: ExperimentConfig, columns: Tuple[str, ...]) -> List[PointTask]:
    return [PointTask("random", float(i), columns, i) for i in range(cfg.samples)]


def _series(rows: Sequence[ResultRow], family: str, x: str, y: str) -> List[Tuple[float, float]]:
    return [
        (getattr(r, x), getattr(r, y))
        for r in rows
        if r.family == family and getattr(r, y) is not None
    ]


def _finish(cfg: ExperimentConfig, rows: List[ResultRow], plot: Plot) -> FigureResult:
    csv_path = write_csv(rows, cfg.out_dir / f"{cfg.experiment}.csv")
    svg_path = None
    if cfg.svg:
        svg_path = write_svg(plot, cfg.out_dir / f"{cfg.experiment}.svg")
    return FigureResult(rows=rows, csv_path=csv_path, svg_path=svg_path)


def run_fig2(cfg: ExperimentConfig) -> FigureResult:
    """QD and PD of the CC, isotropic and Werner families."""
    columns = ("discord", "potential_discord", "mutual_information", "correlation_rank")
    families = ("cc", "isotropic", "werner")
    rows = evaluate_tasks(_grid_tasks(families, cfg.parameter_grid(), columns), cfg)

    plot = Plot("QD and PD of symmetric families", "eta", "bits")
    for family in families:
        plot.add_series(f"PD {family}", _series(rows, family, "parameter", "potential_discord"), "line")
        plot.add_series(f"QD {family}", _series(rows, family, "parameter", "discord"))
    return _finish(cfg, rows, plot)


def run_fig3(cfg: ExperimentConfig) -> FigureResult:
    """
    PD against QD for random states, with the mixture family as upper border,
    the isotropic family as lower border and the noisy CC family on the left.
    """
    columns = ("discord", "potential_discord")
    grid = cfg.parameter_grid()
    tasks = _random_tasks(cfg, columns)
    tasks += _grid_tasks(("mixture", "isotropic", "cc_noisy"), grid, columns)
    rows = evaluate_tasks(tasks, cfg)

    plot = Plot("PD versus QD", "QD (bits)", "PD (bits)")
    plot.add_series("random", _series(rows, "random", "discord", "potential_discord"))
    for family in ("mixture", "isotropic", "cc_noisy"):
        plot.add_series(family, _series(rows, family, "discord", "potential_discord"), "line")
    return _finish(cfg, rows, plot)


def run_fig4(cfg: ExperimentConfig) -> FigureResult:
    """EoF, QD and PD along the mixture family."""
    columns = ("eof", "discord", "potential_discord", "mutual_information")
    rows = evaluate_tasks(_grid_tasks(("mixture",), cfg.parameter_grid(), columns), cfg)

    plot = Plot("Mixture family", "gamma", "bits")
    for column, label in (("eof", "EoF"), ("discord", "QD"), ("potential_discord", "PD")):
        plot.add_series(label, _series(rows, "mixture", "parameter", column), "line")
    return _finish(cfg, rows, plot)


def run_fig5(cfg: ExperimentConfig) -> FigureResult:
    """QD and PD of the maximal-PD CC state after local amplitude damping."""
    columns = ("discord", "potential_discord")
    tasks = _grid_tasks(("ad",), cfg.parameter_grid(), columns)
    tasks += _grid_tasks(("ad_time",), cfg.parameter_grid(GAMMA_T_MAX), columns)
    rows = evaluate_tasks(tasks, cfg)

    plot = Plot("Amplitude damping", "Gamma t", "bits")
    plot.add_series("QD", _series(rows, "ad_time", "parameter", "discord"), "line")
    plot.add_series("PD", _series(rows, "ad_time", "parameter", "potential_discord"), "line")
    return _finish(cfg, rows, plot)


def run_fig6(cfg: ExperimentConfig) -> FigureResult:
    """
    Discord reachable by global unitaries against entropy.

    Random states and random pseudo-pure states get the optimized value;
    the isotropic and Werner families give the reference curves.
    """
    optimized = ("entropy", "discord", "global_discord")
    grid = cfg.parameter_grid()
    tasks = _random_tasks(cfg, optimized)
    tasks += _grid_tasks(("pseudo_pure_random",), grid, optimized)
    tasks += _grid_tasks(("isotropic", "werner"), grid, ("entropy", "discord"))
    rows = evaluate_tasks(tasks, cfg)

    plot = Plot("Discord under global unitaries", "S (bits)", "QD (bits)")
    plot.add_series("random", _series(rows, "random", "entropy", "global_discord"))
    plot.add_series("pseudo-pure", _series(rows, "pseudo_pure_random", "entropy", "global_discord"))
    for family in ("isotropic", "werner"):
        plot.add_series(family, _series(rows, family, "entropy", "discord"), "line")
    return _finish(cfg, rows, plot)


FIGURES: Dict[str, Callable[[ExperimentConfig], FigureResult]] = {
    "fig2": run_fig2,
    "fig3": run_fig3,
    "fig4": run_fig4,
    "fig5": run_fig5,
    "fig6": run_fig6,
}
