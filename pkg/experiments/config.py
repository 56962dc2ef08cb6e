"""
Experiment configuration.

Values are resolved with the precedence command line > YAML file > defaults.
A config file holds the same keys as ``ExperimentConfig`` plus an optional
``optimizer`` mapping:

    step: 0.05
    samples: 200
    optimizer:
      restarts: 8
      max_evals: 1000
"""

import math
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Union

import yaml

from common.errors import ConfigError
from common.utils import Config, OptimizerConfig

EXPERIMENTS = ("fig2", "fig3", "fig4", "fig5", "fig6", "inspect")

# Grid step and sample count per experiment when neither CLI nor file sets them
DEFAULT_STEPS = {"fig2": 0.1, "fig3": 0.1, "fig4": 0.05, "fig5": 0.05, "fig6": 0.1}
DESK_SAMPLES = 1000
FULL_SAMPLES = 100_000

_OPTIMIZER_KEYS = {f.name for f in fields(OptimizerConfig)}


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything one ``qlab`` invocation needs."""

    experiment: str
    step: float = 0.1
    samples: int = DESK_SAMPLES
    seed: int = 0
    ancilla_dim: int = Config.DEFAULT_ANCILLA
    optimizer: OptimizerConfig = field(default_factory=OptimizerConfig)
    out_dir: Path = Path("results")
    svg: bool = False
    jobs: int = 1
    full: bool = False

    def __post_init__(self) -> None:
        if self.experiment not in EXPERIMENTS:
            raise ConfigError(
                f"unknown experiment {self.experiment!r}; choose from {', '.join(EXPERIMENTS)}"
            )
        if not 0.0 < self.step <= 1.0:
            raise ConfigError(f"step must lie in (0, 1], got {self.step}")
        if self.samples < 1:
            raise ConfigError(f"samples must be >= 1, got {self.samples}")
        if self.seed < 0:
            raise ConfigError(f"seed must be >= 0, got {self.seed}")
        if self.jobs < 1:
            raise ConfigError(f"jobs must be >= 1, got {self.jobs}")
        if self.ancilla_dim not in Config.ANCILLA_DIMS:
            raise ConfigError(
                f"ancilla dimension {self.ancilla_dim} not supported; "
                f"choose from {Config.ANCILLA_DIMS}"
            )
        object.__setattr__(self, "out_dir", Path(self.out_dir))

    def parameter_grid(self, upper: float = 1.0) -> List[float]:
        """0, step, 2 step, ... up to ``upper``; ``upper`` is always included."""
        scaled = self.step * upper
        count = int(math.floor(upper / scaled * (1 + 1e-12)))
        grid = [round(i * scaled, 12) for i in range(count + 1)]
        if grid[-1] < upper - 1e-12:
            grid.append(float(upper))
        return grid


def read_config_file(path: Union[str, Path]) -> Dict[str, Any]:
    """Parse a YAML config file into a flat mapping of known keys."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = yaml.safe_load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    except yaml.YAMLError as exc:
        raise ConfigError(f"invalid YAML in {path}: {exc}") from exc
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigError(f"config file {path} must hold a mapping")

    known = {f.name for f in fields(ExperimentConfig)} - {"experiment"}
    unknown = set(data) - known
    if unknown:
        raise ConfigError(f"unknown config keys in {path}: {', '.join(sorted(unknown))}")
    optimizer = data.get("optimizer") or {}
    if not isinstance(optimizer, dict) or set(optimizer) - _OPTIMIZER_KEYS:
        raise ConfigError(
            f"'optimizer' in {path} must map a subset of {sorted(_OPTIMIZER_KEYS)}"
        )
    return data


def resolve_config(
    experiment: str,
    cli: Optional[Mapping[str, Any]] = None,
    path: Optional[Union[str, Path]] = None,
) -> ExperimentConfig:
    """
    Merge defaults, an optional YAML file and command-line values.

    ``cli`` values of None mean "not given". Optimizer overrides on the
    command line are ``restarts``; the optimizer seed follows ``seed``.
    """
    cli = {k: v for k, v in (cli or {}).items() if v is not None}
    file_values = read_config_file(path) if path else {}

    merged: Dict[str, Any] = {}
    if experiment in DEFAULT_STEPS:
        merged["step"] = DEFAULT_STEPS[experiment]
    merged.update({k: v for k, v in file_values.items() if k != "optimizer"})
    merged.update({k: v for k, v in cli.items() if k != "restarts"})

    if merged.get("full") and "samples" not in cli and "samples" not in file_values:
        merged["samples"] = FULL_SAMPLES

    optimizer = OptimizerConfig()
    try:
        optimizer = optimizer.override(**(file_values.get("optimizer") or {}))
        optimizer = optimizer.override(
            restarts=cli.get("restarts"), seed=merged.get("seed")
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid optimizer settings: {exc}") from exc

    try:
        return ExperimentConfig(experiment=experiment, optimizer=optimizer, **merged)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc

