"""Shared utilities for the qlab package."""

import logging
import math
from dataclasses import dataclass, replace
from typing import Any, Optional


# Global configuration
class Config:
    """Global configuration settings and numerical tolerances."""

    HERMITIAN_TOL = 1e-12  # Entrywise |M - M^dagger|
    TRACE_TOL = 1e-12
    RECONSTRUCTION_TOL = 1e-10
    PSD_CLIP = 1e-10  # Eigenvalues in [-PSD_CLIP, 0] are treated as 0
    KRAUS_TOL = 1e-10  # Completeness sum E^dagger E = 1
    KRAUS_PRUNE = 1e-12  # Frobenius norm below which dilated Kraus ops are dropped
    PRODUCT_TOL = 1e-9
    RANK_TOL = 1e-10  # Relative to the largest singular value
    JACOBI_TOL = 1e-14  # Off-diagonal Frobenius mass
    JACOBI_MAX_SWEEPS = 100
    MAX_SIDE = 16

    GENERATOR_SIDES = (1, 2, 4, 8, 16)
    ANCILLA_DIMS = (0, 1, 2, 4, 8)

    DISCORD_GRID = 64  # Final-precision measurement grid
    INNER_DISCORD_GRID = 32  # Grid used inside nested optimizations
    MIN_DISCORD_GRID = 16

    DEFAULT_RESTARTS = 24
    DEFAULT_ANCILLA = 2


@dataclass(frozen=True)
class OptimizerConfig:
    """Settings for a multi-start Nelder-Mead search."""

    restarts: int = Config.DEFAULT_RESTARTS
    seed: int = 0
    simplex_tolerance: float = 1e-6
    max_evals: int = 2000
    include_identity_start: bool = True
    simplex_step: float = 0.5  # Edge length of the initial simplex
    start_scale: float = math.pi / 2  # Std-dev of random generator starts

    def __post_init__(self) -> None:
        if self.restarts < 1:
            raise ValueError(f"restarts must be >= 1, got {self.restarts}")
        if self.simplex_tolerance <= 0:
            raise ValueError(
                f"simplex_tolerance must be > 0, got {self.simplex_tolerance}"
            )
        if self.max_evals < 1:
            raise ValueError(f"max_evals must be >= 1, got {self.max_evals}")

    def override(self, **changes: Any) -> "OptimizerConfig":
        """Copy with the given non-None fields replaced."""
        return replace(self, **{k: v for k, v in changes.items() if v is not None})


# Measurement refinement inside discord: simplex diameter 1e-8, <= 500 iterations
MEASUREMENT_REFINE = OptimizerConfig(
    restarts=1, simplex_tolerance=1e-8, max_evals=500, simplex_step=0.05
)

# Cheap polish for the discord evaluated inside PD and global-unitary searches
INNER_MEASUREMENT_REFINE = OptimizerConfig(
    restarts=1, simplex_tolerance=1e-5, max_evals=40, simplex_step=0.05
)


class ColoredText:
    """ANSI color codes for terminal output."""

    BLUE = "\033[94m"
    GREEN = "\033[92m"
    YELLOW = "\033[93m"
    RED = "\033[91m"
    CYAN = "\033[96m"
    RESET = "\033[0m"

    @staticmethod
    def blue(text: str) -> str:
        return f"{ColoredText.BLUE}{text}{ColoredText.RESET}"

    @staticmethod
    def green(text: str) -> str:
        return f"{ColoredText.GREEN}{text}{ColoredText.RESET}"

    @staticmethod
    def yellow(text: str) -> str:
        return f"{ColoredText.YELLOW}{text}{ColoredText.RESET}"

    @staticmethod
    def red(text: str) -> str:
        return f"{ColoredText.RED}{text}{ColoredText.RESET}"

    @staticmethod
    def cyan(text: str) -> str:
        return f"{ColoredText.CYAN}{text}{ColoredText.RESET}"


class ColoredFormatter(logging.Formatter):
    """Log formatter that colours the level name."""

    COLORS = {
        logging.DEBUG: ColoredText.blue,
        logging.INFO: ColoredText.green,
        logging.WARNING: ColoredText.yellow,
        logging.ERROR: ColoredText.red,
        logging.CRITICAL: ColoredText.red,
    }

    def format(self, record: logging.LogRecord) -> str:
        paint = self.COLORS.get(record.levelno, str)
        record = logging.makeLogRecord(record.__dict__)
        record.levelname = paint(record.levelname)
        return super().format(record)


_ROOT_LOGGER = "qlab"


def get_logger(name: Optional[str] = None) -> logging.Logger:
    """Return a logger below the package root logger."""
    if not name:
        return logging.getLogger(_ROOT_LOGGER)
    return logging.getLogger(f"{_ROOT_LOGGER}.{name}")


def configure_logging(verbose: bool = False) -> None:
    """Attach a coloured console handler to the package root logger once."""
    root = logging.getLogger(_ROOT_LOGGER)
    root.setLevel(logging.DEBUG if verbose else logging.INFO)
    if not any(getattr(h, "_qlab", False) for h in root.handlers):
        handler = logging.StreamHandler()
        handler.setFormatter(ColoredFormatter("%(levelname)s %(name)s: %(message)s"))
        handler._qlab = True  # type: ignore[attr-defined]
        root.addHandler(handler)
