"""Exception hierarchy shared by every qlab package."""

from typing import Optional


class QuantumLabError(Exception):
    """Base class for all qlab errors."""


class DimensionError(QuantumLabError, ValueError):
    """Operator or subsystem dimensions do not fit together."""


class NonHermitianError(QuantumLabError, ValueError):
    """A Hermitian matrix was required."""


class InvalidStateError(QuantumLabError, ValueError):
    """Matrix is not a density matrix (trace, hermiticity or positivity)."""


class UnsupportedAncillaError(QuantumLabError, ValueError):
    """Ancilla dimension outside the supported set."""


class ConvergenceError(QuantumLabError, ArithmeticError):
    """An iterative numerical routine did not converge."""


class InvariantViolation(QuantumLabError, ArithmeticError):
    """A numerical invariant (e.g. discord <= PD <= I) failed on output."""


class ConfigError(QuantumLabError, ValueError):
    """Invalid experiment configuration."""


class OutputError(QuantumLabError, OSError):
    """Result file or directory cannot be written."""


class StateParseError(QuantumLabError, ValueError):
    """State file could not be parsed."""

    def __init__(self, message: str, line: int, column: Optional[int] = None):
        self.line = line
        self.column = column
        where = f"line {line}" if column is None else f"line {line}, column {column}"
        super().__init__(f"{where}: {message}")
