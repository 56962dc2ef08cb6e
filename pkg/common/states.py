"""Density matrices, the named two-qubit state families and random sampling."""

import math
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
import numpy.typing as npt

from common.errors import ConfigError, DimensionError, InvalidStateError, StateParseError
from common.linalg import (
    ComplexMatrix,
    as_matrix,
    eig_hermitian,
    hadamard,
    is_hermitian,
    kron,
    partial_trace,
    swap_operator,
)
from common.utils import Config

Seed = Union[int, np.random.Generator, None]


class FamilyTag(Enum):
    CC = "cc"
    WERNER = "werner"
    ISOTROPIC = "isotropic"
    MIXTURE = "mixture"
    CC_NOISY = "cc_noisy"
    PSEUDO_PURE = "pseudo_pure"
    BELL = "bell"
    AD_INITIAL = "ad_initial"
    RANDOM = "random"


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """
    Hermitian, unit-trace, positive semi-definite matrix over a tensor product.

    ``dims`` lists the factor dimensions; the first ``cut`` factors form side
    A and the rest side B. For two factors ``cut`` defaults to 1.
    """

    matrix: ComplexMatrix
    dims: Tuple[int, ...]
    cut: Optional[int] = None
    _spectrum: Optional[np.ndarray] = field(default=None, repr=False, compare=False)

    def __post_init__(self) -> None:
        matrix = as_matrix(self.matrix)
        dims = tuple(int(d) for d in self.dims)
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "dims", dims)

        if not dims or any(d < 1 for d in dims):
            raise DimensionError(f"invalid dims {dims}")
        if int(np.prod(dims)) != matrix.shape[0]:
            raise DimensionError(
                f"dims {dims} do not match matrix side {matrix.shape[0]}"
            )
        cut = self.cut if self.cut is not None else max(1, len(dims) // 2)
        if len(dims) > 1 and not 1 <= cut < len(dims):
            raise DimensionError(f"cut {cut} invalid for {len(dims)} factors")
        object.__setattr__(self, "cut", cut)

        if not is_hermitian(matrix):
            raise InvalidStateError("density matrix is not Hermitian")
        trace = np.trace(matrix)
        if abs(trace - 1.0) > Config.TRACE_TOL * max(1, matrix.shape[0]):
            raise InvalidStateError(f"trace is {trace.real:.12g}, expected 1")
        w, _ = eig_hermitian(matrix)
        if w[-1] < -Config.PSD_CLIP:
            raise InvalidStateError(f"negative eigenvalue {w[-1]:.3e}")
        object.__setattr__(self, "_spectrum", w)

    @classmethod
    def from_pure(cls, psi: npt.ArrayLike, dims: Sequence[int]) -> "DensityMatrix":
        vec = np.asarray(psi, dtype=complex).ravel()
        norm = np.linalg.norm(vec)
        if abs(norm - 1.0) > 1e-10:
            raise InvalidStateError(f"state vector has norm {norm:.12g}")
        return cls(np.outer(vec, vec.conj()), tuple(dims))

    @classmethod
    def normalized(
        cls, matrix: npt.ArrayLike, dims: Sequence[int], cut: Optional[int] = None
    ) -> "DensityMatrix":
        """Symmetrize and renormalize a matrix that is a state up to rounding."""
        arr = as_matrix(matrix)
        arr = 0.5 * (arr + arr.conj().T)
        return cls(arr / np.trace(arr).real, tuple(dims), cut)

    @property
    def side(self) -> int:
        return self.matrix.shape[0]

    @property
    def bipartite_dims(self) -> Tuple[int, int]:
        """Dimensions of sides A and B."""
        if len(self.dims) < 2:
            raise DimensionError(f"state with dims {self.dims} is not bipartite")
        return (
            int(np.prod(self.dims[: self.cut])),
            int(np.prod(self.dims[self.cut :])),
        )

    def bipartite(self) -> "DensityMatrix":
        """Same state viewed as A|B with composite sides merged."""
        if len(self.dims) == 2:
            return self
        return DensityMatrix(self.matrix, self.bipartite_dims)

    def eigenvalues(self) -> np.ndarray:
        """Descending spectrum, clipped at zero."""
        return np.clip(self._spectrum, 0.0, None)

    def purity(self) -> float:
        return float(np.real(np.trace(self.matrix @ self.matrix)))

    def marginal(self, keep: Iterable[int]) -> "DensityMatrix":
        keep = sorted(set(keep))
        reduced = partial_trace(self.matrix, self.dims, keep)
        return DensityMatrix.normalized(reduced, [self.dims[i] for i in keep])

    def marginal_a(self) -> "DensityMatrix":
        view = self.bipartite()
        return view.marginal([0])

    def marginal_b(self) -> "DensityMatrix":
        view = self.bipartite()
        return view.marginal([1])

    def conjugate(self, U: npt.ArrayLike) -> "DensityMatrix":
        """U rho U^dagger."""
        U = as_matrix(U)
        return DensityMatrix.normalized(U @ self.matrix @ U.conj().T, self.dims, self.cut)

    def swap(self) -> "DensityMatrix":
        """Exchange sides A and B."""
        d_a, d_b = self.bipartite_dims
        tensor = self.matrix.reshape(d_a, d_b, d_a, d_b).transpose(1, 0, 3, 2)
        return DensityMatrix(tensor.reshape(self.side, self.side), (d_b, d_a))

    def expectation(self, observable: npt.ArrayLike) -> complex:
        return complex(np.trace(self.matrix @ as_matrix(observable)))

    def isclose(self, other: "DensityMatrix", atol: float = 1e-12) -> bool:
        return self.dims == other.dims and bool(
            np.allclose(self.matrix, other.matrix, rtol=0.0, atol=atol)
        )

    def __str__(self) -> str:
        return format_state(self)


@dataclass(frozen=True)
class StateFamilyPoint:
    """A member of a named family together with its parameter."""

    family: FamilyTag
    parameter: float
    state: DensityMatrix

    def __post_init__(self) -> None:
        if self.family is not FamilyTag.RANDOM:
            _check_unit(self.parameter, self.family.value)


def _check_unit(value: float, name: str) -> float:
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"{name} parameter must lie in [0, 1], got {value}")
    return float(value)


def _ket(*bits: int) -> np.ndarray:
    vec = np.zeros(2 ** len(bits), dtype=complex)
    vec[int("".join(str(b) for b in bits), 2)] = 1.0
    return vec


def _projector(vec: np.ndarray) -> ComplexMatrix:
    return np.outer(vec, vec.conj())


def bell_vector() -> np.ndarray:
    """|beta> = (|00> + |11>)/sqrt(2)."""
    return (_ket(0, 0) + _ket(1, 1)) / math.sqrt(2)


def bell_state() -> DensityMatrix:
    return DensityMatrix(_projector(bell_vector()), (2, 2))


def classical_mixture() -> ComplexMatrix:
    """rho_class = (|00><00| + |11><11|)/2."""
    return np.diag([0.5, 0.0, 0.0, 0.5]).astype(complex)


def cc_family(eta: float) -> DensityMatrix:
    """(1-eta)|00><00| + eta|11><11|."""
    eta = _check_unit(eta, "cc")
    return DensityMatrix(np.diag([1 - eta, 0, 0, eta]).astype(complex), (2, 2))


def werner(eta: float) -> DensityMatrix:
    """(eta/3) P+ + (1-eta) P- with P+- the symmetric/antisymmetric projectors."""
    eta = _check_unit(eta, "werner")
    swap = swap_operator(2)
    identity = np.eye(4, dtype=complex)
    p_plus = 0.5 * (identity + swap)
    p_minus = 0.5 * (identity - swap)
    return DensityMatrix((eta / 3) * p_plus + (1 - eta) * p_minus, (2, 2))


def isotropic(eta: float) -> DensityMatrix:
    """(1-eta) 1/4 + eta |beta><beta|."""
    eta = _check_unit(eta, "isotropic")
    return DensityMatrix(
        (1 - eta) * np.eye(4, dtype=complex) / 4 + eta * _projector(bell_vector()),
        (2, 2),
    )


def mixture_family(gamma: float) -> DensityMatrix:
    """(1-gamma) rho_class + gamma |beta><beta|."""
    gamma = _check_unit(gamma, "mixture")
    return DensityMatrix(
        (1 - gamma) * classical_mixture() + gamma * _projector(bell_vector()), (2, 2)
    )


def cc_noisy_family(lam: float) -> DensityMatrix:
    """(1-lam) rho_class + lam 1/4."""
    lam = _check_unit(lam, "cc_noisy")
    return DensityMatrix(
        (1 - lam) * classical_mixture() + lam * np.eye(4, dtype=complex) / 4, (2, 2)
    )


def pseudo_pure(
    a: float, psi: npt.ArrayLike, dims: Sequence[int] = (2, 2)
) -> DensityMatrix:
    """(1-a) 1/d + a |psi><psi|."""
    a = _check_unit(a, "pseudo_pure")
    vec = np.asarray(psi, dtype=complex).ravel()
    norm = np.linalg.norm(vec)
    if abs(norm - 1.0) > 1e-10:
        raise InvalidStateError(f"psi has norm {norm:.12g}, expected 1")
    d = vec.size
    return DensityMatrix(
        (1 - a) * np.eye(d, dtype=complex) / d + a * _projector(vec), tuple(dims)
    )


def ad_initial_state() -> DensityMatrix:
    """(|+0><+0| + |-1><-1|)/2."""
    plus = np.array([1, 1], dtype=complex) / math.sqrt(2)
    minus = np.array([1, -1], dtype=complex) / math.sqrt(2)
    zero = np.array([1, 0], dtype=complex)
    one = np.array([0, 1], dtype=complex)
    return DensityMatrix(
        0.5 * (_projector(np.kron(plus, zero)) + _projector(np.kron(minus, one))),
        (2, 2),
    )


def four_qubit_cc_state(p: float) -> DensityMatrix:
    """
    CC state over A2 A1 | B1 B2 whose (A1, B1) reduction is quantum-correlated:
    p |0 0 0 0><...| + (1-p) |1 + + 1><...|.
    """
    p = _check_unit(p, "four_qubit_cc")
    zero = np.array([1, 0], dtype=complex)
    one = np.array([0, 1], dtype=complex)
    plus = np.array([1, 1], dtype=complex) / math.sqrt(2)
    first = kron(*(_projector(v) for v in (zero, zero, zero, zero)))
    second = kron(*(_projector(v) for v in (one, plus, plus, one)))
    return DensityMatrix(p * first + (1 - p) * second, (2, 2, 2, 2), cut=2)


def make_rng(seed: Seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_density(
    dim: int, rank: int, seed: Seed = None, dims: Optional[Sequence[int]] = None
) -> DensityMatrix:
    """Hilbert-Schmidt (Ginibre) state G G^dagger / tr(G G^dagger), G of shape dim x rank."""
    if not 1 <= rank <= dim:
        raise ValueError(f"rank must lie in [1, {dim}], got {rank}")
    rng = make_rng(seed)
    G = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    rho = G @ G.conj().T
    if dims is None:
        dims = _default_split(dim)
    return DensityMatrix.normalized(rho, dims)


def _default_split(dim: int) -> Tuple[int, ...]:
    """Square split when dim is a perfect square, otherwise a qubit on side A."""
    side = math.isqrt(dim)
    if dim > 1 and side * side == dim:
        return (side, side)
    if dim % 2 == 0 and dim > 2:
        return (2, dim // 2)
    return (dim,)


def random_pure_vector(dim: int, seed: Seed = None) -> np.ndarray:
    rng = make_rng(seed)
    vec = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return vec / np.linalg.norm(vec)


def random_pure(dims: Sequence[int] = (2, 2), seed: Seed = None) -> DensityMatrix:
    vec = random_pure_vector(int(np.prod(dims)), seed)
    return DensityMatrix.normalized(_projector(vec), dims)


def random_product(dims: Sequence[int] = (2, 2), seed: Seed = None) -> DensityMatrix:
    """rho_A (x) rho_B with each factor a random full-rank Ginibre state."""
    rng = make_rng(seed)
    factors = [random_density(d, d, rng, dims=(d,)).matrix for d in dims]
    return DensityMatrix.normalized(kron(*factors), dims)


def family_point(tag: Union[FamilyTag, str], parameter: float = 0.0) -> StateFamilyPoint:
    """Construct a family member from its tag."""
    tag = FamilyTag(tag)
    builders = {
        FamilyTag.CC: cc_family,
        FamilyTag.WERNER: werner,
        FamilyTag.ISOTROPIC: isotropic,
        FamilyTag.MIXTURE: mixture_family,
        FamilyTag.CC_NOISY: cc_noisy_family,
        FamilyTag.PSEUDO_PURE: lambda a: pseudo_pure(a, bell_vector()),
        FamilyTag.BELL: lambda _: bell_state(),
        FamilyTag.AD_INITIAL: lambda _: ad_initial_state(),
    }
    if tag not in builders:
        raise ValueError(f"family {tag.value!r} has no parametric constructor")
    return StateFamilyPoint(tag, float(parameter), builders[tag](parameter))


def is_product(rho: DensityMatrix, tol: float = Config.PRODUCT_TOL) -> bool:
    """rho == Tr_B rho (x) Tr_A rho within ``tol`` entrywise."""
    view = rho.bipartite()
    product = kron(view.marginal([0]).matrix, view.marginal([1]).matrix)
    return bool(np.max(np.abs(view.matrix - product)) <= tol)


def _side_blocks(matrix: ComplexMatrix, d_a: int, d_b: int) -> List[ComplexMatrix]:
    """Operators M_kl = Tr_B[rho (1 (x) |l><k|)] acting on A."""
    tensor = matrix.reshape(d_a, d_b, d_a, d_b)
    return [tensor[:, k, :, l] for k in range(d_b) for l in range(d_b)]


def _commuting(blocks: List[ComplexMatrix], tol: float) -> bool:
    for i, X in enumerate(blocks):
        for Y in blocks[i + 1 :]:
            if np.max(np.abs(X @ Y - Y @ X)) > tol:
                return False
    return True


def is_classical(rho: DensityMatrix, tol: float = 1e-9) -> bool:
    """
    True if rho is diagonal in some product basis (classically correlated).

    The blocks M_kl are closed under adjoint, so they share an eigenbasis
    iff they commute pairwise; the same test is applied from side B.
    """
    view = rho.bipartite()
    d_a, d_b = view.bipartite_dims
    if not _commuting(_side_blocks(view.matrix, d_a, d_b), tol):
        return False
    swapped = view.swap()
    return _commuting(_side_blocks(swapped.matrix, d_b, d_a), tol)


def hadamard_rotated_cc() -> DensityMatrix:
    """(U_H (x) 1) cc_family(1/2) (U_H (x) 1)^dagger."""
    return cc_family(0.5).conjugate(kron(hadamard(), np.eye(2)))


# --- plain-text state files -------------------------------------------------


def _format_entry(z: complex) -> str:
    return f"{z.real:.17g}{z.imag:+.17g}j"


def format_state(rho: DensityMatrix) -> str:
    """Header ``dims: d1 d2`` followed by one matrix row per line."""
    lines = ["dims: " + " ".join(str(d) for d in rho.dims)]
    for row in rho.matrix:
        lines.append(" ".join(_format_entry(complex(z)) for z in row))
    return "\n".join(lines) + "\n"


def parse_state(text: str) -> DensityMatrix:
    lines = [
        (number, line)
        for number, line in enumerate(text.splitlines(), 1)
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if not lines:
        raise StateParseError("empty state file", line=1)

    header_no, header = lines[0]
    key, _, rest = header.partition(":")
    if key.strip() != "dims" or not rest.strip():
        raise StateParseError("expected header 'dims: d1 d2 ...'", line=header_no, column=1)
    try:
        dims = tuple(int(tok) for tok in rest.split())
    except ValueError as exc:
        raise StateParseError(f"bad dimension ({exc})", line=header_no) from exc

    side = int(np.prod(dims))
    rows: List[List[complex]] = []
    for number, line in lines[1:]:
        row = []
        pos = 0
        for token in line.split():
            column = line.index(token, pos) + 1
            pos = column - 1 + len(token)
            try:
                row.append(complex(token))
            except ValueError:
                raise StateParseError(
                    f"cannot parse entry {token!r}", line=number, column=column
                ) from None
        if len(row) != side:
            raise StateParseError(
                f"expected {side} entries, found {len(row)}", line=number, column=1
            )
        rows.append(row)

    if len(rows) != side:
        raise StateParseError(
            f"expected {side} rows, found {len(rows)}", line=lines[-1][0]
        )
    try:
        return DensityMatrix(np.array(rows, dtype=complex), dims)
    except (InvalidStateError, DimensionError) as exc:
        raise StateParseError(str(exc), line=header_no) from exc


def load_state(path: Union[str, Path]) -> DensityMatrix:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read state file {path}: {exc.strerror or exc}") from exc
    return parse_state(text)


def save_state(rho: DensityMatrix, path: Union[str, Path]) -> None:
    Path(path).write_text(format_state(rho), encoding="utf-8")
