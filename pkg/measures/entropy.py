"""Entropic quantities in bits."""

from typing import Union

import numpy as np
import numpy.typing as npt

from common.errors import InvariantViolation
from common.linalg import eig_hermitian
from common.states import DensityMatrix
from common.utils import Config


def entropy_from_eigenvalues(eigenvalues: npt.ArrayLike) -> float:
    """-sum p log2 p with 0 log 0 = 0; values in [-PSD_CLIP, 0] count as 0."""
    w = np.asarray(eigenvalues, dtype=float)
    if w.size and w.min() < -Config.PSD_CLIP:
        raise InvariantViolation(f"eigenvalue {w.min():.3e} below clip tolerance")
    w = w[w > 0]
    return float(max(0.0, -np.sum(w * np.log2(w))))


def entropy_batch(eigenvalues: npt.ArrayLike) -> np.ndarray:
    """Entropies along the last axis of an array of (unnormalized-safe) spectra."""
    w = np.clip(np.asarray(eigenvalues, dtype=float), 0.0, None)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(w > 0, -w * np.log2(np.where(w > 0, w, 1.0)), 0.0)
    return terms.sum(axis=-1)


def von_neumann_entropy(rho: Union[DensityMatrix, npt.ArrayLike]) -> float:
    if isinstance(rho, DensityMatrix):
        return entropy_from_eigenvalues(rho.eigenvalues())
    w, _ = eig_hermitian(rho)
    return entropy_from_eigenvalues(w)


def binary_entropy(p: float) -> float:
    return entropy_from_eigenvalues([p, 1.0 - p])


def mutual_information(rho: DensityMatrix) -> float:
    """S(A) + S(B) - S(AB)."""
    view = rho.bipartite()
    return (
        von_neumann_entropy(view.marginal([0]))
        + von_neumann_entropy(view.marginal([1]))
        - von_neumann_entropy(view)
    )


def conditional_entropy(rho: DensityMatrix) -> float:
    """S(A|B) = S(AB) - S(B)."""
    view = rho.bipartite()
    return von_neumann_entropy(view) - von_neumann_entropy(view.marginal([1]))
