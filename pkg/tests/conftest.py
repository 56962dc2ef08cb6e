import numpy as np
import pytest

from common.utils import OptimizerConfig


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def quick_cfg():
    """A search small enough for unit tests; values it finds are lower bounds only."""
    return OptimizerConfig(restarts=2, max_evals=150, seed=7)


@pytest.fixture
def tiny_cfg():
    return OptimizerConfig(restarts=1, max_evals=40, seed=7)


def random_hermitian(rng, n):
    X = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return 0.5 * (X + X.conj().T)


def random_unitary(rng, n):
    X = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    Q, R = np.linalg.qr(X)
    return Q * (np.diag(R) / np.abs(np.diag(R)))
