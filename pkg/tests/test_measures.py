import math

import numpy as np
import pytest

from common.errors import DimensionError
from common.linalg import kron
from common.states import (
    DensityMatrix,
    bell_state,
    cc_family,
    isotropic,
    mixture_family,
    random_density,
    random_product,
    random_pure,
    werner,
)
from common.utils import INNER_MEASUREMENT_REFINE
from measures import (
    MEASURES,
    MeasurementBasis,
    binary_entropy,
    classical_correlation,
    concurrence,
    conditional_entropy,
    correlation_matrix,
    correlation_rank,
    discord,
    entanglement_of_formation,
    entropy_of_entanglement,
    get_measure,
    hermitian_basis,
    mutual_information,
    von_neumann_entropy,
)

from conftest import random_unitary

MAXIMALLY_MIXED = DensityMatrix(np.eye(4) / 4, (2, 2))


def test_entropies():
    assert math.isclose(von_neumann_entropy(MAXIMALLY_MIXED), 2.0)
    assert von_neumann_entropy(bell_state()) < 1e-10
    assert math.isclose(binary_entropy(0.5), 1.0)
    assert binary_entropy(0.0) == 0.0
    assert math.isclose(conditional_entropy(bell_state()), -1.0)


def test_mutual_information():
    assert math.isclose(mutual_information(bell_state()), 2.0, abs_tol=1e-10)
    assert abs(mutual_information(random_product((2, 2), seed=1))) < 1e-9
    assert math.isclose(mutual_information(cc_family(0.5)), 1.0, abs_tol=1e-10)


def test_discord_of_bell_and_classical_states():
    assert math.isclose(discord(bell_state()).discord, 1.0, abs_tol=1e-9)
    assert math.isclose(discord(bell_state(), measured="B").discord, 1.0, abs_tol=1e-9)
    for eta in np.linspace(0, 1, 11):
        assert discord(cc_family(eta)).discord < 1e-9


def test_discord_result_fields():
    result = discord(cc_family(0.5))
    assert math.isclose(result.mutual_information, 1.0, abs_tol=1e-10)
    assert math.isclose(result.classical_correlations, 1.0, abs_tol=1e-9)
    # The computational basis is optimal for a CC state diagonal in it
    n = result.optimal_basis.bloch_vector()
    assert abs(abs(n[2]) - 1.0) < 1e-6
    assert math.isclose(
        classical_correlation(cc_family(0.5), MeasurementBasis.computational()), 1.0
    )


def test_discord_matches_dense_grid(rng):
    for _ in range(20):
        rho = random_density(4, int(rng.integers(1, 5)), rng)
        fine = discord(rho, grid=512, refine=None).discord
        assert abs(discord(rho).discord - fine) < 1e-4


def test_inner_refinement_tracks_full_discord(rng):
    for _ in range(20):
        rho = random_density(4, int(rng.integers(1, 5)), rng)
        inner = discord(rho, grid=32, refine=INNER_MEASUREMENT_REFINE).discord
        assert abs(inner - discord(rho).discord) < 1e-4


def test_discord_invariant_under_local_unitaries(rng):
    for _ in range(20):
        rho = random_density(4, int(rng.integers(1, 5)), rng)
        U = kron(random_unitary(rng, 2), random_unitary(rng, 2))
        assert abs(discord(rho.conjugate(U)).discord - discord(rho).discord) <= 1e-4


def test_discord_of_pure_states_is_entanglement_entropy(rng):
    for _ in range(50):
        rho = random_pure((2, 2), rng)
        assert abs(discord(rho).discord - entropy_of_entanglement(rho)) < 1e-4


def test_discord_bounded_by_mutual_information(rng):
    for _ in range(20):
        rho = random_density(4, 4, rng)
        result = discord(rho)
        assert -1e-12 <= result.discord <= result.mutual_information + 1e-9


def test_discord_on_qubit_qutrit_measures_the_qubit(rng):
    rho = random_density(6, 3, rng, dims=(2, 3))
    assert discord(rho).discord >= 0.0
    with pytest.raises(DimensionError):
        discord(rho, measured="B")


def test_discord_grid_validation():
    with pytest.raises(ValueError):
        discord(bell_state(), grid=8)


def test_measurement_basis():
    basis = MeasurementBasis.from_bloch(np.array([0.0, 1.0, 0.0]))
    assert math.isclose(basis.theta, math.pi / 2)
    assert math.isclose(basis.phi, math.pi / 2)
    plus, minus = basis.projectors()
    np.testing.assert_allclose(plus + minus, np.eye(2), atol=1e-12)
    np.testing.assert_allclose(plus @ plus, plus, atol=1e-12)
    with pytest.raises(ValueError):
        MeasurementBasis(4.0, 0.0)


@pytest.mark.parametrize("gamma", [0.0, 0.2, 0.5, 1.0])
def test_concurrence_of_mixture_family(gamma):
    # X state with coherence gamma/2 and empty middle block
    assert math.isclose(concurrence(mixture_family(gamma)), gamma, abs_tol=1e-6)


@pytest.mark.parametrize("eta", [0.0, 0.3, 0.6, 1.0])
def test_concurrence_of_isotropic_family(eta):
    assert math.isclose(concurrence(isotropic(eta)), max(0.0, (3 * eta - 1) / 2), abs_tol=1e-6)


def test_entanglement_of_formation():
    assert math.isclose(entanglement_of_formation(bell_state()), 1.0, abs_tol=1e-6)
    assert entanglement_of_formation(cc_family(0.5)) < 1e-12
    for gamma in (0.1, 0.4, 0.7):
        assert entanglement_of_formation(mixture_family(gamma)) > 0.0
    with pytest.raises(DimensionError):
        concurrence(random_density(6, 2, seed=0, dims=(2, 3)))


def test_hermitian_basis_is_orthonormal():
    for d in (2, 3, 4):
        basis = hermitian_basis(d)
        assert len(basis) == d * d
        gram = np.array([[np.trace(a @ b) for b in basis] for a in basis])
        np.testing.assert_allclose(gram, np.eye(d * d), atol=1e-12)


def test_correlation_matrix_reconstructs_state(rng):
    rho = random_density(4, 3, rng)
    r = correlation_matrix(rho)
    basis = hermitian_basis(2)
    rebuilt = sum(
        r[i, j] * kron(basis[i], basis[j]) for i in range(4) for j in range(4)
    )
    np.testing.assert_allclose(rebuilt, rho.matrix, atol=1e-10)


def test_correlation_rank_witness(rng):
    assert correlation_rank(random_product((2, 2), rng)).rank == 1
    for eta in np.linspace(0, 1, 11):
        assert correlation_rank(cc_family(eta)).rank <= 2
    rank, witnessed = correlation_rank(bell_state())
    assert rank == 4 and witnessed
    assert correlation_rank(werner(0.5)).witnessed


def test_witness_implies_discord(rng):
    for _ in range(500):
        rho = random_density(4, int(rng.integers(1, 5)), rng)
        if correlation_rank(rho).witnessed:
            assert discord(rho).discord > 0.0


def test_measure_registry():
    assert set(MEASURES) == {"discord", "mutual_information", "eof", "concurrence"}
    assert math.isclose(get_measure("eof")(bell_state()), 1.0, abs_tol=1e-6)
    with pytest.raises(ValueError):
        get_measure("negativity")
