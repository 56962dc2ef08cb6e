import math

import numpy as np
import pytest

from common.errors import ConfigError, DimensionError, InvalidStateError, StateParseError
from common.linalg import hadamard, kron, pauli_matrices
from common.states import (
    DensityMatrix,
    FamilyTag,
    ad_initial_state,
    bell_state,
    bell_vector,
    cc_family,
    family_point,
    format_state,
    four_qubit_cc_state,
    hadamard_rotated_cc,
    is_classical,
    is_product,
    isotropic,
    load_state,
    mixture_family,
    parse_state,
    pseudo_pure,
    random_density,
    random_product,
    random_pure,
    save_state,
    werner,
)
from conftest import random_unitary


@pytest.mark.parametrize("tag", ["cc", "werner", "isotropic", "mixture", "cc_noisy", "pseudo_pure"])
@pytest.mark.parametrize("param", [0.0, 0.3, 1.0])
def test_families_are_states(tag, param):
    point = family_point(tag, param)
    assert point.family is FamilyTag(tag)
    assert point.state.dims == (2, 2)
    assert abs(np.trace(point.state.matrix) - 1) < 1e-12
    assert point.state.eigenvalues()[-1] >= 0.0


def test_family_parameter_out_of_range():
    with pytest.raises(ValueError):
        cc_family(1.5)
    with pytest.raises(ValueError):
        family_point("random", 0.0)


def test_family_endpoints():
    assert isotropic(0).isclose(DensityMatrix(np.eye(4) / 4, (2, 2)))
    assert isotropic(1).isclose(bell_state())
    assert mixture_family(1).isclose(bell_state())
    assert pseudo_pure(0.4, bell_vector()).isclose(isotropic(0.4))
    # eta = 3/4 gives the maximally mixed Werner state
    assert werner(0.75).isclose(DensityMatrix(np.eye(4) / 4, (2, 2)))


def test_validation_rejects_bad_matrices():
    with pytest.raises(InvalidStateError):
        DensityMatrix(np.eye(4) / 2, (2, 2))
    with pytest.raises(InvalidStateError):
        DensityMatrix(np.diag([1.5, -0.5, 0, 0]), (2, 2))
    with pytest.raises(InvalidStateError):
        DensityMatrix(np.array([[0.5, 0.5], [0, 0.5]]), (2,))
    with pytest.raises(DimensionError):
        DensityMatrix(np.eye(4) / 4, (2, 3))


def test_product_and_classical_predicates(rng):
    assert is_product(random_product((2, 2), rng))
    assert not is_product(bell_state())
    assert is_classical(cc_family(0.5))
    assert is_classical(hadamard_rotated_cc())
    assert not is_classical(bell_state())
    assert not is_classical(mixture_family(0.3))


def test_four_qubit_state_is_classical_with_quantum_reduction():
    rho = four_qubit_cc_state(0.5)
    assert rho.bipartite_dims == (4, 4)
    assert is_classical(rho)
    assert not is_classical(rho.marginal([1, 2]))


def test_random_density_rank(rng):
    for rank in (1, 2, 3, 4):
        rho = random_density(4, rank, rng)
        assert rho.dims == (2, 2)
        assert int(np.sum(rho.eigenvalues() > 1e-10)) == rank


def test_random_pure_is_pure(rng):
    assert abs(random_pure((2, 2), rng).purity() - 1) < 1e-12


def test_seeded_sampling_is_reproducible():
    assert random_density(4, 3, seed=5).isclose(random_density(4, 3, seed=5), atol=0)


def test_swap_exchanges_marginals(rng):
    rho = random_density(4, 4, rng)
    swapped = rho.swap()
    assert swapped.marginal_a().isclose(rho.marginal_b())
    assert swapped.marginal_b().isclose(rho.marginal_a())


def test_relabelled_observable_has_same_expectation(rng):
    # Tr[(U rho U^dagger) O] == Tr[rho (U^dagger O U)]
    rho = random_density(4, 4, rng)
    U = kron(random_unitary(rng, 2), random_unitary(rng, 2))
    sx, _, sz = pauli_matrices()
    O = kron(sz, sx)
    lhs = rho.conjugate(U).expectation(O)
    rhs = rho.expectation(U.conj().T @ O @ U)
    assert abs(lhs - rhs) < 1e-12


def test_state_file_round_trip(tmp_path, rng):
    rho = random_density(4, 2, rng)
    path = tmp_path / "state.txt"
    save_state(rho, path)
    assert load_state(path).isclose(rho, atol=1e-15)
    assert format_state(rho).startswith("dims: 2 2\n")


def test_parse_state_reports_position():
    text = "dims: 2\n0.5 0\n0 zero\n"
    with pytest.raises(StateParseError) as info:
        parse_state(text)
    assert info.value.line == 3
    assert info.value.column == 3
    assert "line 3, column 3" in str(info.value)


def test_parse_state_errors():
    with pytest.raises(StateParseError, match="dims"):
        parse_state("size: 2\n1 0\n0 0\n")
    with pytest.raises(StateParseError, match="expected 2 entries"):
        parse_state("dims: 2\n1 0 0\n0 0\n")
    with pytest.raises(StateParseError):
        parse_state("dims: 2\n1 0\n0 1\n")  # trace 2
    with pytest.raises(StateParseError):
        parse_state("")


def test_parse_state_accepts_comments_and_complex_entries():
    text = "# bell\ndims: 2 2\n0.5 0 0 0.5\n0 0 0 0\n0 0 0 0\n0.5 0 0 0.5+0j\n"
    assert parse_state(text).isclose(bell_state())


def test_marginals_of_bell_are_maximally_mixed():
    np.testing.assert_allclose(bell_state().marginal_a().matrix, np.eye(2) / 2)
    assert math.isclose(bell_state().purity(), 1.0)


def test_isotropic_spectrum():
    np.testing.assert_allclose(isotropic(0.5).eigenvalues(), [5 / 8, 1 / 8, 1 / 8, 1 / 8], atol=1e-12)


def test_werner_endpoints():
    swap = np.eye(4) - 2 * np.outer([0, 1, -1, 0], [0, 1, -1, 0]) / 2
    np.testing.assert_allclose(werner(1).matrix, (np.eye(4) + swap) / 6, atol=1e-12)
    assert math.isclose(werner(0).purity(), 1.0)


@pytest.mark.parametrize("eta", [0.0, 0.3, 0.7, 1.0])
def test_werner_commutes_with_twirl(rng, eta):
    rho = werner(eta).matrix
    for _ in range(5):
        u = random_unitary(rng, 2)
        UU = kron(u, u)
        np.testing.assert_allclose(UU @ rho, rho @ UU, atol=1e-12)


def test_random_density_default_split():
    assert random_density(4, 1, seed=0).dims == (2, 2)
    assert random_density(16, 2, seed=0).dims == (4, 4)
    assert random_density(8, 2, seed=0).dims == (2, 4)
    assert random_density(6, 2, seed=0).dims == (2, 3)


def test_full_rank_random_states_average_to_maximally_mixed(rng):
    mean = sum(random_density(4, 4, rng).matrix for _ in range(10_000)) / 10_000
    assert np.linalg.norm(mean - np.eye(4) / 4, 2) <= 0.02


def test_ad_initial_state_is_rotated_cc_state():
    U = kron(hadamard(), np.eye(2))
    assert ad_initial_state().isclose(cc_family(0.5).conjugate(U))


def test_missing_state_file(tmp_path):
    with pytest.raises(ConfigError):
        load_state(tmp_path / "absent.txt")
