import math

import numpy as np
import pytest

from common.channels import (
    KrausChannel,
    LocalChannelPair,
    amplitude_damping,
    amplitude_damping_at,
    apply_local,
    apply_one_side,
    channel_from_unitary,
    damping_probability,
    depolarizing,
    dilate,
    hidden_quantumness_pair,
    identity_channel,
    local_unitary_pair,
    random_channel,
    unitary_channel,
)
from common.errors import DimensionError
from common.linalg import generator_from_unitary, hadamard, kron, partial_trace, swap_operator
from common.states import (
    DensityMatrix,
    bell_state,
    cc_family,
    four_qubit_cc_state,
    is_product,
    random_density,
    random_product,
)
from measures import discord, mutual_information
from conftest import random_unitary

ZERO = np.diag([1.0, 0.0]).astype(complex)
PLUS = 0.5 * np.ones((2, 2), dtype=complex)


def test_amplitude_damping_endpoints(rng):
    rho = random_density(2, 2, rng, dims=(2,))
    np.testing.assert_allclose(amplitude_damping(0).apply(rho.matrix), rho.matrix, atol=1e-12)
    np.testing.assert_allclose(amplitude_damping(1).apply(rho.matrix), ZERO, atol=1e-12)
    with pytest.raises(ValueError):
        amplitude_damping(1.2)


def test_damping_probability_from_time():
    assert math.isclose(damping_probability(math.log(2)), 0.5)
    assert damping_probability(0.0) == 0.0
    assert amplitude_damping_at(math.log(2)).rank == 2
    with pytest.raises(ValueError):
        damping_probability(-1.0)


def test_completeness_is_enforced():
    with pytest.raises(DimensionError):
        KrausChannel((0.5 * np.eye(2),))


def test_identity_pair_leaves_state_unchanged(rng):
    rho = random_density(4, 3, rng)
    pair = LocalChannelPair(identity_channel(2), identity_channel(2))
    assert apply_local(pair, rho).isclose(rho)


def test_full_depolarizing_on_a_of_bell():
    out = apply_one_side(depolarizing(1.0), bell_state(), "A")
    np.testing.assert_allclose(out.matrix, np.eye(4) / 4, atol=1e-12)


def test_dilated_identity_has_one_kraus_operator():
    channel = dilate(np.zeros(16), 2)
    assert channel.rank == 1
    np.testing.assert_allclose(channel.kraus_ops[0], np.eye(2))


def test_dilated_swap_is_replacement_channel(rng):
    channel = dilate(generator_from_unitary(swap_operator(2)), 2)
    rho = random_density(2, 2, rng, dims=(2,))
    np.testing.assert_allclose(channel.apply(rho.matrix), ZERO, atol=1e-10)


def _one_side_oracle(U, rho, side):
    """Tr_anc[U (|0><0| (x) rho) U^dagger] with the ancilla next to the acted-on qubit."""
    if side == "A":
        joint = kron(ZERO, rho.matrix)  # anc, A, B
        W = kron(U, np.eye(2))
        keep = [1, 2]
    else:
        # Reorder A, B, anc into A, anc, B
        joint = kron(rho.matrix, ZERO).reshape(2, 2, 2, 2, 2, 2)
        joint = joint.transpose(0, 2, 1, 3, 5, 4).reshape(8, 8)
        W = kron(np.eye(2), U)
        keep = [0, 2]
    out = W @ joint @ W.conj().T
    return partial_trace(out, (2, 2, 2), keep)


def test_dilation_matches_ancilla_conjugation(rng):
    for _ in range(50):
        U_a = random_unitary(rng, 4)
        U_b = random_unitary(rng, 4)
        rho = random_density(4, int(rng.integers(1, 5)), rng)
        channel_a = channel_from_unitary(U_a, 2)
        channel_b = channel_from_unitary(U_b, 2)

        after_a = apply_one_side(channel_a, rho, "A")
        np.testing.assert_allclose(after_a.matrix, _one_side_oracle(U_a, rho, "A"), atol=1e-12)

        both = apply_local(LocalChannelPair(channel_a, channel_b), rho)
        np.testing.assert_allclose(both.matrix, _one_side_oracle(U_b, after_a, "B"), atol=1e-12)


def test_random_channel_rank_and_completeness():
    channel = random_channel(2, 2, seed=3)
    assert channel.rank <= 2
    completeness = sum(E.conj().T @ E for E in channel.kraus_ops)
    np.testing.assert_allclose(completeness, np.eye(2), atol=1e-10)


def test_local_channels_keep_products_uncorrelated(rng):
    for seed in range(10):
        rho = random_product((2, 2), rng)
        pair = LocalChannelPair(random_channel(2, 2, seed), random_channel(2, 2, seed + 100))
        out = apply_local(pair, rho)
        assert is_product(out)
        assert mutual_information(out) <= 1e-9


def test_channels_preserve_trace_and_positivity(rng):
    for seed in range(10):
        rho = random_density(4, int(rng.integers(1, 5)), rng)
        pair = LocalChannelPair(random_channel(2, 4, seed), random_channel(2, 2, seed + 1))
        out = apply_local(pair, rho)
        assert abs(np.trace(out.matrix) - 1) < 1e-10
        assert np.linalg.eigvalsh(out.matrix).min() >= -1e-9


def test_local_unitary_pair():
    identity = local_unitary_pair(np.zeros(4), np.zeros(4))
    rho = cc_family(0.5)
    assert apply_local(identity, rho).isclose(rho)
    hadamard_a = LocalChannelPair(unitary_channel(hadamard()), identity_channel(2))
    out = apply_local(hadamard_a, rho)
    np.testing.assert_allclose(out.marginal_a().matrix, np.eye(2) / 2, atol=1e-12)


@pytest.mark.parametrize("eta", [0.1, 0.5, 0.9])
def test_hidden_quantumness_construction(eta):
    out = apply_local(hidden_quantumness_pair(), cc_family(eta))
    expected = (1 - eta) * kron(ZERO, ZERO) + eta * kron(PLUS, PLUS)
    np.testing.assert_allclose(out.matrix, expected, atol=1e-12)
    assert discord(out).discord > 0.0


def test_hidden_quantumness_reveals_discord_of_maximal_cc_state():
    out = apply_local(hidden_quantumness_pair(), cc_family(0.5))
    assert discord(out).discord > 0.19


def test_extended_state_reduction_matches_construction():
    reduction = four_qubit_cc_state(0.3).marginal([1, 2])
    expected = 0.3 * kron(ZERO, ZERO) + 0.7 * kron(PLUS, PLUS)
    np.testing.assert_allclose(reduction.matrix, expected, atol=1e-12)
    assert isinstance(reduction, DensityMatrix)
