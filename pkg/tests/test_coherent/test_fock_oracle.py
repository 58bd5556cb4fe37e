import math

import numpy as np
import pytest

from src.coherent.fock import FockOracle
from src.core.exceptions import PreconditionError


def test_single_mode_commutator_is_pauli_z():
    oracle = FockOracle([0.4])
    assert np.allclose(oracle.commutator.toarray(), np.diag([1.0, -1.0]), atol=1e-15)


def test_pair_creation_squares_to_zero():
    oracle = FockOracle([0.3, 0.9, 1.2])
    for op in oracle.S_plus:
        assert (op @ op).count_nonzero() == 0


def test_collective_operator_is_the_weighted_sum(rng):
    thetas = rng.uniform(0.1, 1.4, 4)
    oracle = FockOracle(thetas)
    expected = sum(t * op.toarray() for t, op in zip(thetas, oracle.S_minus)) / math.sqrt(np.sum(thetas**2))
    assert np.array_equal(oracle.b.toarray(), expected)


def test_number_operator_counts_two_particles_per_pair():
    oracle = FockOracle([0.5, 0.7])
    assert oracle.number.diagonal().tolist() == [0.0, 2.0, 2.0, 4.0]
    assert oracle.cooper_pair_number.diagonal().tolist() == [0.0, 1.0, 1.0, 2.0]


def test_product_state_is_normalized(rng):
    oracle = FockOracle(rng.uniform(0.0, 0.5 * math.pi, 8))
    assert np.linalg.norm(oracle.state(1.3)) == pytest.approx(1.0, abs=1e-14)


def test_mean_pair_number_is_sum_of_sin_squared(rng):
    thetas = rng.uniform(0.0, 0.5 * math.pi, 5)
    oracle = FockOracle(thetas)
    pairs = oracle.expectation(oracle.cooper_pair_number, oracle.state(0.2))
    assert pairs.real == pytest.approx(float(np.sum(np.sin(thetas) ** 2)), abs=1e-13)


def test_too_many_modes_are_rejected():
    with pytest.raises(PreconditionError) as exc:
        FockOracle(np.full(13, 0.3))
    assert "12" in str(exc.value)


def test_empty_collective_mode_is_rejected():
    with pytest.raises(PreconditionError):
        FockOracle([0.0, 0.0])
