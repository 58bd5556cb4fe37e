import math

import numpy as np
import pytest

from src.coherent.fock import FockOracle
from src.core.exceptions import PreconditionError

H = 1e-3


@pytest.fixture
def oracle(rng):
    return FockOracle(rng.uniform(0.1, 0.5 * math.pi - 0.1, 4))


def _grid(h):
    return 0.3 + h * np.arange(11)


def test_number_operator_is_two_i_phase_derivative(oracle):
    for n_target in (0, 2, 4):
        assert oracle.number_phase_derivative_check(n_target, _grid(H)) <= 1e-5


def test_halving_step_quarters_the_deviation(oracle):
    coarse = oracle.number_phase_derivative_check(4, _grid(H))
    fine = oracle.number_phase_derivative_check(4, _grid(0.5 * H))
    assert 3.5 <= coarse / fine <= 4.5


def test_cooper_pair_number_is_i_phase_derivative(oracle):
    assert oracle.number_phase_derivative_check(4, _grid(H), operator="Nc") <= 1e-5


def test_odd_particle_numbers_give_exact_zero(oracle):
    assert oracle.number_phase_derivative_check(3, _grid(H)) == 0.0
    assert oracle.number_phase_derivative_check(5, _grid(H)) == 0.0


def test_grid_must_be_uniform(oracle):
    with pytest.raises(PreconditionError):
        oracle.number_phase_derivative_check(2, [0.0, 0.1, 0.3, 0.4, 0.5])
    with pytest.raises(PreconditionError):
        oracle.number_phase_derivative_check(2, _grid(H), operator="phase")
