import math

import pytest

from src.chain.oscillator import HarmonicOracle
from src.core.exceptions import OracleError, PreconditionError


@pytest.fixture(scope="module")
def unit_oscillator():
    return HarmonicOracle.oscillator_oracle(1.0, 1.0)


def test_variance_matches_literal_hamiltonian(unit_oscillator):
    assert unit_oscillator.closed_form_variance == pytest.approx(2.828427, rel=1e-6)
    assert unit_oscillator.relative_error <= 1e-6


def test_ground_energy_matches_closed_form(unit_oscillator):
    assert unit_oscillator.ground_energy == pytest.approx(0.5 * math.sqrt(32.0), rel=1e-6)


def test_grid_convergence_is_second_order(unit_oscillator):
    assert 1.8 <= unit_oscillator.convergence_order <= 2.2


def test_stated_variance_is_shown_with_discrepancy(unit_oscillator):
    assert unit_oscillator.stated_variance == pytest.approx(1.414214, rel=1e-6)
    assert unit_oscillator.discrepancy


def test_quadrupling_charging_energy_doubles_ground_energy(unit_oscillator):
    result = HarmonicOracle.oscillator_oracle(4.0, 1.0)
    assert result.ground_energy == pytest.approx(2.0 * unit_oscillator.ground_energy, rel=1e-6)


def test_boundary_tail_is_negligible(unit_oscillator):
    assert unit_oscillator.boundary_tail <= 1e-12
    assert unit_oscillator.points == 4001


def test_narrow_span_is_reported():
    with pytest.raises(OracleError) as exc:
        HarmonicOracle.oscillator_oracle(1.0, 1.0, span=2.0)
    assert "too narrow" in str(exc.value)


def test_oracle_needs_positive_energies():
    with pytest.raises(PreconditionError):
        HarmonicOracle.oscillator_oracle(1.0, 0.0)
