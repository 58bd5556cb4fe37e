import pytest
from pydantic import ValidationError
from scipy import constants

from src.chain.schemas import ChainSpec
from src.chain.service import JosephsonChain
from src.core.exceptions import PreconditionError
from tests.helpers import _make_chain


def test_parallel_plate_charging_energy():
    E_c = JosephsonChain.charging_energy(constants.epsilon_0, 1e-12, 1e-9)
    assert E_c == pytest.approx(9.05e-6, rel=1e-3)


def test_charging_energy_scales_with_thickness():
    thin = JosephsonChain.charging_energy(constants.epsilon_0, 1e-12, 1e-9)
    thick = JosephsonChain.charging_energy(constants.epsilon_0, 1e-12, 2e-9)
    assert thick == pytest.approx(2.0 * thin, rel=1e-15)


def test_equal_segments_josephson_energy():
    assert JosephsonChain.josephson_energy(2.0, 3.0, 0.5, 0.5) == pytest.approx(2.0**2 * 3.0 * 0.5 / 2.0)


def test_josephson_energy_is_symmetric_in_segments():
    assert JosephsonChain.josephson_energy(1.3, 0.7, 0.2, 0.9) == pytest.approx(
        JosephsonChain.josephson_energy(1.3, 0.7, 0.9, 0.2), rel=1e-15
    )


def test_zero_hopping_decouples_segments():
    assert JosephsonChain.josephson_energy(0.0, 1.0, 0.2, 0.3) == 0.0


@pytest.mark.parametrize(
    "args",
    [(-1.0, 1.0, 0.2, 0.2), (1.0, 0.0, 0.2, 0.2), (1.0, 1.0, 0.0, 0.2)],
)
def test_invalid_josephson_arguments(args):
    with pytest.raises(PreconditionError):
        JosephsonChain.josephson_energy(*args)


def test_charging_energy_rejects_non_positive_geometry():
    with pytest.raises(PreconditionError):
        JosephsonChain.charging_energy(constants.epsilon_0, 0.0, 1e-9)


def test_segment_amplitude():
    assert JosephsonChain.bar_delta(2.0, 0.3, 4.0) == pytest.approx(0.15)
    with pytest.raises(PreconditionError):
        JosephsonChain.bar_delta(2.0, 0.3, 0.0)


def test_chain_spec_accepts_consistent_constituents():
    spec = _make_chain(6, G=1.0, U=1.0, Delta=0.2)
    assert spec.E_J == pytest.approx(0.1)


def test_chain_spec_rejects_mismatched_josephson_energy():
    with pytest.raises(ValidationError) as exc:
        ChainSpec(N=3, E_c=1.0, E_J=0.5, G=1.0, U=1.0, Delta=[0.2, 0.2, 0.2])
    assert "does not match" in str(exc.value)


def test_chain_spec_needs_one_amplitude_per_segment():
    with pytest.raises(ValidationError):
        ChainSpec(N=3, E_c=1.0, E_J=0.1, G=1.0, U=1.0, Delta=[0.2, 0.2])


def test_chain_spec_geometry_must_be_complete_and_consistent():
    E_c = JosephsonChain.charging_energy(constants.epsilon_0, 1e-12, 1e-9)
    spec = ChainSpec(N=2, E_c=E_c, E_J=1e-5, epsilon=constants.epsilon_0, S=1e-12, d=1e-9)
    assert spec.d == 1e-9
    with pytest.raises(ValidationError):
        ChainSpec(N=2, E_c=E_c, E_J=1e-5, epsilon=constants.epsilon_0, S=1e-12)
    with pytest.raises(ValidationError):
        ChainSpec(N=2, E_c=2.0 * E_c, E_J=1e-5, epsilon=constants.epsilon_0, S=1e-12, d=1e-9)


def test_single_segment_chain_is_rejected():
    with pytest.raises(ValidationError):
        ChainSpec(N=1, E_c=1.0, E_J=1.0)
