import logging
import math

import numpy as np
import pytest

from src.chain.schemas import CoherenceLabel
from src.chain.service import JosephsonChain
from src.core.exceptions import PreconditionError
from tests.helpers import _make_chain


def test_phase_variance_values():
    assert JosephsonChain.sigma_phi2(1.0, 2.0) == pytest.approx(1.0)
    assert JosephsonChain.sigma_phi2(8.0, 1.0) == pytest.approx(4.0)


def test_uncoupled_segments_have_infinite_variance(caplog):
    with caplog.at_level(logging.WARNING):
        assert JosephsonChain.sigma_phi2(1.0, 0.0) == math.inf
    assert "E_J = 0" in caplog.text


def test_phase_variance_rejects_bad_energies():
    with pytest.raises(PreconditionError):
        JosephsonChain.sigma_phi2(0.0, 1.0)
    with pytest.raises(PreconditionError):
        JosephsonChain.sigma_phi2(1.0, -1.0)


def test_ground_state_reports_three_variances():
    state = JosephsonChain.chain_ground_state(_make_chain(E_c=0.05))
    assert state.sigma2 == pytest.approx(1.0)
    assert state.sigma2_oscillator == pytest.approx(2.0)
    assert state.sigma2_wavefunction == pytest.approx(0.5)
    assert state.width == pytest.approx(0.5)
    assert state.mean_phase_difference == 0.0
    assert state.discrepancy
    assert set(state.labelled) == {"stated", "oscillator", "wavefunction"}


def test_ground_state_needs_coupling():
    with pytest.raises(PreconditionError):
        JosephsonChain.chain_ground_state(_make_chain(G=0.0))


def test_self_correlation():
    assert JosephsonChain.odlro(2, 2, [0.1, 0.2, 0.3], 0.7) == pytest.approx(2.0 * math.pi * 0.09)


def test_correlation_ratio_decays_exponentially():
    bars = [0.3] * 6
    sigma2 = 0.4
    for d in range(1, 6):
        ratio = JosephsonChain.odlro(0, d, bars, sigma2) / JosephsonChain.odlro(0, 0, bars, sigma2)
        assert ratio == pytest.approx(math.exp(-d * sigma2), rel=1e-14)


def test_correlation_at_distance_three():
    value = JosephsonChain.odlro(0, 3, [1.0] * 4, 1.0, normalize=True)
    assert value == pytest.approx(math.exp(-3.0), rel=1e-15)


def test_correlation_is_symmetric(rng):
    bars = rng.uniform(0.1, 1.0, 7).tolist()
    assert JosephsonChain.odlro(1, 5, bars, 0.3) == JosephsonChain.odlro(5, 1, bars, 0.3)


def test_index_outside_chain_is_rejected():
    with pytest.raises(PreconditionError):
        JosephsonChain.odlro(0, 4, [0.1] * 4, 0.3)


@pytest.mark.parametrize("sigma2", [0.01, 1.0, 3.7])
def test_log_correlation_slope_is_minus_variance(sigma2):
    assert JosephsonChain.odlro_decay_slope([0.3] * 10, sigma2) == pytest.approx(-sigma2, abs=1e-12)


def test_slope_removes_segment_amplitudes():
    Delta_bars = [0.3, 0.5, 0.2, 0.4, 0.6]
    assert JosephsonChain.odlro_decay_slope(Delta_bars, 1.0) == pytest.approx(-1.0, abs=1e-12)
    assert JosephsonChain.odlro_decay_slope(Delta_bars[::-1], 0.25) == pytest.approx(-0.25, abs=1e-12)


def test_profile_distances_from_origin():
    distances, values = JosephsonChain.odlro_profile([0.2] * 5, 0.5, origin=2)
    assert distances.tolist() == [2, 1, 0, 1, 2]
    assert np.argmax(values) == 2


@pytest.mark.parametrize(
    "E_c,E_J,expected",
    [
        (1.0, 3.0, CoherenceLabel.global_),
        (1.0, 0.0, CoherenceLabel.local),
        (1.0, 1.0, CoherenceLabel.local),
        (1.0, 2.0, CoherenceLabel.boundary),
        (1e-6, 2e-6, CoherenceLabel.boundary),
        (50.0, 100.0 * (1.0 + 1e-10), CoherenceLabel.boundary),
        (50.0, 100.0 * (1.0 + 1e-8), CoherenceLabel.global_),
    ],
)
def test_coherence_classification(E_c, E_J, expected):
    assert JosephsonChain.coherence_classify(E_c, E_J) is expected


def test_classification_is_scale_invariant(rng):
    for _ in range(10):
        E_c, E_J = rng.uniform(0.1, 10.0, 2)
        scale = 10.0 ** rng.uniform(-6, 6)
        assert JosephsonChain.coherence_classify(E_c, E_J) is JosephsonChain.coherence_classify(
            scale * E_c, scale * E_J
        )
