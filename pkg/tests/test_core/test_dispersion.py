import math

import numpy as np
import pytest

from src.core.exceptions import PreconditionError
from src.core.schemas import PhysicalParams
from src.core.service import CoreModel


def test_continuum_dispersion_is_quadratic_with_unit_eps0(params):
    assert CoreModel.dispersion(0.0, params) == 0.0
    assert CoreModel.dispersion(1.0, params) == pytest.approx(params.eps0)
    assert CoreModel.dispersion(2.0, params) == pytest.approx(4.0 * params.eps0)


def test_lattice_dispersion_matches_continuum_at_small_k(params):
    k = 1e-3
    lattice = CoreModel.dispersion(k, params, form="lattice")
    continuum = CoreModel.dispersion(k, params)
    assert lattice == pytest.approx(continuum, rel=1e-6)


def test_lattice_dispersion_sums_over_axes():
    params = PhysicalParams(t=1.0, a=1.0)
    k = np.array([math.pi, math.pi, 0.0])
    # t (1 - cos pi) per axis
    assert CoreModel.dispersion(k, params, form="lattice") == pytest.approx(4.0)


def test_negative_wavevector_is_rejected(params):
    with pytest.raises(PreconditionError) as exc:
        CoreModel.dispersion(-0.1, params)
    assert "non-negative" in str(exc.value)


def test_unknown_dispersion_form_is_rejected(params):
    with pytest.raises(PreconditionError):
        CoreModel.dispersion(1.0, params, form="tight")


def test_form_factor_values():
    assert CoreModel.nsr_form_factor(0.0, 1.0) == 1.0
    assert CoreModel.nsr_form_factor(1.0, 1.0) == pytest.approx(1.0 / math.sqrt(2.0))
    assert CoreModel.nsr_form_factor(3.0, 3.0) == pytest.approx(1.0 / math.sqrt(2.0))


def test_form_factor_rejects_bad_inputs():
    with pytest.raises(PreconditionError):
        CoreModel.nsr_form_factor(1.0, 0.0)
    with pytest.raises(PreconditionError):
        CoreModel.nsr_form_factor(-1.0, 1.0)


def test_form_factor_is_strictly_decreasing_and_bounded():
    k = np.linspace(0.0, 50.0, 2001)
    values = CoreModel.nsr_form_factor(k, 1.0)
    assert np.all(np.diff(values) < 0)
    assert np.all(values <= 1.0)


def test_continuum_dispersion_is_monotone_and_convex(params):
    k = np.linspace(0.0, 50.0, 2001)
    energies = CoreModel.dispersion(k, params)
    assert np.all(np.diff(energies) > 0)
    assert np.all(np.diff(energies, n=2) > 0)


@pytest.mark.parametrize("k", np.logspace(-5, -3, 9))
def test_lattice_departs_from_continuum_by_at_most_a_tenth_of_ka_squared(params, k):
    lattice = CoreModel.dispersion(k, params, form="lattice")
    continuum = CoreModel.dispersion(k, params)
    assert abs(lattice - continuum) / continuum <= (k * params.a) ** 2 / 10.0
