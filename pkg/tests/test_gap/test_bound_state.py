import pytest

from src.core.exceptions import PreconditionError
from src.core.schemas import PhysicalParams
from src.core.service import CoreModel
from src.gap.solver import GapSolver


def test_bound_state_vanishes_at_critical_coupling(params):
    Uc = CoreModel.critical_coupling(params)
    binding = GapSolver.bound_state_energy(Uc, params=params)
    assert binding is not None
    assert abs(binding) <= 1e-8 * params.eps0


def test_threshold_integral_identity(params):
    # U_c * int Gamma^2 / (2 eps) = 1, i.e. the gap residual at mu = Delta = 0 vanishes
    Uc = CoreModel.critical_coupling(params)
    assert abs(GapSolver.gap_residual(0.0, 0.0, Uc, params=params)) <= 1e-10


def test_no_bound_state_below_threshold(params):
    Uc = CoreModel.critical_coupling(params)
    assert GapSolver.bound_state_energy(0.9 * Uc, params=params) is None
    assert GapSolver.bound_state_energy_closed_form(0.9 * Uc, params) is None


@pytest.mark.parametrize("ratio", [1.1, 2.0, 4.0])
def test_quadrature_matches_closed_form(params, ratio):
    Uc = CoreModel.critical_coupling(params)
    binding = GapSolver.bound_state_energy(ratio * Uc, params=params)
    closed = GapSolver.bound_state_energy_closed_form(ratio * Uc, params)
    assert binding == pytest.approx(closed, rel=1e-9)


def test_twice_critical_coupling_binds_at_two_eps0(params):
    Uc = CoreModel.critical_coupling(params)
    assert GapSolver.bound_state_energy(2.0 * Uc, params=params) == pytest.approx(2.0 * params.eps0, rel=1e-9)


def test_physical_units_scale_binding_by_eps0():
    params = PhysicalParams.physical()
    Uc = CoreModel.critical_coupling(params)
    binding = GapSolver.bound_state_energy(2.0 * Uc, params=params)
    assert binding == pytest.approx(2.0 * params.eps0, rel=1e-9)


def test_non_positive_coupling_is_rejected(params):
    with pytest.raises(PreconditionError):
        GapSolver.bound_state_energy(0.0, params=params)


def test_binding_grows_strictly_above_threshold(params):
    Uc = CoreModel.critical_coupling(params)
    bindings = [GapSolver.bound_state_energy(r * Uc, params=params) for r in (1.05, 1.5, 2.0, 3.0, 4.0)]
    assert all(b is not None for b in bindings)
    assert all(left < right for left, right in zip(bindings[:-1], bindings[1:]))
