import numpy as np
import pytest

from src.core.schemas import PhysicalParams
from src.core.service import CoreModel
from src.gap.schemas import QuadratureSpec
from src.gap.solver import GapSolver
from tests.helpers import _solve


@pytest.fixture(scope="session")
def params():
    return PhysicalParams()


@pytest.fixture(scope="session")
def quad():
    return QuadratureSpec()


@pytest.fixture(scope="session")
def weak_point(params):
    return _solve(0.5, params)


@pytest.fixture(scope="session")
def unitary_point(params):
    return _solve(2.0, params)


@pytest.fixture(scope="session")
def strong_point(params):
    return _solve(4.0, params)


@pytest.fixture(scope="session")
def coupling_sweep(params):
    """50 точек U/U_c на [0.5, 4] при n = 0.02 k0^3."""
    Uc = CoreModel.critical_coupling(params)
    return GapSolver.sweep_coupling(np.linspace(0.5, 4.0, 50) * Uc, params.n, params=params)


@pytest.fixture
def rng():
    return np.random.default_rng(20240531)
