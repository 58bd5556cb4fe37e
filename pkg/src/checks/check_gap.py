from src.checks.schemas import CheckResult
from src.core.schemas import PhysicalParams
from src.core.service import CoreModel
from src.gap.solver import GapSolver


def check_threshold(params: PhysicalParams | None = None) -> CheckResult:
    params = params or PhysicalParams()
    Uc = CoreModel.critical_coupling(params)
    binding = GapSolver.bound_state_energy(Uc, params=params) or 0.0
    residual = abs(GapSolver.gap_residual(0.0, 0.0, Uc, params=params))
    return CheckResult(
        name="threshold",
        passed=abs(binding) <= 1e-8 * params.eps0 and residual <= 1e-10,
        measured={"Uc": Uc, "E_b_over_eps0": binding / params.eps0, "identity_residual": residual},
    )
