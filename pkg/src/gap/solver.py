import logging
import math
from typing import Sequence

import numpy as np
from scipy import optimize

from src.config import SolverConfig
from src.core.exceptions import ConvergenceError, CrossoverError, PreconditionError
from src.core.schemas import PhysicalParams
from src.core.service import CoreModel
from src.gap.quadrature import RadialMesh, integrate, integrate_checked, radial_mesh
from src.gap.schemas import GapSolution, QuadratureSpec
from src.gap.validators import ensure_non_negative_gap, ensure_sorted_grid

log = logging.getLogger(__name__)

_DEFAULT_PARAMS = PhysicalParams()
_DEFAULT_QUAD = QuadratureSpec()
_DEFAULT_SOLVER = SolverConfig()


def _gap_integrand(gap: float):
    def f(mesh: RadialMesh) -> np.ndarray:
        form2 = 1.0 / (1.0 + mesh.x**2)
        return mesh.x**2 * form2 / np.sqrt(mesh.shift**2 + gap**2 * form2)

    return f


def _number_integrand(gap: float):
    def f(mesh: RadialMesh) -> np.ndarray:
        s = mesh.shift
        pair = gap**2 / (1.0 + mesh.x**2)
        xi = np.sqrt(s**2 + pair)
        # 1 - s/xi rewritten for s > 0 to avoid cancellation
        occupancy = np.where(s > 0, pair / (xi * (xi + np.abs(s))), 1.0 - s / xi)
        return mesh.x**2 * occupancy

    return f


def _bound_integrand(binding: float):
    def f(mesh: RadialMesh) -> np.ndarray:
        return mesh.x**2 / ((1.0 + mesh.x**2) * (2.0 * mesh.x**2 + binding))

    return f


class GapSolver:
    """Zero-temperature gap and number equations with the NSR separable interaction.

    Internally momenta are measured in k0 and energies in eps0; with this
    choice the gap equation reads 1 = (2/pi)(U/U_c) J_gap and the density
    n / k0^3 = J_number / (2 pi^2).
    """

    @staticmethod
    def _gap_integral(mu: float, gap: float, quad: QuadratureSpec) -> float:
        mesh = radial_mesh(mu, gap, quad)
        return integrate(_gap_integrand(gap)(mesh), mesh, quad)

    @staticmethod
    def _number_integral(mu: float, gap: float, quad: QuadratureSpec) -> float:
        mesh = radial_mesh(mu, gap, quad)
        return integrate(_number_integrand(gap)(mesh), mesh, quad)

    @staticmethod
    def gap_residual(
        Delta0: float,
        mu: float,
        U: float,
        quad: QuadratureSpec = _DEFAULT_QUAD,
        params: PhysicalParams = _DEFAULT_PARAMS,
    ) -> float:
        ensure_non_negative_gap(Delta0)
        ratio = U / CoreModel.critical_coupling(params)
        if ratio == 0.0:
            return 1.0
        mu_r, gap_r = mu / params.eps0, Delta0 / params.eps0
        if gap_r == 0.0 and mu_r > 0.0:
            # logarithmic divergence at the Fermi surface
            return -math.inf
        value, _ = integrate_checked(_gap_integrand(gap_r), mu_r, gap_r, quad)
        return 1.0 - (2.0 / math.pi) * ratio * value

    @staticmethod
    def number_residual(
        Delta0: float,
        mu: float,
        n: float,
        quad: QuadratureSpec = _DEFAULT_QUAD,
        params: PhysicalParams = _DEFAULT_PARAMS,
    ) -> float:
        ensure_non_negative_gap(Delta0)
        if n <= 0:
            raise PreconditionError("Density must be positive")
        mu_r, gap_r = mu / params.eps0, Delta0 / params.eps0
        n_r = n / params.k0**3
        value, _ = integrate_checked(_number_integrand(gap_r), mu_r, gap_r, quad)
        return (n_r - value / (2.0 * math.pi**2)) / n_r

    @staticmethod
    def bound_state_energy(
        U: float,
        quad: QuadratureSpec = _DEFAULT_QUAD,
        params: PhysicalParams = _DEFAULT_PARAMS,
    ) -> float | None:
        """Энергия связи двух частиц или None, если U <= U_c."""
        if U <= 0:
            raise PreconditionError("U must be positive")
        ratio = U / CoreModel.critical_coupling(params)

        def equation(binding: float) -> float:
            mesh = radial_mesh(-0.5 * binding, 0.0, quad)
            return (4.0 / math.pi) * ratio * integrate(_bound_integrand(binding)(mesh), mesh, quad) - 1.0

        at_threshold = equation(0.0)
        if at_threshold <= 0.0:
            return 0.0 if abs(at_threshold) <= 1e-10 else None
        upper = 1.0
        while equation(upper) > 0.0:
            upper *= 2.0
            if upper > 1e12:
                raise ConvergenceError("No bracket for the bound-state energy", {"upper": upper})
        binding = optimize.brentq(equation, 0.0, upper, xtol=1e-15, rtol=1e-14, maxiter=_DEFAULT_SOLVER.max_iterations)
        return binding * params.eps0

    @staticmethod
    def bound_state_energy_closed_form(U: float, params: PhysicalParams = _DEFAULT_PARAMS) -> float | None:
        # for the NSR form factor the bound-state equation integrates to
        # U/U_c = 1 + q/k0 with E_b = 2 eps0 (q/k0)^2
        ratio = U / CoreModel.critical_coupling(params)
        if ratio < 1.0:
            return None
        return 2.0 * params.eps0 * (ratio - 1.0) ** 2

    @staticmethod
    def _solve_gap_at(mu_r: float, ratio: float, quad: QuadratureSpec, cfg: SolverConfig) -> float:
        """Reduced gap solving the gap equation at fixed reduced mu, 0.0 below resolution."""

        def residual(log_gap: float) -> float:
            gap = math.exp(log_gap)
            return 1.0 - (2.0 / math.pi) * ratio * GapSolver._gap_integral(mu_r, gap, quad)

        floor = math.log(cfg.gap_resolution)
        if residual(floor) >= 0.0:
            return 0.0
        upper = math.log(max(1.0, 2.0 * abs(mu_r)))
        steps = 0
        while residual(upper) <= 0.0:
            upper += math.log(2.0)
            steps += 1
            if steps > 200:
                raise ConvergenceError("No upper bracket for the gap", {"mu": mu_r, "log_gap": upper})
        root = optimize.brentq(residual, floor, upper, xtol=1e-15, rtol=1e-14, maxiter=cfg.max_iterations)
        return math.exp(root)

    @staticmethod
    def _bracket_mu(number_error, guess: float, step: float, budget: int) -> tuple[float, float]:
        lo, hi = guess - step, guess + step
        for _ in range(budget):
            lo_ok = number_error(lo) > 0.0
            hi_ok = number_error(hi) < 0.0
            if lo_ok and hi_ok:
                return lo, hi
            if not lo_ok:
                lo -= step
            if not hi_ok:
                hi += step
            step *= 2.0
        raise ConvergenceError("No bracket for the chemical potential", {"mu_lo": lo, "mu_hi": hi})

    @staticmethod
    def _newton_polish(mu_r, gap_r, ratio, n_r, quad, cfg):
        def equations(z):
            gap = math.exp(z[1])
            return [
                1.0 - (2.0 / math.pi) * ratio * GapSolver._gap_integral(z[0], gap, quad),
                (n_r - GapSolver._number_integral(z[0], gap, quad) / (2.0 * math.pi**2)) / n_r,
            ]

        result = optimize.root(equations, [mu_r, math.log(gap_r)], method="hybr", options={"maxfev": cfg.max_iterations})
        return float(result.x[0]), math.exp(float(result.x[1]))

    @staticmethod
    def solve_self_consistent(
        U: float,
        n: float,
        quad: QuadratureSpec = _DEFAULT_QUAD,
        params: PhysicalParams = _DEFAULT_PARAMS,
        solver: SolverConfig = _DEFAULT_SOLVER,
        warm_start: float | None = None,
    ) -> GapSolution:
        """Solve both equations for (mu, Delta0).

        Outer bracketed root search on mu, inner bracketed search on log Delta0
        at fixed mu; a 2D Newton step polishes the pair if the residuals miss
        their tolerances. ``warm_start`` is a previous chemical potential used
        only to place the initial bracket.
        """
        if U <= 0:
            raise PreconditionError("U must be positive")
        if n <= 0:
            raise PreconditionError("Density must be positive")
        Uc = CoreModel.critical_coupling(params)
        ratio = U / Uc
        n_r = n / params.k0**3
        eps_f_r = (3.0 * math.pi**2 * n_r) ** (2.0 / 3.0)
        eps_fermi = eps_f_r * params.eps0

        gaps: dict[float, float] = {}

        def gap_at(mu_r: float) -> float:
            if mu_r not in gaps:
                gaps[mu_r] = GapSolver._solve_gap_at(mu_r, ratio, quad, solver)
            return gaps[mu_r]

        def number_error(mu_r: float) -> float:
            return (n_r - GapSolver._number_integral(mu_r, gap_at(mu_r), quad) / (2.0 * math.pi**2)) / n_r

        if warm_start is not None:
            guess = warm_start / params.eps0
        else:
            binding = GapSolver.bound_state_energy_closed_form(U, params) or 0.0
            guess = eps_f_r if binding == 0.0 else -0.5 * binding / params.eps0
        step = max(0.1 * abs(guess), 0.05 * eps_f_r)
        try:
            lo, hi = GapSolver._bracket_mu(number_error, guess, step, solver.max_iterations)
            log.debug("mu bracket for U/Uc=%.6g: [%.6g, %.6g]", ratio, lo, hi)
            mu_r, info = optimize.brentq(
                number_error, lo, hi, xtol=1e-15, rtol=1e-14, maxiter=solver.max_iterations, full_output=True
            )
            gap_r = gap_at(mu_r)
        except RuntimeError as e:
            last = list(gaps.items())[-1] if gaps else (guess, math.nan)
            raise ConvergenceError(
                f"Root search failed at U/Uc={ratio:.6g}: {e}",
                {"mu": last[0] * params.eps0, "Delta0": last[1] * params.eps0},
            ) from e
        iterations = info.iterations

        def residuals(mu_val: float, gap_val: float) -> tuple[float, float]:
            if gap_val == 0.0:
                res_gap = 1.0 - (2.0 / math.pi) * ratio * GapSolver._gap_integral(mu_val, solver.gap_resolution, quad)
            else:
                res_gap = 1.0 - (2.0 / math.pi) * ratio * GapSolver._gap_integral(mu_val, gap_val, quad)
            res_num = (n_r - GapSolver._number_integral(mu_val, gap_val, quad) / (2.0 * math.pi**2)) / n_r
            return res_gap, res_num

        below = gap_r == 0.0
        res_gap, res_num = residuals(mu_r, gap_r)
        gap_ok = below or abs(res_gap) <= solver.tol_gap
        if not (gap_ok and abs(res_num) <= solver.tol_number) and not below:
            log.warning("Polishing U/Uc=%.6g with Newton: residuals %.3e, %.3e", ratio, res_gap, res_num)
            mu_r, gap_r = GapSolver._newton_polish(mu_r, gap_r, ratio, n_r, quad, solver)
            res_gap, res_num = residuals(mu_r, gap_r)
            gap_ok = abs(res_gap) <= solver.tol_gap
        if not (gap_ok and abs(res_num) <= solver.tol_number):
            raise ConvergenceError(
                f"Self-consistency failed at U/Uc={ratio:.6g}",
                {
                    "mu": mu_r * params.eps0,
                    "Delta0": gap_r * params.eps0,
                    "residual_gap": res_gap,
                    "residual_number": res_num,
                },
            )
        if below:
            log.warning("Gap below resolution at U/Uc=%.6g", ratio)

        return GapSolution(
            U=U,
            n=n,
            mu=mu_r * params.eps0,
            Delta0=gap_r * params.eps0,
            residual_gap=res_gap,
            residual_number=res_num,
            iterations=iterations,
            converged=True,
            below_resolution=below,
            U_over_Uc=ratio,
            eps0=params.eps0,
            eps_fermi=eps_fermi,
            tol_gap=solver.tol_gap,
            tol_number=solver.tol_number,
        )

    @staticmethod
    def failed_solution(U: float, n: float, params: PhysicalParams, error: CrossoverError, solver: SolverConfig) -> GapSolution:
        last = getattr(error, "last_iterate", {}) or {}
        n_r = n / params.k0**3
        return GapSolution(
            U=U,
            n=n,
            mu=last.get("mu", math.nan),
            Delta0=last.get("Delta0", math.nan),
            residual_gap=last.get("residual_gap", math.nan),
            residual_number=last.get("residual_number", math.nan),
            converged=False,
            U_over_Uc=U / CoreModel.critical_coupling(params),
            eps0=params.eps0,
            eps_fermi=(3.0 * math.pi**2 * n_r) ** (2.0 / 3.0) * params.eps0,
            tol_gap=solver.tol_gap,
            tol_number=solver.tol_number,
            error=str(error),
        )

    @staticmethod
    def sweep_coupling(
        U_grid: Sequence[float],
        n: float,
        quad: QuadratureSpec = _DEFAULT_QUAD,
        params: PhysicalParams = _DEFAULT_PARAMS,
        solver: SolverConfig = _DEFAULT_SOLVER,
    ) -> list[GapSolution]:
        ensure_sorted_grid(U_grid, "U_grid")
        table: list[GapSolution] = []
        warm: float | None = None
        for U in U_grid:
            try:
                solution = GapSolver.solve_self_consistent(U, n, quad, params, solver, warm_start=warm)
            except CrossoverError as e:
                log.warning("Sweep point U=%.6g failed: %s", U, e)
                table.append(GapSolver.failed_solution(U, n, params, e, solver))
                warm = None
                continue
            table.append(solution)
            warm = solution.mu
        return table

    @staticmethod
    def locate_mu_zero(
        u_lo: float,
        u_hi: float,
        n: float,
        quad: QuadratureSpec = _DEFAULT_QUAD,
        params: PhysicalParams = _DEFAULT_PARAMS,
        solver: SolverConfig = _DEFAULT_SOLVER,
        xtol: float = 1e-9,
    ) -> float:
        """Coupling U/U_c at which mu changes sign, by a bracketed search between two sweep points."""
        Uc = CoreModel.critical_coupling(params)

        def mu_of(ratio: float) -> float:
            return GapSolver.solve_self_consistent(ratio * Uc, n, quad, params, solver).mu

        mu_lo, mu_hi = mu_of(u_lo), mu_of(u_hi)
        if mu_lo * mu_hi > 0:
            raise PreconditionError("mu does not change sign on the given interval")
        return optimize.brentq(mu_of, u_lo, u_hi, xtol=xtol, maxiter=solver.max_iterations)
