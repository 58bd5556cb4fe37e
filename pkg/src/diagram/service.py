import logging
import math
from typing import Mapping, Sequence

import numpy as np
from scipy import interpolate, optimize

from src.chain.service import JosephsonChain
from src.config import SolverConfig
from src.const import BOUNDARY_RTOL
from src.core.exceptions import CrossoverError, PreconditionError
from src.core.schemas import PhysicalParams, UnitMode
from src.core.service import CoreModel
from src.diagram.schemas import BoundaryPoint, DiagramCell, PairingLabel, RegimeLabel
from src.gap.schemas import GapSolution, QuadratureSpec
from src.gap.solver import GapSolver
from src.gap.validators import ensure_sorted_grid

log = logging.getLogger(__name__)

_DEFAULT_PARAMS = PhysicalParams()
_DEFAULT_QUAD = QuadratureSpec()
_DEFAULT_SOLVER = SolverConfig()


class PhaseDiagram:
    """Regimes of equal-segment chains over (U, E_c, G).

    The Josephson energy of equal segments is E_J = G^2 Delta / 2 with Delta
    the energy gap, so the coherence boundary E_J = 2 E_c sits at
    G* = sqrt(4 E_c / Delta).
    """

    @staticmethod
    def energy_scale(params: PhysicalParams) -> float:
        """Множитель перевода энергий решателя в единицы диаграммы."""
        return 1e6 if params.units.mode is UnitMode.physical else 1.0

    @staticmethod
    def pairing_label(mu: float, eps_fermi: float, rtol: float = BOUNDARY_RTOL) -> PairingLabel:
        if abs(mu) <= rtol * eps_fermi:
            return PairingLabel.boundary
        return PairingLabel.BCS if mu > 0 else PairingLabel.BEC

    @staticmethod
    def josephson_energy(G: float, gap_energy: float) -> float:
        if G < 0:
            raise PreconditionError("Hopping G must be non-negative")
        return 0.5 * G**2 * gap_energy

    @staticmethod
    def critical_hopping_from_gap(gap_energy: float, E_c: float) -> float:
        if E_c <= 0:
            raise PreconditionError("E_c must be positive")
        if gap_energy <= 0:
            log.warning("Gap below resolution: no finite G* at tolerance")
            return math.inf
        return math.sqrt(4.0 * E_c / gap_energy)

    @staticmethod
    def cell_from_solution(
        solution: GapSolution,
        E_c: float,
        G: float,
        params: PhysicalParams = _DEFAULT_PARAMS,
    ) -> DiagramCell:
        if E_c <= 0:
            raise PreconditionError("E_c must be positive")
        common = {
            "U": solution.U,
            "U_over_Uc": solution.U_over_Uc,
            "n": solution.n,
            "E_c": E_c,
            "G": G,
            "mu": solution.mu,
            "Delta0": solution.Delta0,
            "mu_over_epsF": solution.mu_over_epsF,
            "tol_gap": solution.tol_gap,
            "tol_number": solution.tol_number,
        }
        if not solution.converged:
            return DiagramCell(
                **common,
                gap_energy=math.nan,
                E_J=math.nan,
                sigma2=math.nan,
                converged=False,
                error=solution.error,
            )
        gap_energy = solution.Delta0 * PhaseDiagram.energy_scale(params)
        E_J = PhaseDiagram.josephson_energy(G, gap_energy)
        label = RegimeLabel(
            pairing=PhaseDiagram.pairing_label(solution.mu, solution.eps_fermi),
            coherence=JosephsonChain.coherence_classify(E_c, E_J),
        )
        return DiagramCell(
            **common,
            gap_energy=gap_energy,
            E_J=E_J,
            sigma2=JosephsonChain.sigma_phi2(E_c, E_J),
            converged=True,
            label=label,
        )

    @staticmethod
    def _solve(U, n, quad, params, solver, warm_start=None) -> GapSolution:
        try:
            return GapSolver.solve_self_consistent(U, n, quad, params, solver, warm_start=warm_start)
        except CrossoverError as e:
            log.warning("Gap solve failed at U=%.6g: %s", U, e)
            return GapSolver.failed_solution(U, n, params, e, solver)

    @staticmethod
    def classify_point(
        U: float,
        n: float,
        E_c: float,
        G: float,
        quad: QuadratureSpec = _DEFAULT_QUAD,
        params: PhysicalParams = _DEFAULT_PARAMS,
        solver: SolverConfig = _DEFAULT_SOLVER,
    ) -> DiagramCell:
        if U <= 0 or n <= 0 or E_c <= 0 or G < 0:
            raise PreconditionError("U, n and E_c must be positive, G non-negative")
        solution = PhaseDiagram._solve(U, n, quad, params, solver)
        return PhaseDiagram.cell_from_solution(solution, E_c, G, params)

    @staticmethod
    def critical_hopping(
        U: float,
        n: float,
        E_c: float,
        quad: QuadratureSpec = _DEFAULT_QUAD,
        params: PhysicalParams = _DEFAULT_PARAMS,
        solver: SolverConfig = _DEFAULT_SOLVER,
    ) -> float:
        solution = GapSolver.solve_self_consistent(U, n, quad, params, solver)
        return PhaseDiagram.critical_hopping_from_gap(solution.Delta0 * PhaseDiagram.energy_scale(params), E_c)

    @staticmethod
    def refine_boundary(
        gap_energy: float,
        E_c: float,
        G_lo: float,
        G_hi: float,
        rtol: float = 1e-11,
    ) -> float:
        """Bisection in log G for E_J(G) = 2 E_c between two bracketing hoppings."""
        if not 0 < G_lo < G_hi:
            raise PreconditionError("Need 0 < G_lo < G_hi")

        def excess(log_g: float) -> float:
            return PhaseDiagram.josephson_energy(math.exp(log_g), gap_energy) / (2.0 * E_c) - 1.0

        lo, hi = math.log(G_lo), math.log(G_hi)
        if excess(lo) * excess(hi) > 0:
            raise PreconditionError("Boundary is not bracketed by [G_lo, G_hi]")
        return math.exp(optimize.bisect(excess, lo, hi, xtol=rtol, maxiter=200))

    @staticmethod
    def solve_grid(
        U_grid: Sequence[float],
        n: float,
        quad: QuadratureSpec = _DEFAULT_QUAD,
        params: PhysicalParams = _DEFAULT_PARAMS,
        solver: SolverConfig = _DEFAULT_SOLVER,
    ) -> dict[float, GapSolution]:
        """Gap cache keyed by U, filled in one ordered pass with warm starts."""
        solutions = GapSolver.sweep_coupling(U_grid, n, quad, params, solver)
        return {float(U): s for U, s in zip(U_grid, solutions)}

    @staticmethod
    def sweep_diagram(
        U_grid: Sequence[float],
        E_c_grid: Sequence[float],
        G_grid: Sequence[float],
        n: float,
        quad: QuadratureSpec = _DEFAULT_QUAD,
        params: PhysicalParams = _DEFAULT_PARAMS,
        solver: SolverConfig = _DEFAULT_SOLVER,
        cache: Mapping[float, GapSolution] | None = None,
    ) -> list[DiagramCell]:
        """Cells in row-major order over (U, E_c, G).

        A ``cache`` from ``solve_grid`` is reused instead of solving again.
        """
        for name, grid in (("U_grid", U_grid), ("E_c_grid", E_c_grid), ("G_grid", G_grid)):
            if len(grid) == 0:
                raise PreconditionError(f"{name} must not be empty")
            ensure_sorted_grid(grid, name)
        if cache is None:
            cache = PhaseDiagram.solve_grid(U_grid, n, quad, params, solver)
        missing = [float(U) for U in U_grid if float(U) not in cache]
        if missing:
            raise PreconditionError(f"Gap cache has no solution for U={missing[0]!r}")
        return [
            PhaseDiagram.cell_from_solution(cache[float(U)], E_c, G, params)
            for U in U_grid
            for E_c in E_c_grid
            for G in G_grid
        ]

    @staticmethod
    def boundary_curve(
        solutions: Sequence[GapSolution],
        E_c: float,
        params: PhysicalParams = _DEFAULT_PARAMS,
        G_bounds: tuple[float, float] = (1e-8, 1e8),
    ) -> list[BoundaryPoint]:
        points = []
        scale = PhaseDiagram.energy_scale(params)
        for solution in solutions:
            if not solution.converged or solution.Delta0 <= 0:
                continue
            gap_energy = solution.Delta0 * scale
            closed = PhaseDiagram.critical_hopping_from_gap(gap_energy, E_c)
            bisected = PhaseDiagram.refine_boundary(gap_energy, E_c, *G_bounds)
            points.append(
                BoundaryPoint(
                    U_over_Uc=solution.U_over_Uc,
                    mu=solution.mu,
                    mu_over_epsF=solution.mu_over_epsF,
                    E_c=E_c,
                    G_closed_form=closed,
                    G_bisection=bisected,
                    E_J_over_2E_c=PhaseDiagram.josephson_energy(bisected, gap_energy) / (2.0 * E_c),
                )
            )
        return points

    @staticmethod
    def to_mu_axis(
        solutions: Sequence[GapSolution],
        mu_grid: Sequence[float],
        params: PhysicalParams = _DEFAULT_PARAMS,
    ) -> dict[str, np.ndarray]:
        """Монотонная интерполяция U/U_c и Delta0 на равномерную сетку по mu.

        Вне решённого диапазона mu возвращается nan.
        """
        good = [s for s in solutions if s.converged]
        if len(good) < 2:
            raise PreconditionError("Need at least two converged points")
        mu = np.array([s.mu for s in good])
        order = np.argsort(mu)
        mu = mu[order]
        if np.any(np.diff(mu) <= 0):
            raise PreconditionError("mu(U) is not strictly monotone on the sweep")
        target = np.asarray(mu_grid, dtype=float)
        Uc = CoreModel.critical_coupling(params)
        result = {"mu": target}
        for name, values in (
            ("U_over_Uc", np.array([s.U / Uc for s in good])),
            ("Delta0", np.array([s.Delta0 for s in good])),
        ):
            result[name] = interpolate.PchipInterpolator(mu, values[order], extrapolate=False)(target)
        return result
