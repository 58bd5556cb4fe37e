"""Dense-grid oracles for the gap module.

The radial integrals are mapped onto y in [0, 1] with x = tan(pi y / 2) and
summed with the trapezoid rule on a uniform 10^6-point grid. This shares no
code with the panel quadrature used by the solver.
"""
import math
from functools import lru_cache

import numpy as np
from scipy import integrate, optimize

from src.core.schemas import PhysicalParams
from src.core.service import CoreModel

DENSE_POINTS = 1_000_000


@lru_cache(maxsize=4)
def _dense_grid(points: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    y = np.linspace(0.0, 1.0, points)
    # the last node sits at tan(pi/2) ~ 1.6e16, where every integrand has a finite limit
    x = np.tan(0.5 * math.pi * y)
    jacobian = 0.5 * math.pi * (1.0 + x**2)
    return y, x, jacobian


class DenseGridOracle:
    def __init__(self, params: PhysicalParams | None = None, points: int = DENSE_POINTS):
        self.params = params or PhysicalParams()
        self.points = points
        self.y, self.x, self.jacobian = _dense_grid(points)
        self.ratio_scale = CoreModel.critical_coupling(self.params)

    def _trapezoid(self, values: np.ndarray, origin: float = 0.0) -> float:
        """Trapezoid sum in y; ``origin`` replaces the x = 0 node by the integrand's limit there."""
        values = np.where(np.isfinite(values), values, 0.0)
        values[0] = origin
        return float(integrate.trapezoid(values * self.jacobian, self.y))

    def gap_integral(self, mu: float, gap: float) -> float:
        x2 = self.x**2
        with np.errstate(invalid="ignore", divide="ignore"):
            values = x2 / (1.0 + x2) / np.sqrt((x2 - mu) ** 2 + gap**2 / (1.0 + x2))
        return self._trapezoid(values, 1.0 if mu == 0.0 and gap == 0.0 else 0.0)

    def number_integral(self, mu: float, gap: float) -> float:
        x2 = self.x**2
        s = x2 - mu
        pair = gap**2 / (1.0 + x2)
        xi = np.sqrt(s**2 + pair)
        with np.errstate(invalid="ignore", divide="ignore"):
            occupancy = np.where(s > 0, pair / (xi * (xi + np.abs(s))), 1.0 - s / xi)
        return self._trapezoid(x2 * occupancy)

    def bound_state_energy(self, U: float) -> float | None:
        """Bisection on the dense-grid bound-state equation."""
        ratio = U / self.ratio_scale
        x2 = self.x**2

        def equation(binding: float) -> float:
            with np.errstate(invalid="ignore", divide="ignore"):
                values = x2 / ((1.0 + x2) * (2.0 * x2 + binding))
            return (4.0 / math.pi) * ratio * self._trapezoid(values, 0.5 if binding == 0.0 else 0.0) - 1.0

        if equation(0.0) <= 0.0:
            return None
        upper = 1.0
        while equation(upper) > 0.0:
            upper *= 2.0
        binding = optimize.bisect(equation, 0.0, upper, xtol=1e-14, rtol=1e-14, maxiter=200)
        return binding * self.params.eps0

    def solve(self, U: float, n: float) -> tuple[float, float]:
        """(mu, Delta0) of the coupled equations on the dense grid."""
        ratio = U / self.ratio_scale
        n_r = n / self.params.k0**3
        eps_f = (3.0 * math.pi**2 * n_r) ** (2.0 / 3.0)

        def gap_at(mu: float) -> float:
            def residual(log_gap: float) -> float:
                return 1.0 - (2.0 / math.pi) * ratio * self.gap_integral(mu, math.exp(log_gap))

            lo = math.log(1e-12)
            if residual(lo) >= 0.0:
                return 0.0
            hi = math.log(max(1.0, 2.0 * abs(mu)))
            while residual(hi) <= 0.0:
                hi += 1.0
            return math.exp(optimize.brentq(residual, lo, hi, xtol=1e-15, rtol=1e-14))

        def number_error(mu: float) -> float:
            return (n_r - self.number_integral(mu, gap_at(mu)) / (2.0 * math.pi**2)) / n_r

        lo, hi = -eps_f, 2.0 * eps_f
        while number_error(lo) <= 0.0:
            lo = 2.0 * lo - eps_f
        while number_error(hi) >= 0.0:
            hi *= 2.0
        mu = optimize.brentq(number_error, lo, hi, xtol=1e-15, rtol=1e-14)
        return mu * self.params.eps0, gap_at(mu) * self.params.eps0
