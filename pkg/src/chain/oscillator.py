"""Grid diagonalization of one relative phase coordinate.

H = -16 E_c d^2/dphi^2 + (E_J / 2) phi^2 on a uniform grid with a
second-order finite-difference kinetic term and hard walls at +-span.
Three grids (h, h/2, h/4) give a Richardson value and the observed order.
"""
import logging
import math

import numpy as np
from scipy import linalg

from src.chain.schemas import OscillatorResult
from src.core.exceptions import OracleError, PreconditionError

log = logging.getLogger(__name__)

TAIL_LIMIT = 1e-12
# half-width of the box in units of the closed-form standard deviation
SPAN_WIDTHS = 12.0


def _ground_state(E_c: float, E_J: float, span: float, intervals: int) -> tuple[float, float, float]:
    phi = np.linspace(-span, span, intervals + 1)[1:-1]
    h = 2.0 * span / intervals
    kinetic = 16.0 * E_c / h**2
    diagonal = 2.0 * kinetic + 0.5 * E_J * phi**2
    off = np.full(phi.size - 1, -kinetic)
    energies, vectors = linalg.eigh_tridiagonal(diagonal, off, select="i", select_range=(0, 0))
    v = vectors[:, 0]
    v = v / np.linalg.norm(v)
    tail = max(abs(v[0]), abs(v[-1])) / np.max(np.abs(v))
    return float(energies[0]), float(np.sum(v**2 * phi**2)), float(tail)


class HarmonicOracle:
    @staticmethod
    def oscillator_oracle(
        E_c: float,
        E_J: float,
        span: float | None = None,
        intervals: int = 1000,
    ) -> OscillatorResult:
        if E_c <= 0 or E_J <= 0:
            raise PreconditionError("Oscillator oracle needs E_c > 0 and E_J > 0")
        if intervals < 16:
            raise PreconditionError("Too few grid intervals")
        closed_variance = math.sqrt(8.0 * E_c / E_J)
        closed_energy = 0.5 * math.sqrt(32.0 * E_c * E_J)
        if span is None:
            span = SPAN_WIDTHS * math.sqrt(closed_variance)

        runs = [_ground_state(E_c, E_J, span, intervals * 2**i) for i in range(3)]
        tail = max(r[2] for r in runs)
        if tail > TAIL_LIMIT:
            raise OracleError(f"Grid span {span:.6g} too narrow: boundary amplitude {tail:.3e}")

        (e1, x1, _), (e2, x2, _), (e4, x4, _) = runs
        order = math.log2(abs(e1 - e2) / abs(e2 - e4)) if e2 != e4 else math.inf
        energy = (4.0 * e4 - e2) / 3.0
        variance = (4.0 * x4 - x2) / 3.0
        log.debug("oscillator oracle: E0=%.12g, <phi^2>=%.12g, order %.3f", energy, variance, order)
        return OscillatorResult(
            ground_energy=energy,
            variance=variance,
            closed_form_energy=closed_energy,
            closed_form_variance=closed_variance,
            stated_variance=math.sqrt(2.0 * E_c / E_J),
            convergence_order=order,
            boundary_tail=tail,
            points=intervals * 4 + 1,
            span=span,
        )
