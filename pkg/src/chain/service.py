import logging
import math
from typing import Sequence

import numpy as np
from scipy import constants

from src.chain.schemas import ChainGroundState, ChainSpec, CoherenceLabel
from src.const import BOUNDARY_RTOL
from src.core.exceptions import PreconditionError

log = logging.getLogger(__name__)


class JosephsonChain:
    @staticmethod
    def charging_energy(epsilon: float, S: float, d: float) -> float:
        """e^2 / 2C in eV for a parallel-plate junction, SI inputs (F/m, m^2, m)."""
        if epsilon <= 0 or S <= 0 or d <= 0:
            raise PreconditionError("Permittivity, area and thickness must be positive")
        capacitance = epsilon * S / d
        return constants.e / (2.0 * capacitance)

    @staticmethod
    def josephson_energy(G: float, U: float, Delta_j: float, Delta_j1: float) -> float:
        """E_J = g U^2 Delta_j Delta_j1 with tunneling strength g = G^2 / (U (Delta_j + Delta_j1))."""
        if G < 0:
            raise PreconditionError("Hopping G must be non-negative")
        if U <= 0 or Delta_j <= 0 or Delta_j1 <= 0:
            raise PreconditionError("U and segment amplitudes must be positive")
        g = G**2 / (U * (Delta_j + Delta_j1))
        return g * U**2 * Delta_j * Delta_j1

    @staticmethod
    def sigma_phi2(E_c: float, E_J: float) -> float:
        if E_c <= 0:
            raise PreconditionError("E_c must be positive")
        if E_J < 0:
            raise PreconditionError("E_J must be non-negative")
        if E_J == 0:
            log.warning("E_J = 0: segment phases are independent, variance diverges")
            return math.inf
        return math.sqrt(2.0 * E_c / E_J)

    @staticmethod
    def chain_ground_state(spec: ChainSpec) -> ChainGroundState:
        if spec.E_J == 0:
            raise PreconditionError("Harmonic ground state needs E_J > 0")
        ratio = spec.E_c / spec.E_J
        state = ChainGroundState(
            sigma2=math.sqrt(2.0 * ratio),
            sigma2_oscillator=math.sqrt(8.0 * ratio),
            sigma2_wavefunction=math.sqrt(0.5 * ratio),
            width=math.sqrt(spec.E_J / (8.0 * spec.E_c)),
            discrepancy=True,
        )
        log.info(
            "Phase variance sources disagree: stated %.6g, oscillator %.6g, wave function %.6g",
            state.sigma2,
            state.sigma2_oscillator,
            state.sigma2_wavefunction,
        )
        return state

    @staticmethod
    def bar_delta(U: float, Delta_j: float, N_j: float) -> float:
        if N_j <= 0:
            raise PreconditionError("Segment particle number must be positive")
        return U * Delta_j / N_j

    @staticmethod
    def odlro(j: int, l: int, Delta_bars: Sequence[float], sigma2: float, normalize: bool = False) -> float:
        """2 pi Dbar_j Dbar_l exp(-|j - l| sigma2); ``normalize`` drops the 2 pi."""
        size = len(Delta_bars)
        if not (0 <= j < size and 0 <= l < size):
            raise PreconditionError("Segment index outside the chain")
        if sigma2 < 0:
            raise PreconditionError("sigma2 must be non-negative")
        prefactor = 1.0 if normalize else 2.0 * math.pi
        return prefactor * Delta_bars[j] * Delta_bars[l] * math.exp(-abs(j - l) * sigma2)

    @staticmethod
    def odlro_profile(Delta_bars: Sequence[float], sigma2: float, origin: int = 0) -> tuple[np.ndarray, np.ndarray]:
        distances = np.array([abs(l - origin) for l in range(len(Delta_bars))])
        values = np.array([JosephsonChain.odlro(origin, l, Delta_bars, sigma2) for l in range(len(Delta_bars))])
        return distances, values

    @staticmethod
    def odlro_decay_slope(Delta_bars: Sequence[float], sigma2: float) -> float:
        """Slope of log(rho / 2 pi Dbar_0 Dbar_l) against distance from the first segment."""
        distances, values = JosephsonChain.odlro_profile(Delta_bars, sigma2)
        bars = np.asarray(Delta_bars, dtype=float)
        reduced = np.log(values) - np.log(2.0 * math.pi * bars[0] * bars)
        slope, _ = np.polyfit(distances, reduced, 1)
        return float(slope)

    @staticmethod
    def coherence_classify(E_c: float, E_J: float, rtol: float = BOUNDARY_RTOL) -> CoherenceLabel:
        if E_c <= 0:
            raise PreconditionError("E_c must be positive")
        threshold = 2.0 * E_c
        if abs(E_J - threshold) <= rtol * threshold:
            return CoherenceLabel.boundary
        return CoherenceLabel.global_ if E_J > threshold else CoherenceLabel.local
