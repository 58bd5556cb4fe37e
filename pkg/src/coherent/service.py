import logging
from typing import Sequence

import numpy as np

from src.coherent.fock import FockOracle
from src.coherent.schemas import AngleConvention, BosonEnsemble, EtaStatistics, PairEnsemble
from src.coherent.validators import ensure_angles, ensure_not_empty
from src.core.exceptions import PreconditionError
from src.core.schemas import PhysicalParams
from src.core.service import CoreModel
from src.gap.schemas import GapSolution

log = logging.getLogger(__name__)


class CoherentAlgebra:
    @staticmethod
    def bec_overlap(ens: BosonEnsemble, dphi: float) -> complex:
        alpha2 = np.square(ens.amplitudes)
        # exponents of the per-mode factors add up
        return complex(np.exp(-np.sum(alpha2) * (1.0 - np.exp(1j * dphi))))

    @staticmethod
    def bcs_overlap(thetas: Sequence[float], dphi: float, upper: float = 0.5 * np.pi) -> complex:
        """<phi'|phi> for the BCS product state, dphi = phi - phi'."""
        arr = ensure_angles(thetas, upper)
        factors = np.cos(arr) ** 2 + np.exp(1j * dphi) * np.sin(arr) ** 2
        return complex(np.prod(factors))

    @staticmethod
    def multimode_product_overlap(omegas: Sequence[float], dphi: float) -> complex:
        """Overlap of a product of segment coherent states sharing one phase shift."""
        ensure_not_empty(omegas, "omegas")
        arr = np.asarray(omegas, dtype=float)
        if np.any(arr < 0):
            raise PreconditionError("Mode occupations must be non-negative")
        per_segment = np.exp(-arr * (1.0 - np.exp(1j * dphi)))
        return complex(np.prod(per_segment))

    @staticmethod
    def eta_statistics(ens: PairEnsemble) -> EtaStatistics:
        ensure_not_empty(ens.modes, "ensemble")
        if ens.Omega == 0.0:
            raise PreconditionError("Collective mode is empty (all angles vanish)")
        thetas, eps, gaps = ens.thetas, ens.eps, ens.gaps
        xi = np.hypot(eps, gaps)
        occupied = xi > 0
        # 1 - eps/xi and (gap/xi)^2, with vacant modes (xi = 0) set to zero
        depletion = np.where(occupied, 1.0 - np.divide(eps, xi, out=np.zeros_like(xi), where=occupied), 0.0)
        mixing = np.divide(gaps, xi, out=np.zeros_like(xi), where=occupied) ** 2
        mean = float(np.sum(thetas**2 * depletion) / ens.Omega)
        variance = float(np.sum(thetas**4 * mixing) / ens.Omega**2)
        return EtaStatistics(mean=mean, variance=variance)

    @staticmethod
    def build_fock_oracle(ens: PairEnsemble) -> FockOracle:
        return FockOracle.from_ensemble(ens)

    @staticmethod
    def pair_ensemble_from_solution(
        solution: GapSolution,
        k_grid: Sequence[float],
        params: PhysicalParams,
        phi: float = 0.0,
        convention: AngleConvention = AngleConvention.half_angle,
    ) -> PairEnsemble:
        """Ансамбль парных мод на сетке k для решённой точки (mu, Delta0)."""
        ensure_not_empty(k_grid, "k_grid")
        if not solution.converged:
            raise PreconditionError("Pair ensemble needs a converged gap solution")
        k = np.asarray(k_grid, dtype=float)
        eps = np.asarray(CoreModel.dispersion(k, params)) - solution.mu
        gap = solution.Delta0 * np.asarray(CoreModel.nsr_form_factor(k, params.k0))
        if convention is AngleConvention.literal:
            log.warning("Literal angle convention: eta statistics will not match the Fock oracle")
        return PairEnsemble.from_modes(
            eps,
            gap,
            k=k,
            phi=phi,
            convention=convention,
            Delta0=solution.Delta0,
            U=solution.U,
        )
