import logging
import math

import numpy as np
from scipy import special, stats

from src.coherent.schemas import CommutatorReport, PeggBarnettOperators
from src.core.exceptions import PreconditionError

log = logging.getLogger(__name__)


class PeggBarnett:
    """Hermitian phase operator on the truncated space span{|0>, ..., |s>}.

    Phase states |theta_m> = (s+1)^{-1/2} sum_n e^{i n theta_m} |n> with
    theta_m = theta0 + 2 pi m / (s+1) form an orthonormal basis; the phase
    operator is diagonal in it with eigenvalues on [theta0, theta0 + 2 pi).
    """

    @staticmethod
    def build(s: int, theta0: float = 0.0) -> PeggBarnettOperators:
        if s < 1:
            raise PreconditionError("Truncation s must be at least 1")
        dim = s + 1
        phases = theta0 + 2.0 * math.pi * np.arange(dim) / dim
        n = np.arange(dim)
        # columns are the phase states in the Fock basis
        V = np.exp(1j * np.outer(n, phases)) / math.sqrt(dim)
        V_dag = V.conj().T
        exp_phase = (V * np.exp(1j * phases)) @ V_dag
        phase = (V * phases) @ V_dag
        return PeggBarnettOperators(
            dimension=dim,
            theta0=theta0,
            phases=phases,
            exp_phase=exp_phase,
            phase=phase,
            number=np.diag(n.astype(float)),
        )

    @staticmethod
    def coherent_state(s: int, Omega: float, phi: float) -> tuple[np.ndarray, float]:
        """Truncated, renormalized coherent state and the dropped probability."""
        if Omega <= 0:
            raise PreconditionError("Omega must be positive")
        n = np.arange(s + 1)
        log_amp = -0.5 * Omega + 0.5 * n * math.log(Omega) - 0.5 * special.gammaln(n + 1)
        state = np.exp(log_amp) * np.exp(1j * n * phi)
        truncation = float(stats.poisson.sf(s, Omega))
        return state / np.linalg.norm(state), truncation

    @staticmethod
    def _truncation_warning(s: int, Omega: float) -> bool:
        if s < 4.0 * Omega:
            log.warning("Coherent state with Omega=%.6g is not contained in s=%d levels", Omega, s)
            return True
        return False

    @staticmethod
    def commutator_report(
        s: int,
        Omega: float,
        theta0: float = 0.0,
        phi: float | None = None,
    ) -> CommutatorReport:
        """<alpha|[theta, N]|alpha> for a coherent state centred on the branch by default."""
        ops = PeggBarnett.build(s, theta0)
        state, truncation = PeggBarnett.coherent_state(s, Omega, theta0 + math.pi if phi is None else phi)
        commutator = ops.phase @ ops.number - ops.number @ ops.phase
        value = complex(np.vdot(state, commutator @ state))
        return CommutatorReport(
            s=s,
            Omega=Omega,
            value=value,
            deviation=abs(value + 1j),
            truncation_error=truncation,
            truncation_warning=PeggBarnett._truncation_warning(s, Omega),
        )

    @staticmethod
    def junction_commutator(
        s: int,
        Omega1: float,
        Omega2: float,
        theta0: float = 0.0,
        explicit: bool = False,
    ) -> complex:
        """Relative phase theta_1 - theta_2 against relative number (N_1 - N_2)/2.

        On a product of two coherent states the expectation is the mean of the
        single-mode values; ``explicit`` builds the (s+1)^2 space instead.
        """
        if not explicit:
            first = PeggBarnett.commutator_report(s, Omega1, theta0).value
            second = PeggBarnett.commutator_report(s, Omega2, theta0).value
            return 0.5 * (first + second)
        ops = PeggBarnett.build(s, theta0)
        eye = np.eye(ops.dimension)
        rel_phase = np.kron(ops.phase, eye) - np.kron(eye, ops.phase)
        rel_number = 0.5 * (np.kron(ops.number, eye) - np.kron(eye, ops.number))
        a, _ = PeggBarnett.coherent_state(s, Omega1, theta0 + math.pi)
        b, _ = PeggBarnett.coherent_state(s, Omega2, theta0 + math.pi)
        state = np.kron(a, b)
        commutator = rel_phase @ rel_number - rel_number @ rel_phase
        return complex(np.vdot(state, commutator @ state))
