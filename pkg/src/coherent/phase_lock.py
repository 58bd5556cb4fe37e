"""Phase locking of a multimode condensate in a one-dimensional box.

The condensate amplitude is expanded over box eigenfunctions,
psi(x) = sum_n z_n u_n(x) with z_n = alpha_n e^{i phi_n}, and the free energy

    F = sum_n (E_n - mu) |z_n|^2 + 1/2 sum g_nmts conj(z_n) conj(z_m) z_t z_s

is minimized at fixed particle number sum |z_n|^2.
"""
import itertools
import logging
import math

import numpy as np
from scipy import integrate

from src.coherent.schemas import PhaseLockReport
from src.core.exceptions import PreconditionError

log = logging.getLogger(__name__)

SIMPSON_INTERVALS = 2048
DESCENT_STEP = 1e-2
DESCENT_TOL = 1e-10
DESCENT_BUDGET = 100_000
# modes smaller than this fraction of the largest carry no phase
ACTIVE_FRACTION = 1e-6


class BoxBasis:
    def __init__(self, M: int, length: float = math.pi, hbar2_over_2m: float = 1.0):
        if M < 1:
            raise PreconditionError("Need at least one box mode")
        if length <= 0:
            raise PreconditionError("Box length must be positive")
        self.M = M
        self.length = length
        self.x = np.linspace(0.0, length, SIMPSON_INTERVALS + 1)
        n = np.arange(1, M + 1)
        self.energies = hbar2_over_2m * (n * math.pi / length) ** 2
        self.modes = math.sqrt(2.0 / length) * np.sin(np.outer(n, self.x) * math.pi / length)

    def coupling_tensor(self, g: float) -> np.ndarray:
        """g_nmts = g * int u_n u_m u_t u_s dx, symmetrized over all index orders."""
        u = self.modes
        product = np.einsum("nx,mx,tx,sx->nmtsx", u, u, u, u)
        tensor = g * integrate.simpson(product, x=self.x, axis=-1)
        perms = list(itertools.permutations(range(4)))
        return sum(np.transpose(tensor, p) for p in perms) / len(perms)

    def order_parameter(self, z: np.ndarray) -> np.ndarray:
        return np.asarray(z) @ self.modes


class PhaseLock:
    @staticmethod
    def quartic_field(z: np.ndarray, g: np.ndarray) -> np.ndarray:
        return np.einsum("pmts,m,t,s->p", g, z.conj(), z, z)

    @staticmethod
    def free_energy(z: np.ndarray, energies: np.ndarray, g: np.ndarray, mu: float = 0.0) -> float:
        quartic = np.vdot(z, PhaseLock.quartic_field(z, g))
        return float(np.sum((energies - mu) * np.abs(z) ** 2) + 0.5 * quartic.real)

    @staticmethod
    def phase_gradient(z: np.ndarray, g: np.ndarray) -> np.ndarray:
        """dF/dphi_p; the quadratic part does not depend on phases."""
        return -2.0 * np.imag(z * PhaseLock.quartic_field(z, g).conj())

    @staticmethod
    def stationarity_residual(alpha: np.ndarray, phi: np.ndarray, g: np.ndarray) -> float:
        # alpha_n sum_m alpha_m sin(phi_n - phi_m) sum_ts g_nmts alpha_t alpha_s e^{i(phi_s - phi_t)}
        left = alpha * np.exp(-1j * phi)
        right = alpha * np.exp(1j * phi)
        kernel = np.einsum("nmts,t,s->nm", g, left, right)
        sines = np.sin(phi[:, None] - phi[None, :])
        terms = alpha[:, None] * alpha[None, :] * sines * kernel
        return float(np.max(np.abs(terms.sum(axis=1))))

    @staticmethod
    def amplitude_residual(z: np.ndarray, energies: np.ndarray, g: np.ndarray) -> float:
        """Residual of (E_n - lambda) z_n + W_n = 0 with the optimal multiplier lambda."""
        field = energies * z + PhaseLock.quartic_field(z, g)
        lam = np.vdot(z, field).real / np.vdot(z, z).real
        return float(np.max(np.abs(field - lam * z)))

    @staticmethod
    def phase_spread(z: np.ndarray) -> float:
        """Largest pairwise phase difference among active modes, folded modulo pi."""
        magnitude = np.abs(z)
        active = magnitude >= ACTIVE_FRACTION * magnitude.max()
        phases = np.angle(z[active])
        diff = phases[:, None] - phases[None, :]
        folded = np.mod(diff + 0.5 * math.pi, math.pi) - 0.5 * math.pi
        return float(np.max(np.abs(folded)))

    @staticmethod
    def order_parameter_phase_spread(psi: np.ndarray, support: float = 1e-3) -> float:
        magnitude = np.abs(psi)
        inside = magnitude > support * magnitude.max()
        reference = psi[np.argmax(magnitude)]
        return float(np.max(np.abs(np.angle(psi[inside] * np.conj(reference)))))

    @staticmethod
    def variational_phase_lock(
        M: int,
        g_sign: int,
        seed: int,
        g_strength: float = 1.0,
        particles: float = 1.0,
        mu: float = 0.0,
        length: float = math.pi,
        step: float = DESCENT_STEP,
        tol: float = DESCENT_TOL,
        budget: int = DESCENT_BUDGET,
    ) -> PhaseLockReport:
        """Проекционный градиентный спуск из случайных фаз и амплитуд."""
        if not 2 <= M <= 6:
            raise PreconditionError("Phase lock runs with 2 <= M <= 6 modes")
        if g_sign not in (-1, 1):
            raise PreconditionError("g_sign must be +1 or -1")
        basis = BoxBasis(M, length)
        g = basis.coupling_tensor(g_sign * g_strength)
        energies = basis.energies

        rng = np.random.default_rng(seed)
        alpha0 = rng.uniform(0.2, 1.0, M)
        phi0 = rng.uniform(0.0, 2.0 * math.pi, M)
        equal = alpha0 * np.exp(1j * phi0[0])
        equal_gradient = float(np.linalg.norm(PhaseLock.phase_gradient(equal, g)))

        norm = math.sqrt(particles)
        z = alpha0 * np.exp(1j * phi0)
        z *= norm / np.linalg.norm(z)
        converged = False
        gradient_norm = math.inf
        steps = 0
        for steps in range(1, budget + 1):
            grad = 2.0 * ((energies - mu) * z + PhaseLock.quartic_field(z, g))
            tangent = grad - (np.vdot(z, grad).real / particles) * z
            gradient_norm = float(np.linalg.norm(tangent))
            if gradient_norm < tol:
                converged = True
                break
            z = z - step * tangent
            z *= norm / np.linalg.norm(z)
        if not converged:
            log.warning("Phase-lock descent stopped after %d steps, gradient norm %.3e", steps, gradient_norm)

        alpha, phi = np.abs(z), np.angle(z)
        psi = basis.order_parameter(z)
        return PhaseLockReport(
            M=M,
            g_sign=g_sign,
            seed=seed,
            phases=phi.tolist(),
            amplitudes=alpha.tolist(),
            equal_phase_gradient=equal_gradient,
            stationarity_residual=PhaseLock.stationarity_residual(alpha, phi, g),
            amplitude_residual=PhaseLock.amplitude_residual(z, energies, g),
            gradient_norm=gradient_norm,
            steps=steps,
            converged=converged,
            phase_spread=PhaseLock.phase_spread(z),
            order_parameter_phase_spread=PhaseLock.order_parameter_phase_spread(psi),
            free_energy=PhaseLock.free_energy(z, energies, g, mu),
        )
