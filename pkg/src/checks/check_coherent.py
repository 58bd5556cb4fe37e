import math

import numpy as np

from src.checks.schemas import CheckResult
from src.coherent.fock import FockOracle
from src.coherent.pegg_barnett import PeggBarnett
from src.coherent.phase_lock import PhaseLock
from src.coherent.schemas import PairEnsemble
from src.coherent.service import CoherentAlgebra


def random_pair_ensemble(rng: np.random.Generator, M: int) -> PairEnsemble:
    eps = rng.uniform(-1.0, 1.0, M)
    gap = rng.uniform(0.05, 1.0, M)
    return PairEnsemble.from_modes(eps, gap, phi=float(rng.uniform(0.0, 2.0 * math.pi)))


def random_symmetric_tensor(rng: np.random.Generator, M: int) -> np.ndarray:
    raw = rng.normal(size=(M, M, M, M))
    perms = [(0, 1, 2, 3), (1, 0, 2, 3), (0, 1, 3, 2), (1, 0, 3, 2), (2, 3, 0, 1), (3, 2, 0, 1), (2, 3, 1, 0), (3, 2, 1, 0)]
    return sum(np.transpose(raw, p) for p in perms) / len(perms)


def check_overlap_decay(max_modes: int = 200, dphi: float = 0.5 * math.pi) -> CheckResult:
    theta = 0.25 * math.pi
    expected = -math.log(abs(math.cos(theta) ** 2 + np.exp(1j * dphi) * math.sin(theta) ** 2))
    worst = 0.0
    for M in range(1, max_modes + 1):
        overlap = CoherentAlgebra.bcs_overlap([theta] * M, dphi)
        worst = max(worst, abs(-math.log(abs(overlap)) / M - expected))
    return CheckResult(
        name="overlap-decay",
        passed=worst <= 1e-12,
        measured={"rate": expected, "max_rate_error": worst},
    )


def check_eta_oracle(ensembles: int = 20, seed: int = 0) -> CheckResult:
    rng = np.random.default_rng(seed)
    worst_mean = worst_var = worst_overlap = 0.0
    for _ in range(ensembles):
        ens = random_pair_ensemble(rng, int(rng.integers(1, 11)))
        oracle = FockOracle.from_ensemble(ens)
        stats = CoherentAlgebra.eta_statistics(ens)
        mean, variance = oracle.eta_moments(ens.phi)
        worst_mean = max(worst_mean, abs(stats.mean - mean))
        worst_var = max(worst_var, abs(stats.variance - variance))
        dphi = float(rng.uniform(-math.pi, math.pi))
        exact = np.vdot(oracle.state(ens.phi - dphi), oracle.state(ens.phi))
        worst_overlap = max(worst_overlap, abs(CoherentAlgebra.bcs_overlap(ens.thetas, dphi) - exact))
    return CheckResult(
        name="eta-oracle",
        passed=max(worst_mean, worst_var, worst_overlap) <= 1e-12,
        measured={"mean_error": worst_mean, "variance_error": worst_var, "overlap_error": worst_overlap},
    )


def check_number_phase(M: int = 4, h: float = 1e-3, seed: int = 1) -> CheckResult:
    rng = np.random.default_rng(seed)
    oracle = FockOracle(rng.uniform(0.1, 0.5 * math.pi - 0.1, M))
    coarse = oracle.number_phase_derivative_check(4, 0.3 + h * np.arange(11))
    fine = oracle.number_phase_derivative_check(4, 0.3 + 0.5 * h * np.arange(11))
    odd = oracle.number_phase_derivative_check(3, 0.3 + h * np.arange(11))
    ratio = coarse / fine if fine > 0 else math.inf
    return CheckResult(
        name="number-phase",
        passed=coarse <= 1e-5 and 3.5 <= ratio <= 4.5 and odd == 0.0,
        measured={"deviation": coarse, "halving_ratio": ratio, "odd_deviation": odd},
    )


def check_pegg_barnett(s: int = 64, Omega: float = 4.0) -> CheckResult:
    ladder = [PeggBarnett.commutator_report(s * 2**i, Omega) for i in range(3)]
    deviations = [r.deviation for r in ladder]
    decreasing = all(b < a for a, b in zip(deviations[:-1], deviations[1:]))
    ops = PeggBarnett.build(s)
    eye = np.eye(ops.dimension)
    unitarity = float(np.linalg.norm(ops.exp_phase @ ops.exp_phase.conj().T - eye, 2))
    hermiticity = float(np.linalg.norm(ops.phase - ops.phase.conj().T, 2))
    warnings = [f"Omega={Omega:g} not contained in s={r.s}" for r in ladder if r.truncation_warning]
    return CheckResult(
        name="pegg-barnett",
        passed=deviations[0] <= 0.05 and decreasing and unitarity <= 1e-12 and hermiticity <= 1e-12,
        measured={
            **{f"deviation_s{r.s}": r.deviation for r in ladder},
            "unitarity": unitarity,
            "hermiticity": hermiticity,
        },
        warnings=warnings,
    )


def check_phase_lock(tensors: int = 10, seeds: tuple[int, ...] = (0, 1, 2, 3, 7)) -> CheckResult:
    rng = np.random.default_rng(11)
    worst_residual = 0.0
    for _ in range(tensors):
        M = int(rng.integers(2, 6))
        g = random_symmetric_tensor(rng, M)
        alpha = rng.uniform(0.1, 1.0, M)
        phi = np.full(M, rng.uniform(0.0, 2.0 * math.pi))
        worst_residual = max(worst_residual, PhaseLock.stationarity_residual(alpha, phi, g))
    spreads = []
    converged = True
    for seed in seeds:
        report = PhaseLock.variational_phase_lock(3, -1, seed)
        spreads.append(report.phase_spread)
        converged = converged and report.converged
    return CheckResult(
        name="phase-lock",
        passed=worst_residual <= 1e-12 and converged and max(spreads) < 1e-4,
        measured={"stationarity_residual": worst_residual, "max_phase_spread": max(spreads)},
    )
