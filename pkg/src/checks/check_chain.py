from src.chain.oscillator import HarmonicOracle
from src.chain.schemas import CoherenceLabel
from src.chain.service import JosephsonChain
from src.checks.schemas import CheckResult


def check_oscillator(E_c: float = 1.0, E_J: float = 1.0) -> CheckResult:
    result = HarmonicOracle.oscillator_oracle(E_c, E_J)
    passed = result.relative_error <= 1e-6 and 1.8 <= result.convergence_order <= 2.2
    return CheckResult(
        name="oscillator",
        passed=passed,
        measured={
            "variance": result.variance,
            "closed_form": result.closed_form_variance,
            "stated": result.stated_variance,
            "relative_error": result.relative_error,
            "order": result.convergence_order,
        },
        detail="stated variance differs from the oscillator" if result.discrepancy else "",
    )


def check_odlro_slope(segments: int = 10, amplitude: float = 0.3) -> CheckResult:
    sigma2 = JosephsonChain.sigma_phi2(1.0, 2.0)
    slope = JosephsonChain.odlro_decay_slope([amplitude] * segments, sigma2)
    boundary = JosephsonChain.coherence_classify(1.0, 2.0)
    return CheckResult(
        name="odlro-slope",
        passed=abs(slope + sigma2) <= 1e-12 and boundary is CoherenceLabel.boundary,
        measured={"slope": slope, "sigma2": sigma2},
    )
