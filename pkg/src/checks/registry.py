import logging
from typing import Callable, Iterable

from src.checks.check_chain import check_odlro_slope, check_oscillator
from src.checks.check_coherent import (
    check_eta_oracle,
    check_number_phase,
    check_overlap_decay,
    check_pegg_barnett,
    check_phase_lock,
)
from src.checks.check_gap import check_threshold
from src.checks.schemas import CheckResult
from src.core.exceptions import ConfigError, CrossoverError

log = logging.getLogger(__name__)

CHECKS: dict[str, tuple[Callable[..., CheckResult], str]] = {
    "threshold": (check_threshold, "bound state vanishes at U_c"),
    "overlap-decay": (check_overlap_decay, "per-mode decay rate of the BCS overlap"),
    "eta-oracle": (check_eta_oracle, "eta statistics and overlaps against the Fock oracle"),
    "number-phase": (check_number_phase, "N = 2i d/dphi by central differences"),
    "pegg-barnett": (check_pegg_barnett, "commutator emergence on a doubling ladder"),
    "phase-lock": (check_phase_lock, "stationarity at equal phases and attractive descent"),
    "oscillator": (check_oscillator, "grid oracle for the relative-phase oscillator"),
    "odlro-slope": (check_odlro_slope, "log-linear decay of inter-segment correlations"),
}


def run_checks(names: Iterable[str] | None = None, pegg_barnett_s: int = 64) -> list[CheckResult]:
    selected = list(names) if names else list(CHECKS)
    unknown = [n for n in selected if n not in CHECKS]
    if unknown:
        raise ConfigError(f"Unknown checks: {', '.join(unknown)}")
    results = []
    for name in selected:
        func, _ = CHECKS[name]
        kwargs = {"s": pegg_barnett_s} if name == "pegg-barnett" else {}
        try:
            result = func(**kwargs)
        except CrossoverError as e:
            result = CheckResult(name=name, passed=False, detail=str(e))
        log.info(result.summary())
        results.append(result)
    return results
