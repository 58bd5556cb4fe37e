import enum
import math

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator


class AngleConvention(str, enum.Enum):
    # cos 2theta = eps / xi, consistent with the gap equation
    half_angle = "half_angle"
    # theta = arctan(gap / eps) taken literally, continued onto [0, pi]
    literal = "literal"


def pair_angle(eps, gap, convention: AngleConvention = AngleConvention.half_angle):
    full = np.arctan2(gap, eps)
    return 0.5 * full if convention is AngleConvention.half_angle else full


class PairMode(BaseModel):
    model_config = ConfigDict(frozen=True)

    k: float | None = None
    eps: float = Field(description="eps_k - mu")
    gap: float = Field(ge=0, description="Delta Gamma_k, energy")
    theta: float

    @property
    def xi(self) -> float:
        return math.hypot(self.eps, self.gap)


class PairEnsemble(BaseModel):
    model_config = ConfigDict(frozen=True)

    modes: list[PairMode]
    phi: float = 0.0
    Omega: float
    Delta0: float | None = None
    U: float | None = None
    convention: AngleConvention = AngleConvention.half_angle

    @model_validator(mode="after")
    def _check(self):
        thetas = np.array([m.theta for m in self.modes])
        upper = 0.5 * math.pi if self.convention is AngleConvention.half_angle else math.pi
        if np.any(thetas < 0) or np.any(thetas > upper + 1e-15):
            raise ValueError(f"theta outside [0, {upper:.6g}]")
        expected = float(np.sum(thetas**2))
        if abs(self.Omega - expected) > 1e-14 * max(expected, 1e-300):
            raise ValueError("Omega does not match the sum of theta^2")
        return self

    @classmethod
    def from_modes(
        cls,
        eps,
        gap,
        *,
        k=None,
        phi: float = 0.0,
        convention: AngleConvention = AngleConvention.half_angle,
        Delta0: float | None = None,
        U: float | None = None,
    ) -> "PairEnsemble":
        eps = np.atleast_1d(np.asarray(eps, dtype=float))
        gap = np.broadcast_to(np.asarray(gap, dtype=float), eps.shape)
        thetas = pair_angle(eps, gap, convention)
        ks = [None] * eps.size if k is None else list(np.asarray(k, dtype=float))
        modes = [
            PairMode(k=None if kk is None else float(kk), eps=float(e), gap=float(d), theta=float(t))
            for kk, e, d, t in zip(ks, eps, gap, thetas)
        ]
        return cls(
            modes=modes,
            phi=phi,
            Omega=float(np.sum(thetas**2)),
            Delta0=Delta0,
            U=U,
            convention=convention,
        )

    @property
    def thetas(self) -> np.ndarray:
        return np.array([m.theta for m in self.modes])

    @property
    def eps(self) -> np.ndarray:
        return np.array([m.eps for m in self.modes])

    @property
    def gaps(self) -> np.ndarray:
        return np.array([m.gap for m in self.modes])


class BosonEnsemble(BaseModel):
    model_config = ConfigDict(frozen=True)

    amplitudes: list[float]
    phi: float = 0.0
    Omega: float

    @model_validator(mode="after")
    def _check(self):
        alpha = np.asarray(self.amplitudes)
        if np.any(alpha < 0):
            raise ValueError("amplitudes must be non-negative")
        expected = float(np.sum(alpha**2))
        if abs(self.Omega - expected) > 1e-14 * max(expected, 1e-300):
            raise ValueError("Omega does not match the sum of alpha^2")
        return self

    @classmethod
    def from_amplitudes(cls, amplitudes, phi: float = 0.0) -> "BosonEnsemble":
        alpha = [float(a) for a in np.atleast_1d(amplitudes)]
        return cls(amplitudes=alpha, phi=phi, Omega=float(np.sum(np.square(alpha))))


class EtaStatistics(BaseModel):
    mean: float
    variance: float


class PeggBarnettOperators(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    dimension: int
    theta0: float
    phases: np.ndarray
    exp_phase: np.ndarray
    phase: np.ndarray
    number: np.ndarray


class CommutatorReport(BaseModel):
    s: int
    Omega: float
    value: complex
    deviation: float
    truncation_error: float
    truncation_warning: bool


class PhaseLockReport(BaseModel):
    M: int
    g_sign: int
    seed: int
    phases: list[float]
    amplitudes: list[float]
    equal_phase_gradient: float
    stationarity_residual: float
    amplitude_residual: float
    gradient_norm: float
    steps: int
    converged: bool
    phase_spread: float
    order_parameter_phase_spread: float
    free_energy: float
