import enum
import math

from pydantic import BaseModel, ConfigDict, Field, model_validator


class CoherenceLabel(str, enum.Enum):
    global_ = "global"
    local = "local"
    boundary = "boundary"


def _close(a: float, b: float, rtol: float = 1e-12) -> bool:
    return abs(a - b) <= rtol * max(abs(a), abs(b), 1e-300)


class ChainSpec(BaseModel):
    """Цепочка из N одинаковых сегментов.

    Все энергии в одной единице, которую выбирает вызывающий код. Составляющие
    необязательны; если заданы, они должны воспроизводить E_c и E_J.
    """

    model_config = ConfigDict(frozen=True)

    N: int = Field(ge=2)
    E_c: float = Field(gt=0)
    E_J: float = Field(ge=0)
    G: float | None = Field(None, ge=0)
    U: float | None = Field(None, gt=0)
    Delta: list[float] | None = None
    Delta_bars: list[float] | None = None
    epsilon: float | None = Field(None, gt=0)
    S: float | None = Field(None, gt=0)
    d: float | None = Field(None, gt=0)

    @model_validator(mode="after")
    def _check_constituents(self):
        from src.chain.service import JosephsonChain

        if self.Delta is not None:
            if len(self.Delta) != self.N:
                raise ValueError("Delta needs one value per segment")
            if self.G is None or self.U is None:
                raise ValueError("Delta requires G and U")
            for left, right in zip(self.Delta[:-1], self.Delta[1:]):
                bond = JosephsonChain.josephson_energy(self.G, self.U, left, right)
                if not _close(bond, self.E_J):
                    raise ValueError(f"E_J={self.E_J!r} does not match constituents ({bond!r})")
        if self.Delta_bars is not None and len(self.Delta_bars) != self.N:
            raise ValueError("Delta_bars needs one value per segment")
        geometry = (self.epsilon, self.S, self.d)
        if any(v is not None for v in geometry):
            if any(v is None for v in geometry):
                raise ValueError("Capacitance needs epsilon, S and d together")
            expected = JosephsonChain.charging_energy(self.epsilon, self.S, self.d)
            if not _close(expected, self.E_c):
                raise ValueError(f"E_c={self.E_c!r} does not match geometry ({expected!r})")
        return self


class ChainGroundState(BaseModel):
    model_config = ConfigDict(frozen=True)

    # sqrt(2 E_c / E_J), the value the coherence criterion uses
    sigma2: float = Field(gt=0)
    # sqrt(8 E_c / E_J), literal oscillator Hamiltonian
    sigma2_oscillator: float = Field(gt=0)
    # sqrt(E_c / (2 E_J)), Gaussian ground-state wave function
    sigma2_wavefunction: float = Field(gt=0)
    width: float = Field(gt=0)
    mean_phase_difference: float = 0.0
    discrepancy: bool

    @model_validator(mode="after")
    def _check_mean(self):
        if self.mean_phase_difference != 0.0:
            raise ValueError("Mean relative phase must vanish")
        return self

    @property
    def labelled(self) -> dict[str, float]:
        return {
            "stated": self.sigma2,
            "oscillator": self.sigma2_oscillator,
            "wavefunction": self.sigma2_wavefunction,
        }


class OscillatorResult(BaseModel):
    ground_energy: float
    variance: float
    closed_form_energy: float
    closed_form_variance: float
    stated_variance: float
    convergence_order: float
    boundary_tail: float
    points: int
    span: float

    @property
    def relative_error(self) -> float:
        return abs(self.variance - self.closed_form_variance) / self.closed_form_variance

    @property
    def discrepancy(self) -> bool:
        return not math.isclose(self.variance, self.stated_variance, rel_tol=1e-6)
