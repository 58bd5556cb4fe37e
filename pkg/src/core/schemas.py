import enum
import math

from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy import constants

from src.const import DEFAULT_DENSITY, DEFAULT_K0_PER_ANGSTROM

# hbar^2 / m_e in eV * Angstrom^2
HBAR2_OVER_ME = constants.hbar**2 / constants.m_e / (constants.e * constants.angstrom**2)


class UnitMode(str, enum.Enum):
    dimensionless = "dimensionless"
    physical = "physical"


class UnitSystem(BaseModel):
    """Единицы: безразмерные (hbar = 1, длины в 1/k0, энергии в eps0) или eV / Angstrom.

    Переводы используют масштабы eps0 и 1/k0 для заданных обрезания и массы.
    """

    model_config = ConfigDict(frozen=True)

    mode: UnitMode = UnitMode.dimensionless
    k0_per_angstrom: float = Field(DEFAULT_K0_PER_ANGSTROM, gt=0)
    mass_me: float = Field(1.0, gt=0, description="Effective mass in units of m_e")

    @property
    def hbar2(self) -> float:
        """hbar^2 in the working units (mass measured in m_e for the physical mode)."""
        return 1.0 if self.mode is UnitMode.dimensionless else HBAR2_OVER_ME

    @property
    def eps0_ev(self) -> float:
        return HBAR2_OVER_ME * self.k0_per_angstrom**2 / (2.0 * self.mass_me)

    def energy_to_physical(self, value: float) -> float:
        return value * self.eps0_ev

    def energy_to_dimensionless(self, value: float) -> float:
        return value / self.eps0_ev

    def length_to_physical(self, value: float) -> float:
        return value / self.k0_per_angstrom

    def length_to_dimensionless(self, value: float) -> float:
        return value * self.k0_per_angstrom

    def density_to_physical(self, value: float) -> float:
        return value * self.k0_per_angstrom**3

    def density_to_dimensionless(self, value: float) -> float:
        return value / self.k0_per_angstrom**3

    def coupling_to_physical(self, value: float) -> float:
        return value * self.eps0_ev / self.k0_per_angstrom**3

    def coupling_to_dimensionless(self, value: float) -> float:
        return value * self.k0_per_angstrom**3 / self.eps0_ev


class PhysicalParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    units: UnitSystem = UnitSystem()
    t: float = Field(2.0, gt=0, description="Hopping, energy")
    a: float = Field(1.0, gt=0, description="Lattice constant, length")
    k0: float = Field(1.0, gt=0, description="NSR cutoff momentum, inverse length")
    U: float = Field(0.0, ge=0, description="Attraction magnitude, energy x volume")
    n: float = Field(DEFAULT_DENSITY, gt=0, description="Density including both spins")

    @model_validator(mode="after")
    def _finite(self):
        for name in ("t", "a", "k0", "U", "n"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        return self

    @classmethod
    def physical(cls, *, k0_per_angstrom: float = DEFAULT_K0_PER_ANGSTROM, a: float = 3.0, **overrides) -> "PhysicalParams":
        """eV / Angstrom parameters with the free-electron mass and the default sweep density."""
        units = UnitSystem(mode=UnitMode.physical, k0_per_angstrom=k0_per_angstrom, mass_me=1.0)
        values = {
            "units": units,
            "a": a,
            "t": HBAR2_OVER_ME / a**2,
            "k0": k0_per_angstrom,
            "n": DEFAULT_DENSITY * k0_per_angstrom**3,
        }
        values.update(overrides)
        return cls(**values)

    @property
    def m(self) -> float:
        return self.units.hbar2 / (self.a**2 * self.t)

    @property
    def hbar2_over_2m(self) -> float:
        return self.a**2 * self.t / 2.0

    @property
    def eps0(self) -> float:
        return self.hbar2_over_2m * self.k0**2

    @property
    def k_fermi(self) -> float:
        return (3.0 * math.pi**2 * self.n) ** (1.0 / 3.0)

    @property
    def eps_fermi(self) -> float:
        return self.hbar2_over_2m * self.k_fermi**2
