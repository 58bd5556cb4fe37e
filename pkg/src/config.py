from pathlib import Path
from typing import Literal

from pydantic import BaseModel, Field
from pydantic_settings import BaseSettings, SettingsConfigDict

from src.const import (
    DEFAULT_DENSITY,
    DEFAULT_K0_PER_ANGSTROM,
    GAP_RESOLUTION,
    ITERATION_BUDGET,
    TOL_GAP,
    TOL_NUMBER,
)


class UnitsConfig(BaseModel):
    mode: Literal["dimensionless", "physical"] = "dimensionless"
    k0_per_angstrom: float = Field(DEFAULT_K0_PER_ANGSTROM, gt=0)
    # lattice constant in Angstrom for the physical mode; t follows from m = m_e
    lattice_constant: float = Field(3.0, gt=0)


class QuadratureConfig(BaseModel):
    scheme: Literal["gauss-legendre"] = "gauss-legendre"
    order: int = Field(24, ge=4, le=128)
    subdivisions: int = Field(1, ge=1, le=16)
    k_max: float = Field(40.0, gt=0)
    atol: float = Field(1e-13, gt=0)
    rtol: float = Field(1e-10, gt=0)


class SolverConfig(BaseModel):
    tol_gap: float = Field(TOL_GAP, gt=0)
    tol_number: float = Field(TOL_NUMBER, gt=0)
    gap_resolution: float = Field(GAP_RESOLUTION, gt=0)
    max_iterations: int = Field(ITERATION_BUDGET, ge=10)


class SweepConfig(BaseModel):
    density: float = Field(DEFAULT_DENSITY, gt=0)
    u_min: float = Field(0.5, gt=0)
    u_max: float = Field(4.0, gt=0)
    points: int = Field(50, ge=1)


class ChainConfig(BaseModel):
    e_c_micro_ev: float = Field(50.0, gt=0)
    segments: int = Field(8, ge=2)


class OutputConfig(BaseModel):
    directory: Path = Path("out")


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_file=".env",
        case_sensitive=False,
        env_nested_delimiter="__",
        env_prefix="CROSSOVER__",
        extra="ignore",
    )
    units: UnitsConfig = UnitsConfig()
    quadrature: QuadratureConfig = QuadratureConfig()
    solver: SolverConfig = SolverConfig()
    sweep: SweepConfig = SweepConfig()
    chain: ChainConfig = ChainConfig()
    output: OutputConfig = OutputConfig()


settings = Settings()
