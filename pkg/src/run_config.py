"""Run configuration: built-in settings < key = value file < command-line flags."""
import io
import logging
import math
import typing
from pathlib import Path
from typing import Any, Literal

import numpy as np
from dotenv import dotenv_values
from dotenv.parser import parse_stream
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from src.coherent.schemas import AngleConvention
from src.config import QuadratureConfig, Settings, SolverConfig, settings
from src.core.exceptions import ConfigError
from src.core.schemas import PhysicalParams
from src.gap.schemas import QuadratureSpec

log = logging.getLogger(__name__)


class RunConfig(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    command: str
    units: Literal["dimensionless", "physical"]
    k0_per_angstrom: float = Field(gt=0)
    lattice_constant: float = Field(gt=0)
    out: Path
    seed: int = 7

    tol_gap: float = Field(gt=0)
    tol_number: float = Field(gt=0)
    gap_resolution: float = Field(gt=0)
    max_iterations: int = Field(ge=10)
    quad_order: int = Field(ge=4, le=128)
    quad_subdivisions: int = Field(ge=1, le=16)
    k_max: float = Field(gt=0)

    density: float = Field(gt=0, description="n in units of k0^3")
    u_min: float = Field(gt=0)
    u_max: float = Field(gt=0)
    points: int = Field(ge=1)

    # diagram energies: micro-eV in the physical mode, eps0 otherwise
    e_c_values: list[float] = Field(min_length=1)
    g_min: float = Field(1e-4, gt=0)
    g_max: float = Field(1e2, gt=0)
    g_points: int = Field(61, ge=1)
    mu_points: int = Field(0, ge=0)

    segments: int = Field(ge=2)
    e_j_values: list[float] = Field(default_factory=lambda: [25.0, 50.0, 100.0, 150.0, 200.0], min_length=1)
    # Delta_bar = U Delta / N_j for every segment
    segment_u: float = Field(3.0, gt=0)
    segment_delta: float = Field(1.0, gt=0)
    segment_particles: float = Field(10.0, gt=0)

    modes: int = Field(200, ge=1)
    theta: float = Field(0.25 * math.pi, ge=0, le=0.5 * math.pi)
    dphi: float = 0.5 * math.pi
    alpha: float = Field(0.3, ge=0)

    k_points: int = Field(8, ge=1)
    convention: AngleConvention = AngleConvention.half_angle

    omega: float = Field(4.0, gt=0)
    s_values: list[int] = Field(default_factory=lambda: [64, 128, 256], min_length=1)

    lock_modes: int = Field(3, ge=2, le=6)
    g_sign: int = -1
    lock_runs: int = Field(5, ge=1)

    oracle_u: list[float] = Field(default_factory=lambda: [1.5, 2.0, 4.0], min_length=1)
    oracle_points: int = Field(1_000_000, ge=1000)

    checks: list[str] = Field(default_factory=list)
    pegg_barnett_s: int = Field(64, ge=1)

    @model_validator(mode="after")
    def _check_ranges(self):
        if self.u_max < self.u_min:
            raise ValueError("u_max must not be below u_min")
        if self.g_sign not in (-1, 1):
            raise ValueError("g_sign must be +1 or -1")
        if self.g_max < self.g_min:
            raise ValueError("g_max must not be below g_min")
        for name in ("e_c_values", "e_j_values", "oracle_u", "s_values"):
            values = getattr(self, name)
            if any(b < a for a, b in zip(values[:-1], values[1:])):
                raise ValueError(f"{name} must be sorted ascending")
            if any(v <= 0 for v in values):
                raise ValueError(f"{name} must be positive")
        return self

    @property
    def U_ratios(self) -> np.ndarray:
        return np.linspace(self.u_min, self.u_max, self.points)

    @property
    def G_grid(self) -> np.ndarray:
        return np.logspace(math.log10(self.g_min), math.log10(self.g_max), self.g_points)

    def params(self) -> PhysicalParams:
        if self.units == "physical":
            k0 = self.k0_per_angstrom
            return PhysicalParams.physical(k0_per_angstrom=k0, a=self.lattice_constant, n=self.density * k0**3)
        return PhysicalParams(n=self.density)

    def quadrature(self) -> QuadratureSpec:
        return QuadratureSpec(order=self.quad_order, subdivisions=self.quad_subdivisions, k_max=self.k_max)

    def solver(self) -> SolverConfig:
        return SolverConfig(
            tol_gap=self.tol_gap,
            tol_number=self.tol_number,
            gap_resolution=self.gap_resolution,
            max_iterations=self.max_iterations,
        )


def defaults_from_settings(source: Settings = settings) -> dict[str, Any]:
    quad: QuadratureConfig = source.quadrature
    return {
        "units": source.units.mode,
        "k0_per_angstrom": source.units.k0_per_angstrom,
        "lattice_constant": source.units.lattice_constant,
        "out": source.output.directory,
        "tol_gap": source.solver.tol_gap,
        "tol_number": source.solver.tol_number,
        "gap_resolution": source.solver.gap_resolution,
        "max_iterations": source.solver.max_iterations,
        "quad_order": quad.order,
        "quad_subdivisions": quad.subdivisions,
        "k_max": quad.k_max,
        "density": source.sweep.density,
        "u_min": source.sweep.u_min,
        "u_max": source.sweep.u_max,
        "points": source.sweep.points,
        "e_c_values": [source.chain.e_c_micro_ev],
        "segments": source.chain.segments,
    }


def _is_list_field(name: str) -> bool:
    annotation = RunConfig.model_fields[name].annotation
    return typing.get_origin(annotation) is list


def load_config_file(path: Path) -> dict[str, Any]:
    """Файл вида key = value в формате dotenv; списки через запятую."""
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"Cannot read config file {path}: {e}") from e
    for binding in parse_stream(io.StringIO(text)):
        if binding.error:
            raise ConfigError(f"{path}:{binding.original.line}: expected key = value")
    values: dict[str, Any] = {}
    for key, value in dotenv_values(stream=io.StringIO(text), interpolate=False).items():
        if key not in RunConfig.model_fields or key == "command":
            raise ConfigError(f"{path}: unknown key {key!r}")
        if value is None:
            raise ConfigError(f"{path}: key {key!r} has no value")
        values[key] = [v.strip() for v in value.split(",") if v.strip()] if _is_list_field(key) else value
    return values


def build_run_config(command: str, config_file: Path | None, flags: dict[str, Any]) -> RunConfig:
    merged = defaults_from_settings()
    if config_file is not None:
        merged.update(load_config_file(config_file))
    merged.update({k: v for k, v in flags.items() if v is not None})
    merged["command"] = command
    try:
        return RunConfig.model_validate(merged)
    except ValidationError as e:
        raise ConfigError(str(e)) from e
