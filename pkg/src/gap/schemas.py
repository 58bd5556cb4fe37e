import math
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.const import TOL_GAP, TOL_NUMBER


class QuadratureSpec(BaseModel):
    """Composite Gauss-Legendre rule on [0, k_max] plus a mapped tail to infinity.

    ``k_max`` is measured in units of k0. ``subdivisions`` splits every panel
    into equal pieces; doubling it is the panel-doubling refinement.
    """

    model_config = ConfigDict(frozen=True)

    scheme: Literal["gauss-legendre"] = "gauss-legendre"
    order: int = Field(24, ge=4, le=128)
    subdivisions: int = Field(1, ge=1, le=32)
    k_max: float = Field(40.0, gt=0)
    atol: float = Field(1e-13, gt=0)
    rtol: float = Field(1e-10, gt=0)
    tail: bool = True

    def refined(self) -> "QuadratureSpec":
        return self.model_copy(update={"subdivisions": 2 * self.subdivisions})


class GapSolution(BaseModel):
    model_config = ConfigDict(frozen=True)

    U: float
    n: float
    mu: float
    Delta0: float
    residual_gap: float
    residual_number: float
    iterations: int = 0
    converged: bool
    below_resolution: bool = False
    U_over_Uc: float
    eps0: float
    eps_fermi: float
    tol_gap: float = TOL_GAP
    tol_number: float = TOL_NUMBER
    error: str | None = None

    @model_validator(mode="after")
    def _check_invariants(self):
        if not math.isnan(self.Delta0) and self.Delta0 < 0:
            raise ValueError("Delta0 must be non-negative")
        if self.converged:
            if abs(self.residual_number) > self.tol_number:
                raise ValueError("converged solution violates the number tolerance")
            if not self.below_resolution and abs(self.residual_gap) > self.tol_gap:
                raise ValueError("converged solution violates the gap tolerance")
        return self

    @property
    def mu_over_epsF(self) -> float:
        return self.mu / self.eps_fermi

    @property
    def Delta0_over_epsF(self) -> float:
        return self.Delta0 / self.eps_fermi

    @property
    def Delta0_over_eps0(self) -> float:
        return self.Delta0 / self.eps0
