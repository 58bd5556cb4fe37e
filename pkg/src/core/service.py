import math
from typing import Literal

import numpy as np
from numpy.typing import ArrayLike

from src.core.exceptions import PreconditionError
from src.core.schemas import PhysicalParams


class CoreModel:
    @staticmethod
    def dispersion(
        k: ArrayLike,
        params: PhysicalParams,
        form: Literal["continuum", "lattice"] = "continuum",
    ) -> np.ndarray | float:
        """Кинетическая энергия частицы.

        ``continuum``: модуль волнового вектора, hbar^2 k^2 / 2m.
        ``lattice``: компоненты по осям в последнем измерении длины 3 (скаляр
        читается как (k, 0, 0)), t * sum_i [1 - cos(k_i a)] в форме 2 sin^2.
        """
        k_arr = np.asarray(k, dtype=float)
        if form == "continuum":
            if np.any(k_arr < 0):
                raise PreconditionError("Wavevector magnitude must be non-negative")
            out = params.hbar2_over_2m * k_arr**2
        elif form == "lattice":
            if k_arr.ndim == 0 or k_arr.shape[-1] != 3:
                if np.any(k_arr < 0):
                    raise PreconditionError("Wavevector magnitude must be non-negative")
                k_arr = np.stack([k_arr, np.zeros_like(k_arr), np.zeros_like(k_arr)], axis=-1)
            half = np.sin(0.5 * k_arr * params.a)
            out = 2.0 * params.t * np.sum(half**2, axis=-1)
        else:
            raise PreconditionError(f"Unknown dispersion form: {form}")
        return float(out) if np.ndim(out) == 0 else out

    @staticmethod
    def nsr_form_factor(k: ArrayLike, k0: float) -> np.ndarray | float:
        if k0 <= 0:
            raise PreconditionError("k0 must be positive")
        k_arr = np.asarray(k, dtype=float)
        if np.any(k_arr < 0):
            raise PreconditionError("Wavevector magnitude must be non-negative")
        out = 1.0 / np.sqrt(1.0 + (k_arr / k0) ** 2)
        return float(out) if np.ndim(out) == 0 else out

    @staticmethod
    def critical_coupling(params: PhysicalParams) -> float:
        # 4 pi hbar^2 / (m k0)
        return 4.0 * math.pi * params.units.hbar2 / (params.m * params.k0)
