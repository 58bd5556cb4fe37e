import math
from typing import Sequence

import numpy as np

from src.const import FOCK_MAX_MODES
from src.core.exceptions import PreconditionError


def ensure_angles(thetas: Sequence[float], upper: float = 0.5 * math.pi) -> np.ndarray:
    arr = np.asarray(thetas, dtype=float)
    if arr.ndim != 1:
        raise PreconditionError("Angles must be a flat sequence")
    if np.any(~np.isfinite(arr)) or np.any(arr < 0) or np.any(arr > upper + 1e-15):
        raise PreconditionError(f"Angles must lie in [0, {upper:.6g}]")
    return arr


def ensure_not_empty(items: Sequence, name: str) -> None:
    if len(items) == 0:
        raise PreconditionError(f"{name} must not be empty")


def ensure_fock_size(M: int) -> None:
    """Плотное пространство 2^M: больше 12 мод не строим."""
    if M < 1:
        raise PreconditionError("At least one pair mode is required")
    if M > FOCK_MAX_MODES:
        raise PreconditionError(f"Fock oracle is limited to {FOCK_MAX_MODES} modes, got {M}")


def ensure_uniform_grid(grid: Sequence[float], min_points: int = 5) -> float:
    arr = np.asarray(grid, dtype=float)
    if arr.size < min_points:
        raise PreconditionError(f"Grid needs at least {min_points} points")
    steps = np.diff(arr)
    h = float(steps[0])
    if h <= 0 or np.max(np.abs(steps - h)) > 1e-9 * h:
        raise PreconditionError("Grid must be uniform and increasing")
    return h
