import math
from typing import Sequence

from src.core.exceptions import PreconditionError


def ensure_non_negative_gap(Delta0: float) -> None:
    if not math.isfinite(Delta0) or Delta0 < 0:
        raise PreconditionError("Delta0 must be finite and non-negative")


def ensure_sorted_grid(grid: Sequence[float], name: str) -> None:
    """Сетка должна быть отсортирована по возрастанию."""
    if any(b < a for a, b in zip(grid[:-1], grid[1:])):
        raise PreconditionError(f"{name} must be sorted ascending")
