from typing import Any


class CrossoverError(Exception):
    """Базовая ошибка пакета."""


class PreconditionError(CrossoverError, ValueError):
    pass


class ConfigError(CrossoverError):
    pass


class QuadratureError(CrossoverError):
    def __init__(self, detail: str, error_estimate: float):
        super().__init__(f"{detail} (error estimate {error_estimate:.3e})")
        self.error_estimate = error_estimate


class ConvergenceError(CrossoverError):
    def __init__(self, detail: str, last_iterate: dict[str, Any] | None = None):
        super().__init__(detail)
        self.last_iterate = last_iterate or {}


class OracleError(CrossoverError):
    pass
