from pydantic import BaseModel, Field


class CheckResult(BaseModel):
    name: str
    passed: bool
    measured: dict[str, float] = Field(default_factory=dict)
    detail: str = ""
    warnings: list[str] = Field(default_factory=list)

    def summary(self) -> str:
        values = ", ".join(f"{k}={v:.6g}" for k, v in self.measured.items())
        status = "PASS" if self.passed else "FAIL"
        tail = f" ({self.detail})" if self.detail else ""
        return f"{status} {self.name}: {values}{tail}"
