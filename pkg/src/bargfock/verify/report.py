"""
Machine-readable verification reports.
"""
import math

from pydantic import BaseModel, ConfigDict, Field, field_validator

SCHEMA_VERSION = 1


class CheckResult(BaseModel):
    """One measured quantity against its tolerance"""
    name: str
    passed: bool
    measured: float
    tolerance: float


class SuiteReport(BaseModel):
    """All checks of one suite, sorted by name"""
    model_config = ConfigDict(populate_by_name=True)

    schema_version: int = Field(SCHEMA_VERSION, alias="schema")
    suite: str
    checks: list[CheckResult]

    @field_validator("checks")
    @classmethod
    def _canonical_order(cls, checks: list[CheckResult]) -> list[CheckResult]:
        return sorted(checks, key=lambda c: c.name)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def to_json(self) -> str:
        return self.model_dump_json(indent=2, by_alias=True)


def at_most(name: str, measured: float, tolerance: float) -> CheckResult:
    """Passes when measured <= tolerance; NaN never passes"""
    measured = float(measured)
    return CheckResult(name=name, passed=bool(measured <= tolerance), measured=measured, tolerance=float(tolerance))


def at_least(name: str, measured: float, bound: float) -> CheckResult:
    measured = float(measured)
    return CheckResult(name=name, passed=bool(measured >= bound), measured=measured, tolerance=float(bound))


def holds(name: str, passed: bool, measured: float, tolerance: float) -> CheckResult:
    """A check whose verdict comes from the library rather than a plain comparison"""
    measured = float(measured)
    return CheckResult(
        name=name,
        passed=bool(passed) and not math.isnan(measured),
        measured=measured,
        tolerance=float(tolerance),
    )
