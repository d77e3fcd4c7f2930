"""Verification report models"""

import math
from typing import Any, Dict, List

from pydantic import BaseModel, Field


class CheckResult(BaseModel):
    """Outcome of one numerical check"""
    name: str
    max_deviation: float = Field(ge=0.0)
    tolerance: float = Field(ge=0.0)
    passed: bool
    details: Dict[str, Any] = Field(default_factory=dict)

    @classmethod
    def from_deviation(cls, name: str, deviation: float, tolerance: float, **details):
        """Build a result that passes iff deviation <= tolerance"""
        deviation = float(deviation) if math.isfinite(deviation) else math.inf
        return cls(
            name=name,
            max_deviation=deviation,
            tolerance=tolerance,
            passed=bool(deviation <= tolerance),
            details=details,
        )

    @classmethod
    def from_condition(cls, name: str, passed: bool, measure: float = 0.0, **details):
        """Qualitative check; measure is reported as the deviation"""
        return cls(name=name, max_deviation=abs(measure), tolerance=0.0, passed=bool(passed), details=details)


class IdentityReport(BaseModel):
    """Deviation between both sides of a polynomial identity"""
    identity: str
    n: int
    omega_bar: float = 1.0
    max_abs_deviation: float
    scale: float
    relative_deviation: float
    tolerance: float
    passed: bool


class SuiteReport(BaseModel):
    """All checks of one verification suite"""
    suite: str
    checks: List[CheckResult]
    duration_ms: float = 0.0

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def summary(self) -> Dict[str, Any]:
        """Machine-readable digest with per-check max deviations"""
        return {
            'suite': self.suite,
            'passed': self.passed,
            'duration_ms': round(self.duration_ms, 3),
            'checks': {
                check.name: {
                    'max_deviation': check.max_deviation,
                    'tolerance': check.tolerance,
                    'passed': check.passed,
                }
                for check in self.checks
            },
        }
