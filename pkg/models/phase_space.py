"""
Phase Space Data Models

Pydantic models for phase-space points, sampling grids, evaluation requests
and results, zero-ellipse geometry and the grid output document.
"""

import math
from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class WignerKind(str, Enum):
    """Which Wigner function to evaluate"""
    CM = "cm"
    RELATIVE = "relative"
    TOTAL = "total"


class WignerMethod(str, Enum):
    """Evaluation path for the relative Wigner function"""
    OPERATOR = "operator"
    SERIES = "series"
    QUADRATURE = "quadrature"
    CLOSED_G0 = "closed_g0"
    ASYMPTOTIC = "asymptotic"


EXACT_METHODS = {WignerMethod.OPERATOR, WignerMethod.SERIES}
G0_METHODS = {WignerMethod.CLOSED_G0, WignerMethod.ASYMPTOTIC}


def combined_index(n: int, alpha: float) -> int:
    """Harmonic-oscillator index j = 2n + alpha of the g = 0 sectors"""
    return 2 * n + int(alpha)


class PhasePoint(BaseModel):
    """Dimensionless phase-space coordinates (q, p) or (Q, P)"""
    model_config = ConfigDict(frozen=True)

    q: float = Field(allow_inf_nan=False)
    p: float = Field(allow_inf_nan=False)


class GridSpec(BaseModel):
    """Rectangular sampling grid, axes q (columns) and p (rows)"""
    model_config = ConfigDict(frozen=True)

    q_min: float
    q_max: float
    p_min: float
    p_max: float
    n_q: int = Field(ge=2)
    n_p: int = Field(ge=2)

    @model_validator(mode='after')
    def check_bounds(self):
        """Bounds must be strictly increasing"""
        if not self.q_min < self.q_max:
            raise ValueError("q_min must be smaller than q_max")
        if not self.p_min < self.p_max:
            raise ValueError("p_min must be smaller than p_max")
        return self

    def q_values(self) -> List[float]:
        step = (self.q_max - self.q_min) / (self.n_q - 1)
        return [self.q_min + i * step for i in range(self.n_q)]

    def p_values(self) -> List[float]:
        step = (self.p_max - self.p_min) / (self.n_p - 1)
        return [self.p_min + i * step for i in range(self.n_p)]


class WignerSpec(BaseModel):
    """What to evaluate and how"""
    model_config = ConfigDict(frozen=True, use_enum_values=False)

    kind: WignerKind = WignerKind.RELATIVE
    l: int = Field(default=0, ge=0, description="center-of-mass quantum number")
    n: int = Field(default=0, ge=0, description="relative quantum number")
    alpha: float = Field(default=0.0, ge=0.0)
    omega_bar: float = Field(default=1.0, ge=1.0)
    method: WignerMethod = WignerMethod.OPERATOR
    Q_bar: float = Field(default=0.0, description="fixed CM position for kind=total")
    P_bar: float = Field(default=0.0, description="fixed CM momentum for kind=total")

    @model_validator(mode='after')
    def check_method(self):
        """operator/series need integer alpha; g=0 forms need alpha in {0, 1}"""
        if self.kind == WignerKind.CM:
            return self
        if self.method in EXACT_METHODS and not float(self.alpha).is_integer():
            raise ValueError(f"method {self.method.value} requires integer alpha")
        if self.method in G0_METHODS and self.alpha not in (0.0, 1.0):
            raise ValueError(f"method {self.method.value} requires alpha in {{0, 1}}")
        return self

    @property
    def combined_index(self) -> int:
        return combined_index(self.n, self.alpha)


class EvalResult(BaseModel):
    """A Wigner function value with diagnostics"""
    model_config = ConfigDict(frozen=True)

    value: float
    method: str
    imag_residue: float = Field(default=0.0, ge=0.0)
    quad_error: float = Field(default=0.0, ge=0.0)
    convention_dependent: bool = False


class ZeroEllipse(BaseModel):
    """Asymptotic zero curve omega_bar q^2 + p^2/omega_bar = r_k"""
    model_config = ConfigDict(frozen=True)

    k: int = Field(ge=1)
    radial_value: float = Field(gt=0.0)
    semi_axes: tuple[float, float]
    symplectic_area: float = Field(gt=0.0)
    phase_area: float = Field(gt=0.0, description="pi * r_k, geometric area of the ellipse")
    gromov_ok: bool

    @field_validator('semi_axes')
    @classmethod
    def validate_semi_axes(cls, semi_axes):
        if any(not math.isfinite(a) or a <= 0.0 for a in semi_axes):
            raise ValueError("semi-axes must be positive")
        return semi_axes


class GridPreset(BaseModel):
    """Named evaluation preset reproducing a plotted surface"""
    name: str
    description: str = ""
    spec: WignerSpec
    grid: GridSpec


class OutputDoc(BaseModel):
    """JSON document emitted by the grid command"""
    params: Dict[str, Any]
    grid: GridSpec
    method: str
    values: List[List[float]]
    diagnostics: Dict[str, float]
    version: str
    preset: Optional[str] = None

    @model_validator(mode='after')
    def check_shape(self):
        """values is n_p rows by n_q columns"""
        if len(self.values) != self.grid.n_p:
            raise ValueError("values must have n_p rows")
        if any(len(row) != self.grid.n_q for row in self.values):
            raise ValueError("every values row must have n_q entries")
        return self
