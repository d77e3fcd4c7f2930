"""
Physical and Numerical Parameter Models

Pydantic models for the two-particle model inputs, the derived symbols of the
separated problem, and quadrature configuration.
"""

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, model_validator


class SectorChoice(str, Enum):
    """Root of 1/4 - beta^2 = -2 mu g / hbar^2"""
    POSITIVE = "positive"
    NEGATIVE = "negative"


class RawParams(BaseModel):
    """Physical inputs of the Hamiltonian"""
    model_config = ConfigDict(frozen=True)

    m: float = Field(gt=0.0, description="particle mass")
    omega_bullet: float = Field(gt=0.0, description="confining frequency")
    omega_0: float = Field(default=0.0, ge=0.0, description="pair frequency")
    g: float = Field(default=0.0, description="inverse-square coupling")
    hbar: float = Field(default=1.0, gt=0.0)


class ModelParams(BaseModel):
    """RawParams plus every derived symbol of the separated problem"""
    model_config = ConfigDict(frozen=True)

    m: float
    omega_bullet: float
    omega_0: float
    g: float
    hbar: float
    mu: float = Field(description="reduced mass m/2")
    total_mass: float = Field(description="total mass 2m")
    omega: float = Field(description="hybrid frequency")
    omega_bar: float = Field(ge=1.0)
    b: float = Field(gt=0.0, description="mu omega / hbar")
    beta: float
    alpha: float = Field(ge=0.0)
    length_unit: float = Field(gt=0.0)
    sector: SectorChoice = SectorChoice.POSITIVE

    @model_validator(mode='after')
    def check_alpha_beta(self):
        """alpha is always beta + 1/2"""
        if abs(self.alpha - (self.beta + 0.5)) > 1e-12:
            raise ValueError("alpha must equal beta + 1/2")
        return self

    @property
    def momentum_unit(self) -> float:
        """hbar / l"""
        return self.hbar / self.length_unit

    @property
    def energy_shift(self) -> float:
        """(beta - 1/2) hbar omega, offset from the odd oscillator levels"""
        return (self.beta - 0.5) * self.hbar * self.omega

    @property
    def is_integer_alpha(self) -> bool:
        return float(self.alpha).is_integer()

    def to_dimensionless(self, q: float, p: float) -> tuple[float, float]:
        """Map dimensional (q, p) to (q/l, l p / hbar)"""
        return q / self.length_unit, p * self.length_unit / self.hbar


class QuadConfig(BaseModel):
    """Adaptive quadrature settings"""
    model_config = ConfigDict(frozen=True)

    rel_tol: float = Field(default=1e-10, gt=0.0)
    abs_tol: float = Field(default=1e-12, gt=0.0)
    max_depth: int = Field(default=50, ge=1)
    window_halfwidth_sigmas: float = Field(default=12.0, gt=0.0)
    min_intervals: int = Field(default=4, ge=1)
    max_intervals: int = Field(default=5000, ge=1)
