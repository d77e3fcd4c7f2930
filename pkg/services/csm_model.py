"""Two-particle Calogero-Sutherland model: parameters, spectra, eigenfunctions

The Hamiltonian separates into a center-of-mass oscillator (mass M = 2m,
frequency omega_bullet) and a relative Calogero-Sutherland oscillator (reduced
mass mu = m/2, hybrid frequency omega = sqrt(omega_bullet^2 + 2 omega_0^2),
coupling g / q^2). Downstream evaluation consumes only the dimensionless
quantities (n, l, alpha, omega_bar); positions are measured in
l = sqrt(hbar / (m omega_bullet)).
"""
import logging
import math
from typing import Optional

import numpy as np

from models.parameters import ModelParams, RawParams, SectorChoice
from numerics.specfun import hermite, laguerre, log_factorial_ratio
from utils.error_handler import (
    CouplingOutOfRangeError,
    SectorInvalidError,
    SingularPointError,
)

logger = logging.getLogger(__name__)

# dimensionless Gaussian rate of the center-of-mass ground state (M = 2m)
CM_RATE = 2.0


def omega_bar_from_pair_frequency(omega0_bar: float) -> float:
    """omega / omega_bullet for a dimensionless pair frequency omega_0 / omega_bullet"""
    if omega0_bar < 0.0:
        raise ValueError(f"pair frequency must be non-negative, got {omega0_bar}")
    return math.sqrt(1.0 + 2.0 * omega0_bar ** 2)


def derive_params(raw: RawParams, sector: SectorChoice = SectorChoice.POSITIVE) -> ModelParams:
    """
    Derive every symbol of the separated problem

    Args:
        raw: Physical inputs
        sector: Which root of 1/4 - beta^2 = -2 mu g / hbar^2 to take

    Returns:
        ModelParams

    Raises:
        CouplingOutOfRangeError: If g < -hbar^2 / (8 mu)
        SectorInvalidError: If the negative root is requested with g != 0
    """
    sector = SectorChoice(sector)
    mu = raw.m / 2.0
    bound = -raw.hbar ** 2 / (8.0 * mu)
    if raw.g < bound:
        raise CouplingOutOfRangeError(f"g = {raw.g} is below the bound {bound}")

    if sector == SectorChoice.NEGATIVE and raw.g != 0.0:
        raise SectorInvalidError(f"negative beta root requested with g = {raw.g}")

    discriminant = max(0.25 + 2.0 * mu * raw.g / raw.hbar ** 2, 0.0)
    beta = math.sqrt(discriminant)
    if sector == SectorChoice.NEGATIVE:
        beta = -beta

    omega = math.sqrt(raw.omega_bullet ** 2 + 2.0 * raw.omega_0 ** 2)
    params = ModelParams(
        m=raw.m,
        omega_bullet=raw.omega_bullet,
        omega_0=raw.omega_0,
        g=raw.g,
        hbar=raw.hbar,
        mu=mu,
        total_mass=2.0 * raw.m,
        omega=omega,
        omega_bar=omega / raw.omega_bullet,
        b=mu * omega / raw.hbar,
        beta=beta,
        alpha=beta + 0.5,
        length_unit=math.sqrt(raw.hbar / (raw.m * raw.omega_bullet)),
        sector=sector,
    )

    logger.debug("Derived model parameters", extra={
        'operation': 'derive_params', 'alpha': params.alpha, 'omega_bar': params.omega_bar
    })
    return params


def energy_rel(n: int, p: ModelParams) -> float:
    """hbar omega (2n + beta + 1)"""
    return p.hbar * p.omega * (2 * n + p.beta + 1.0)


def energy_cm(l: int, p: ModelParams) -> float:
    """hbar omega_bullet (l + 1/2)"""
    return p.hbar * p.omega_bullet * (l + 0.5)


def signed_power(x, alpha: float):
    """x^alpha for integer alpha (keeps the sign), |x|^alpha otherwise"""
    x = np.asarray(x, dtype=float)
    if float(alpha).is_integer():
        return x ** int(alpha)
    return np.abs(x) ** alpha


def wavefunction_rel(n: int, q_bar, alpha: float, omega_bar: float):
    """Normalized dimensionless relative eigenfunction on the full line.

    psi(q) = C (w/2)^(alpha/2) q^alpha exp(-w q^2/4) L_n^(alpha-1/2)(w q^2/2),
    C = (w/2)^(1/4) sqrt(n! / Gamma(n + alpha + 1/2)), w = omega_bar.
    """
    rate = omega_bar / 2.0
    log_norm = 0.25 * math.log(rate) + 0.5 * log_factorial_ratio(n, alpha + 0.5)
    q_bar = np.asarray(q_bar, dtype=float)
    x = rate * q_bar * q_bar

    value = (
        math.exp(log_norm)
        * rate ** (alpha / 2.0)
        * signed_power(q_bar, alpha)
        * np.exp(-x / 2.0)
        * laguerre(n, alpha - 0.5, x)
    )
    return value if np.ndim(value) else float(value)


def wavefunction_cm(l: int, Q_bar):
    """Normalized dimensionless center-of-mass oscillator eigenfunction.

    phi(Q) = (2/pi)^(1/4) (2^l l!)^(-1/2) H_l(sqrt(2) Q) exp(-Q^2)
    """
    Q_bar = np.asarray(Q_bar, dtype=float)
    log_norm = 0.25 * math.log(CM_RATE / math.pi) - 0.5 * (l * math.log(2.0) + math.lgamma(l + 1.0))
    value = math.exp(log_norm) * hermite(l, math.sqrt(CM_RATE) * Q_bar) * np.exp(-0.5 * CM_RATE * Q_bar ** 2)
    return value if np.ndim(value) else float(value)


def _radial_solution(n: int, z: float, alpha: float) -> float:
    # eigenfunction in the ODE variable z = sqrt(b) q, up to normalization
    return wavefunction_rel(n, z * math.sqrt(2.0), alpha, 1.0)


def ode_residual(n: int, z: float, alpha: float, step: float = 1e-3,
                 energy_index: Optional[float] = None) -> float:
    """
    Residual of psi'' + (4n + 2beta + 2 - z^2 + (1/4 - beta^2)/z^2) psi at z

    Args:
        n: Quantum number of the eigenfunction
        z: Point in the ODE variable z = sqrt(mu omega / hbar) q
        alpha: Sector parameter, beta = alpha - 1/2
        step: Finite-difference step
        energy_index: Quantum number used in the energy term (defaults to n)

    Returns:
        The residual; psi'' uses fourth-order central differences

    Raises:
        SingularPointError: If |z| < 1e-6
    """
    if abs(z) < 1e-6:
        raise SingularPointError(f"ODE is singular at z = {z}")

    beta = alpha - 0.5
    index = n if energy_index is None else energy_index
    h = step

    samples = [_radial_solution(n, z + k * h, alpha) for k in (-2, -1, 0, 1, 2)]
    second = (-samples[0] + 16.0 * samples[1] - 30.0 * samples[2]
              + 16.0 * samples[3] - samples[4]) / (12.0 * h * h)

    potential = 4.0 * index + 2.0 * beta + 2.0 - z * z + (0.25 - beta * beta) / (z * z)
    return float(second + potential * samples[2])
