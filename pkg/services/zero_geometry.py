"""
Zero curves of the harmonic-oscillator Wigner functions

At large order the zeros of (-1)^j exp(-r/2) L_j(r) lie on the ellipses
w q^2 + p^2 / w = r_k with r_k = pi^2 (k - 1/4)^2 / (4 (j + 1/2)), k >= 1.
The enclosed symplectic area in units of hbar equals r_k; the geometric area
is pi r_k.
"""
import logging
import math
from typing import List, Optional, Sequence

import numpy as np

from models.phase_space import ZeroEllipse
from models.reports import CheckResult
from numerics.specfun import laguerre
from utils.error_handler import InvalidSpecError

logger = logging.getLogger(__name__)

# the innermost zero converges slowest in 1/j
FIRST_ZERO_TOLERANCE = 0.05
ZERO_TOLERANCE = 0.02


def zero_radius(j: int, k: int) -> float:
    """r_k = pi^2 (k - 1/4)^2 / (4 (j + 1/2))"""
    return math.pi ** 2 * (k - 0.25) ** 2 / (4.0 * (j + 0.5))


def zero_ellipses(j: int, omega_bar: float, k_max: int) -> List[ZeroEllipse]:
    """
    Asymptotic zero ellipses k = 1..k_max of the order-j oscillator Wigner function

    Raises:
        InvalidSpecError: If k_max < 1
    """
    if k_max < 1:
        raise InvalidSpecError(f"k_max must be at least 1, got {k_max}")

    ellipses = []
    for k in range(1, k_max + 1):
        radius = zero_radius(j, k)
        ellipses.append(ZeroEllipse(
            k=k,
            radial_value=radius,
            semi_axes=(math.sqrt(radius / omega_bar), math.sqrt(radius * omega_bar)),
            symplectic_area=radius,
            phase_area=math.pi * radius,
            gromov_ok=radius >= 1.0,
        ))
    return ellipses


def axis_sign_changes(values: Sequence[float], coords: Sequence[float]) -> List[float]:
    """Coordinates where values change sign, linearly interpolated between samples"""
    values = np.asarray(values, dtype=float)
    coords = np.asarray(coords, dtype=float)
    if values.shape != coords.shape:
        raise ValueError("values and coords must have the same length")

    crossings = []
    for i in np.flatnonzero(np.signbit(values[:-1]) != np.signbit(values[1:])):
        left, right = values[i], values[i + 1]
        if left == right:
            continue
        fraction = left / (left - right)
        crossings.append(float(coords[i] + fraction * (coords[i + 1] - coords[i])))
    return crossings


def compare_zeros_to_ellipses(j: int, omega_bar: float = 1.0, k_max: int = 4,
                              samples: int = 4001, tol: Optional[float] = None) -> List[CheckResult]:
    """
    Locate sign changes of the order-j oscillator Wigner function along the
    positive q axis and compare each, as r = w q^2, with r_k.

    Args:
        j: Oscillator order
        omega_bar: Dimensionless hybrid frequency
        k_max: Number of zeros to compare
        samples: Points on the scanned segment
        tol: Relative tolerance in r for every k; defaults to 5% for k = 1
            and 2% beyond

    Returns:
        One CheckResult per k; a missing crossing fails with deviation 1
    """
    predicted = [zero_radius(j, k) for k in range(1, k_max + 1)]
    q_end = math.sqrt(1.5 * predicted[-1] / omega_bar)
    q = np.linspace(0.0, q_end, samples)[1:]
    radius = omega_bar * q * q
    values = (-1) ** j * np.exp(-0.5 * radius) * laguerre(j, 0.0, radius)
    observed = [omega_bar * x * x for x in axis_sign_changes(values, q)]

    checks = []
    for k, r_k in enumerate(predicted, start=1):
        limit = tol if tol is not None else (FIRST_ZERO_TOLERANCE if k == 1 else ZERO_TOLERANCE)
        if k > len(observed):
            checks.append(CheckResult.from_deviation(f'zero_k{k}', 1.0, limit, j=j, r_predicted=r_k))
            continue
        deviation = abs(observed[k - 1] - r_k) / r_k
        checks.append(CheckResult.from_deviation(
            f'zero_k{k}', deviation, limit, j=j, r_predicted=r_k, r_observed=observed[k - 1]
        ))

    logger.info(f"Compared {len(observed)} axis zeros of order {j} with {k_max} ellipses", extra={
        'operation': 'compare_zeros_to_ellipses', 'passed': all(c.passed for c in checks)
    })
    return checks
