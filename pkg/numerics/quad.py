"""
Adaptive one-dimensional quadrature.

integrate_interval delegates to scipy.integrate.quad_vec (globally adaptive
bisection with the embedded Gauss 10 / Kronrod 21 pair). Complex integrands
get one refinement decision from the max-norm of the error. The depth limit
bounds the subinterval count at n_initial * 2^max_depth.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Union

import numpy as np
from scipy import integrate

from models.parameters import QuadConfig
from utils.error_handler import NoConvergenceError

logger = logging.getLogger(__name__)

Scalar = Union[float, complex]
Integrand = Callable[[np.ndarray], np.ndarray]

# quad_vec rejects limits that large bisection depths would produce
_MAX_DEPTH_EXPONENT = 30


@dataclass(frozen=True)
class QuadResult:
    """Integral value with its absolute error estimate"""
    value: Scalar
    abs_error_estimate: float
    evaluations: int


def _initial_edges(a: float, b: float, cfg: QuadConfig, frequency: float) -> np.ndarray:
    periods = abs(frequency) * (b - a) / (2.0 * math.pi)
    n_init = max(cfg.min_intervals, int(math.ceil(2.0 * periods)))
    return np.linspace(a, b, n_init + 1)


def integrate_interval(f: Integrand, a: float, b: float, cfg: Optional[QuadConfig] = None,
                       frequency: float = 0.0) -> QuadResult:
    """Integrate f over [a, b] to cfg tolerance.

    Args:
        f: integrand, real or complex valued; called with scalar abscissae
        a: lower limit
        b: upper limit, b > a
        cfg: tolerances, depth and interval limits
        frequency: angular frequency of an oscillatory factor in f; sets the
            minimum number of initial subintervals so each period is resolved

    Returns:
        QuadResult

    Raises:
        NoConvergenceError: if refinement is exhausted with the error above
            10x the requested tolerance
    """
    cfg = cfg or QuadConfig()
    if not b > a:
        raise ValueError(f"integration limits must satisfy a < b, got [{a}, {b}]")

    edges = _initial_edges(a, b, cfg, frequency)
    n_init = len(edges) - 1
    limit = max(n_init, min(cfg.max_intervals, n_init * 2 ** min(cfg.max_depth, _MAX_DEPTH_EXPONENT)))

    def scalar_integrand(x: float):
        return np.asarray(f(x)).reshape(())[()]

    value, error, info = integrate.quad_vec(
        scalar_integrand, a, b,
        epsabs=cfg.abs_tol, epsrel=cfg.rel_tol, norm='max', limit=limit,
        points=list(edges[1:-1]) if n_init > 1 else None, full_output=True,
    )
    value = np.asarray(value).reshape(())[()]
    error = float(error)
    tolerance = max(cfg.abs_tol, cfg.rel_tol * abs(value))

    if info.status != 0:
        if error > 10.0 * tolerance:
            logger.error("Adaptive quadrature did not converge", extra={
                'operation': 'integrate_interval',
                'error_estimate': error,
                'tolerance': tolerance,
                'evaluations': info.neval,
                'status': info.status,
            })
            raise NoConvergenceError(
                f"error estimate {error:.3e} above 10x tolerance {tolerance:.3e} on [{a}, {b}]",
                error_estimate=error, tolerance=tolerance
            )
        logger.debug("Quadrature stopped at the interval limit within 10x tolerance", extra={
            'operation': 'integrate_interval', 'error_estimate': error, 'tolerance': tolerance,
        })

    value = complex(value) if np.iscomplexobj(value) else float(value)
    return QuadResult(value=value, abs_error_estimate=error, evaluations=int(info.neval))


def integrate_gaussian_weighted(f: Integrand, decay_rate: float, cfg: Optional[QuadConfig] = None,
                                frequency: float = 0.0, center: float = 0.0,
                                breakpoints: Iterable[float] = ()) -> QuadResult:
    """Integrate f(y) exp(-decay_rate (y - center)^2) over the real line.

    The line is truncated at window_halfwidth_sigmas / sqrt(decay_rate) about
    center; breakpoints inside the window split it so that kinks of f fall on
    segment endpoints.
    """
    cfg = cfg or QuadConfig()
    if not decay_rate > 0.0:
        raise ValueError(f"decay_rate must be positive, got {decay_rate}")

    half_width = cfg.window_halfwidth_sigmas / math.sqrt(decay_rate)
    lower, upper = center - half_width, center + half_width
    cuts = sorted({float(x) for x in breakpoints if lower < x < upper})
    edges = [lower, *cuts, upper]

    def weighted(y: np.ndarray) -> np.ndarray:
        return np.asarray(f(y)) * np.exp(-decay_rate * (y - center) ** 2)

    value = 0.0
    error = 0.0
    evaluations = 0
    for left, right in zip(edges[:-1], edges[1:]):
        piece = integrate_interval(weighted, left, right, cfg, frequency=frequency)
        value += piece.value
        error += piece.abs_error_estimate
        evaluations += piece.evaluations

    return QuadResult(value=value, abs_error_estimate=error, evaluations=evaluations)
