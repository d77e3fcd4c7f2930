"""
Wigner Function Evaluators

Center-of-mass and relative Wigner functions of the two-particle model in
dimensionless phase-space variables, scaled so that W(0, 0) of the ground
state is 1:

    W_cm(Q, P)  = integral dY phi(Q + Y) phi(Q - Y) exp(4 i P Y)
    W_rel(q, p) = integral dy psi(q + y) psi(q - y) exp(i p y)

with phi and psi the normalized eigenfunctions of services.csm_model. These
kernels reproduce the closed center-of-mass form and the n = 0, alpha = 0
relative form exactly, and fix the phase-space integrals at pi/2 and 2 pi.

The relative function has three independent evaluation paths:

* operator: a Laguerre/Laguerre/power operator product applied to a
  momentum Gaussian, carried exactly by numerics.polygauss
* series: a finite sum of Gaussian moment integrals in closed Hermite form
* quadrature: the overlap integral above, evaluated adaptively

plus the harmonic-oscillator closed form for alpha in {0, 1} and its
large-order asymptotic expansion.
"""

import logging
import math
import time
from functools import lru_cache
from typing import List, Optional, Sequence

import numpy as np

from models.parameters import QuadConfig
from models.phase_space import EvalResult, PhasePoint, WignerKind, WignerMethod, WignerSpec, combined_index
from numerics.polygauss import (
    DEFAULT_RESIDUE_TOL,
    BiPoly,
    GaussianAnsatz,
    OperatorPoly,
    apply_operator,
    eval_ansatz,
    laguerre_operator,
    realify,
)
from numerics.quad import integrate_gaussian_weighted
from numerics.specfun import binomial_general, factorial_ratio, hermite, laguerre
from services.csm_model import CM_RATE, signed_power
from utils.error_handler import InvalidSpecError, NumericResidueError, SingularPointError

logger = logging.getLogger(__name__)

ASYMPTOTIC_MIN_RADIUS = 1e-8
# method tag of the center-of-mass and harmonic-oscillator closed forms
CLOSED_FORM_METHOD = "closed_form"


def _check_residue(residue: float, tol: float, operation: str) -> None:
    if residue > tol:
        logger.error("Imaginary residue above tolerance", extra={
            'operation': operation, 'residue': residue, 'tolerance': tol
        })
        raise NumericResidueError(
            f"{operation}: relative imaginary residue {residue:.3e} exceeds {tol:.1e}",
            residue=residue, tolerance=tol
        )


def _relative_residue(value: complex) -> float:
    return abs(value.imag) / max(1.0, abs(value.real))


def _integer_alpha(alpha: float, method: WignerMethod) -> int:
    if not float(alpha).is_integer():
        raise InvalidSpecError(f"method {method.value} requires integer alpha, got {alpha}")
    return int(alpha)


# ---------------------------------------------------------------------------
# center of mass
# ---------------------------------------------------------------------------

def cm_wigner(l: int, Q_bar: float, P_bar: float) -> EvalResult:
    """(-1)^l exp(-2Q^2 - 2P^2) L_l(4Q^2 + 4P^2)"""
    radius = 4.0 * (Q_bar * Q_bar + P_bar * P_bar)
    value = (-1) ** l * math.exp(-0.5 * radius) * laguerre(l, 0.0, radius)
    return EvalResult(value=float(value), method=CLOSED_FORM_METHOD)


def cm_wigner_quad(l: int, Q_bar: float, P_bar: float, cfg: Optional[QuadConfig] = None) -> EvalResult:
    """Center-of-mass Wigner function by direct quadrature of the overlap integral"""
    log_norm = 0.5 * math.log(CM_RATE / math.pi) - (l * math.log(2.0) + math.lgamma(l + 1.0))
    prefactor = math.exp(log_norm - CM_RATE * Q_bar * Q_bar)
    root = math.sqrt(CM_RATE)

    def integrand(y: np.ndarray) -> np.ndarray:
        return (prefactor * hermite(l, root * (Q_bar + y)) * hermite(l, root * (Q_bar - y))
                * np.exp(4j * P_bar * y))

    result = integrate_gaussian_weighted(integrand, CM_RATE, cfg, frequency=4.0 * abs(P_bar))
    value = complex(result.value)
    return EvalResult(
        value=value.real,
        method=WignerMethod.QUADRATURE.value,
        imag_residue=_relative_residue(value),
        quad_error=result.abs_error_estimate,
    )


# ---------------------------------------------------------------------------
# relative motion: operator path
# ---------------------------------------------------------------------------

@lru_cache(maxsize=64)
def relative_ansatz(n: int, alpha: int, omega_bar: float,
                    residue_tol: float = DEFAULT_RESIDUE_TOL) -> GaussianAnsatz:
    """
    Real polynomial-times-Gaussian form of the relative Wigner function

    Builds L(w/2 (q - i d)^2) L(w/2 (q + i d)^2) [w/2 (q^2 + d^2)]^alpha as one
    operator polynomial, applies it to exp(-p^2 / 2w), and multiplies by
    sqrt(pi) n! / Gamma(n + alpha + 1/2) exp(-w q^2 / 2).

    Args:
        n: Relative quantum number
        alpha: Integer sector parameter
        omega_bar: Dimensionless hybrid frequency
        residue_tol: Largest accepted relative imaginary coefficient

    Returns:
        GaussianAnsatz with real coefficients; cached per arguments

    Raises:
        NumericResidueError: If the imaginary coefficients do not cancel
    """
    started = time.perf_counter()
    rate = omega_bar / 2.0
    order = alpha - 0.5

    power = OperatorPoly.from_terms({(2, 0): rate, (0, 2): rate}) ** alpha
    operator = laguerre_operator(n, order, rate, -1) * laguerre_operator(n, order, rate, 1) * power

    seed = GaussianAnsatz.gaussian(a=rate, c=1.0 / (2.0 * omega_bar))
    prefactor = math.sqrt(math.pi) * factorial_ratio(n, alpha + 0.5)
    ansatz = realify(apply_operator(operator, seed).scaled(prefactor), residue_tol)

    logger.info("Built relative Wigner ansatz", extra={
        'operation': 'relative_ansatz',
        'n': n,
        'alpha': alpha,
        'omega_bar': omega_bar,
        'degree': ansatz.poly.total_degree,
        'imag_residue': ansatz.imag_residue,
        'duration_ms': round((time.perf_counter() - started) * 1000.0, 3),
    })
    return ansatz


def rel_wigner_operator(n: int, alpha: int, omega_bar: float, pt: PhasePoint,
                        residue_tol: float = DEFAULT_RESIDUE_TOL) -> EvalResult:
    """Relative Wigner function from the cached operator-path ansatz"""
    alpha = _integer_alpha(alpha, WignerMethod.OPERATOR)
    ansatz = relative_ansatz(n, alpha, float(omega_bar), residue_tol)
    value = eval_ansatz(ansatz, pt.q, pt.p)
    return EvalResult(
        value=value.real,
        method=WignerMethod.OPERATOR.value,
        imag_residue=ansatz.imag_residue,
    )


# ---------------------------------------------------------------------------
# relative motion: series path
# ---------------------------------------------------------------------------

def f_integral_closed(idx: int, p_tilde: float, b: float, hbar: float = 1.0) -> complex:
    """
    integral dy y^idx exp(-b y^2 + 2 i p_tilde y / hbar) in closed form

    b^(-(idx+1)/2) sqrt(pi) / (2^idx (-i)^idx) exp(-p_tilde^2 / (b hbar^2)) H_idx(p_tilde / (hbar sqrt(b)))
    """
    if not b > 0.0:
        raise ValueError(f"Gaussian rate must be positive, got {b}")
    scale = b ** (-(idx + 1) / 2.0) * math.sqrt(math.pi) / 2.0 ** idx
    phase = 1j ** idx  # 1 / (-i)^idx
    argument = p_tilde / (hbar * math.sqrt(b))
    return complex(scale * phase * math.exp(-p_tilde ** 2 / (b * hbar ** 2)) * hermite(idx, argument))


def _laguerre_expansion(n: int, order: float, rate: float, q: float, sign: int) -> np.ndarray:
    # coefficients in y of L_n^order(rate (q + sign y)^2), summed over the
    # Laguerre series index and the binomial index of (q + sign y)^(2m)
    coeffs = np.zeros(2 * n + 1)
    for m in range(n + 1):
        series_coef = (-1) ** m / math.factorial(m) * binomial_general(n + order, n - m) * rate ** m
        if series_coef == 0.0:
            continue
        for mu in range(2 * m + 1):
            coeffs[mu] += series_coef * math.comb(2 * m, mu) * q ** (2 * m - mu) * sign ** mu
    return coeffs


def _power_expansion(alpha: int, q: float) -> np.ndarray:
    # coefficients in y of (q^2 - y^2)^alpha
    coeffs = np.zeros(2 * alpha + 1)
    for beta in range(alpha + 1):
        coeffs[2 * beta] = (-1) ** beta * math.comb(alpha, beta) * q ** (2 * (alpha - beta))
    return coeffs


def rel_wigner_series(n: int, alpha: int, omega_bar: float, pt: PhasePoint,
                      residue_tol: float = DEFAULT_RESIDUE_TOL) -> EvalResult:
    """
    Relative Wigner function as a finite sum of Gaussian moment integrals

    The integrand psi(q + y) psi(q - y) is a polynomial in y times
    exp(-w y^2 / 2); its coefficients are the five-fold sum over the two
    Laguerre series indices, their binomial indices, and the binomial index of
    (q^2 - y^2)^alpha, grouped by the power of y. Each power is integrated by
    f_integral_closed.

    Raises:
        NumericResidueError: If the imaginary part does not cancel
    """
    alpha = _integer_alpha(alpha, WignerMethod.SERIES)
    rate = omega_bar / 2.0
    order = alpha - 0.5
    q, p = pt.q, pt.p

    coeffs = np.convolve(
        np.convolve(_laguerre_expansion(n, order, rate, q, 1), _laguerre_expansion(n, order, rate, q, -1)),
        _power_expansion(alpha, q),
    )
    moments = np.array([f_integral_closed(idx, p / 2.0, rate) for idx in range(coeffs.size)])

    prefactor = math.sqrt(rate) * factorial_ratio(n, alpha + 0.5) * rate ** alpha * math.exp(-rate * q * q)
    value = complex(prefactor * np.dot(coeffs, moments))

    residue = _relative_residue(value)
    _check_residue(residue, residue_tol, 'rel_wigner_series')
    return EvalResult(value=value.real, method=WignerMethod.SERIES.value, imag_residue=residue)


# ---------------------------------------------------------------------------
# relative motion: quadrature path
# ---------------------------------------------------------------------------

def rel_wigner_quad(n: int, alpha: float, omega_bar: float, pt: PhasePoint,
                    cfg: Optional[QuadConfig] = None,
                    residue_tol: float = DEFAULT_RESIDUE_TOL) -> EvalResult:
    """
    Relative Wigner function by adaptive quadrature of the overlap integral

    Each eigenfunction envelope contributes exp(-w y^2 / 4), so the weight
    passed to the quadrature decays at rate w / 2. Non-integer alpha uses
    |q|^alpha; the kinks at y = +-q become segment breakpoints and the result
    is flagged convention_dependent.

    Raises:
        NoConvergenceError: Propagated from the quadrature
        NumericResidueError: If the imaginary part does not cancel
    """
    rate = omega_bar / 2.0
    order = alpha - 0.5
    q, p = pt.q, pt.p
    prefactor = (math.sqrt(rate) * factorial_ratio(n, alpha + 0.5) * rate ** alpha
                 * math.exp(-rate * q * q))

    def integrand(y: np.ndarray) -> np.ndarray:
        plus = q + y
        minus = q - y
        return (prefactor
                * signed_power(plus, alpha) * signed_power(minus, alpha)
                * laguerre(n, order, rate * plus * plus) * laguerre(n, order, rate * minus * minus)
                * np.exp(1j * p * y))

    integer_alpha = float(alpha).is_integer()
    breakpoints = () if integer_alpha else (-q, q)
    result = integrate_gaussian_weighted(integrand, rate, cfg, frequency=abs(p), breakpoints=breakpoints)
    value = complex(result.value)

    residue = _relative_residue(value)
    _check_residue(residue, residue_tol, 'rel_wigner_quad')
    return EvalResult(
        value=value.real,
        method=WignerMethod.QUADRATURE.value,
        imag_residue=residue,
        quad_error=result.abs_error_estimate,
        convention_dependent=not integer_alpha,
    )


# ---------------------------------------------------------------------------
# harmonic-oscillator sectors
# ---------------------------------------------------------------------------

def _oscillator_radius(omega_bar: float, q, p):
    return omega_bar * q * q + p * p / omega_bar


def closed_form_coefficient(n: int, alpha: int) -> float:
    """sqrt(pi) (2n + alpha)! / (n! 2^(2n + alpha) Gamma(n + alpha + 1/2)); equal to 1 for alpha in {0, 1}"""
    j = 2 * n + alpha
    log_value = (0.5 * math.log(math.pi) + math.lgamma(j + 1.0) - math.lgamma(n + 1.0)
                 - j * math.log(2.0) - math.lgamma(n + alpha + 0.5))
    return math.exp(log_value)


def rel_wigner_closed_form(n: int, alpha: int, omega_bar: float, pt: PhasePoint) -> EvalResult:
    """Harmonic-oscillator sector alpha in {0, 1} with its Gamma-function coefficient written out"""
    if alpha not in (0, 1):
        raise ValueError(f"closed form exists for alpha in {{0, 1}}, got {alpha}")
    j = 2 * n + alpha
    radius = _oscillator_radius(omega_bar, pt.q, pt.p)
    value = (-1) ** alpha * closed_form_coefficient(n, alpha) * math.exp(-0.5 * radius) * laguerre(j, 0.0, radius)
    return EvalResult(value=float(value), method=CLOSED_FORM_METHOD)


def rel_wigner_g0(j: int, omega_bar: float, pt: PhasePoint) -> EvalResult:
    """(-1)^j exp(-w q^2/2 - p^2/2w) L_j(w q^2 + p^2/w)"""
    radius = _oscillator_radius(omega_bar, pt.q, pt.p)
    value = (-1) ** j * math.exp(-0.5 * radius) * laguerre(j, 0.0, radius)
    return EvalResult(value=float(value), method=WignerMethod.CLOSED_G0.value)


def g0_ansatz(j: int, omega_bar: float) -> GaussianAnsatz:
    """rel_wigner_g0 as a GaussianAnsatz, for coefficient-level comparison"""
    radius = BiPoly.from_terms({(2, 0): omega_bar, (0, 2): 1.0 / omega_bar})
    poly = BiPoly.constant(0.0)
    for m in range(j + 1):
        poly = poly + radius ** m * ((-1) ** m / math.factorial(m) * math.comb(j, m))
    return GaussianAnsatz(poly * float((-1) ** j), a=omega_bar / 2.0, c=1.0 / (2.0 * omega_bar))


def rel_wigner_asymptotic(j: int, omega_bar: float, pt: PhasePoint) -> float:
    """
    Large-order form (-1)^j / sqrt(pi) [(j + 1/2) r]^(-1/4) cos(2 sqrt((j + 1/2) r) - pi/4)

    Raises:
        SingularPointError: If r = w q^2 + p^2/w is below 1e-8
    """
    radius = _oscillator_radius(omega_bar, pt.q, pt.p)
    if radius < ASYMPTOTIC_MIN_RADIUS:
        raise SingularPointError(f"asymptotic form diverges at r = {radius:.3e}")
    scaled = (j + 0.5) * radius
    return (-1) ** j / math.sqrt(math.pi) * scaled ** -0.25 * math.cos(2.0 * math.sqrt(scaled) - 0.25 * math.pi)


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

def rel_wigner(n: int, alpha: float, omega_bar: float, pt: PhasePoint,
               method: WignerMethod = WignerMethod.OPERATOR, cfg: Optional[QuadConfig] = None,
               residue_tol: float = DEFAULT_RESIDUE_TOL) -> EvalResult:
    """Relative Wigner function by the requested path"""
    method = WignerMethod(method)
    if method == WignerMethod.OPERATOR:
        return rel_wigner_operator(n, alpha, omega_bar, pt, residue_tol)
    if method == WignerMethod.SERIES:
        return rel_wigner_series(n, alpha, omega_bar, pt, residue_tol)
    if method == WignerMethod.QUADRATURE:
        return rel_wigner_quad(n, alpha, omega_bar, pt, cfg, residue_tol)

    j = combined_index(n, alpha)
    if method == WignerMethod.CLOSED_G0:
        return rel_wigner_g0(j, omega_bar, pt)
    return EvalResult(value=rel_wigner_asymptotic(j, omega_bar, pt), method=method.value)


def total_wigner(l: int, n: int, alpha: float, omega_bar: float,
                 Q_bar: float, P_bar: float, q_bar: float, p_bar: float,
                 method: WignerMethod = WignerMethod.OPERATOR, cfg: Optional[QuadConfig] = None,
                 residue_tol: float = DEFAULT_RESIDUE_TOL) -> EvalResult:
    """Product of the center-of-mass and relative Wigner functions"""
    cm = cm_wigner(l, Q_bar, P_bar)
    rel = rel_wigner(n, alpha, omega_bar, PhasePoint(q=q_bar, p=p_bar), method, cfg, residue_tol)
    return EvalResult(
        value=cm.value * rel.value,
        method=rel.method,
        imag_residue=rel.imag_residue,
        quad_error=abs(cm.value) * rel.quad_error,
        convention_dependent=rel.convention_dependent,
    )


class WignerService:
    """Evaluates WignerSpec requests with configured tolerances"""

    def __init__(self, quad_config: Optional[QuadConfig] = None,
                 residue_tol: float = DEFAULT_RESIDUE_TOL):
        """
        Initialize WignerService

        Args:
            quad_config: Quadrature settings for the quadrature path
            residue_tol: Imaginary residue accepted on exact paths
        """
        self.quad_config = quad_config or QuadConfig()
        self.residue_tol = residue_tol

    @classmethod
    def from_config(cls, config_manager) -> 'WignerService':
        return cls(config_manager.quad_config(), config_manager.get('residue_tol', DEFAULT_RESIDUE_TOL))

    def prepare(self, spec: WignerSpec) -> None:
        """Build the operator-path ansatz up front so worker threads share it"""
        if spec.kind != WignerKind.CM and spec.method == WignerMethod.OPERATOR:
            relative_ansatz(spec.n, int(spec.alpha), float(spec.omega_bar), self.residue_tol)

    def evaluate(self, spec: WignerSpec, point: PhasePoint) -> EvalResult:
        """
        Evaluate the requested Wigner function at one point

        For kind=cm the point is (Q, P); for relative and total it is the
        relative (q, p), with total using spec.Q_bar and spec.P_bar.
        """
        if spec.kind == WignerKind.CM:
            if spec.method == WignerMethod.QUADRATURE:
                return cm_wigner_quad(spec.l, point.q, point.p, self.quad_config)
            return cm_wigner(spec.l, point.q, point.p)

        if spec.kind == WignerKind.TOTAL:
            return total_wigner(spec.l, spec.n, spec.alpha, spec.omega_bar,
                                spec.Q_bar, spec.P_bar, point.q, point.p,
                                spec.method, self.quad_config, self.residue_tol)

        return rel_wigner(spec.n, spec.alpha, spec.omega_bar, point,
                          spec.method, self.quad_config, self.residue_tol)

    def evaluate_row(self, spec: WignerSpec, q_values: Sequence[float], p: float) -> List[EvalResult]:
        """One grid row at fixed p; the operator path is evaluated vectorized"""
        if spec.kind == WignerKind.RELATIVE and spec.method == WignerMethod.OPERATOR:
            ansatz = relative_ansatz(spec.n, int(spec.alpha), float(spec.omega_bar), self.residue_tol)
            values = eval_ansatz(ansatz, np.asarray(q_values, dtype=float), p)
            return [
                EvalResult(value=float(v.real), method=WignerMethod.OPERATOR.value,
                           imag_residue=ansatz.imag_residue)
                for v in values
            ]
        return [self.evaluate(spec, PhasePoint(q=q, p=p)) for q in q_values]
