"""
Exact calculus on polynomial-times-Gaussian functions.

A GaussianAnsatz represents P(q, p) * exp(-a q^2 - c p^2) with a complex
bivariate polynomial P. Differential operators in the two commuting symbols
(q, d/dp) are stored as OperatorPoly and applied in closed form: every
d/dp maps the ansatz family to itself, so the operator formula for the
relative Wigner function never leaves this carrier.

Coefficient tables are dense complex arrays indexed [i, j] by the powers of
the first and second symbol.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, Iterator, Tuple, TypeVar, Union

import numpy as np
from numpy.polynomial import polynomial as npoly
from scipy.signal import convolve2d

from numerics.specfun import binomial_general
from utils.error_handler import NumericResidueError

logger = logging.getLogger(__name__)

DEFAULT_PRUNE = 1e-300
DEFAULT_RESIDUE_TOL = 1e-9

T = TypeVar('T', bound='_CoeffTable')


def _padded_add(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    rows = max(a.shape[0], b.shape[0])
    cols = max(a.shape[1], b.shape[1])
    out = np.zeros((rows, cols), dtype=complex)
    out[:a.shape[0], :a.shape[1]] += a
    out[:b.shape[0], :b.shape[1]] += b
    return out


@dataclass(frozen=True, eq=False)
class _CoeffTable:
    """Immutable 2-D coefficient table with pruning and trimming"""
    coeffs: np.ndarray
    prune: float = field(default=DEFAULT_PRUNE, repr=False)

    def __post_init__(self):
        table = np.array(self.coeffs, dtype=complex, ndmin=2, copy=True)
        if table.ndim != 2:
            raise ValueError("coefficient table must be two-dimensional")
        table[np.abs(table) < self.prune] = 0.0

        nonzero = np.argwhere(table != 0)
        if nonzero.size == 0:
            table = np.zeros((1, 1), dtype=complex)
        else:
            rows, cols = nonzero.max(axis=0) + 1
            table = table[:rows, :cols].copy()

        table.setflags(write=False)
        object.__setattr__(self, 'coeffs', table)

    @classmethod
    def constant(cls: type[T], value: complex = 1.0) -> T:
        return cls(np.array([[value]], dtype=complex))

    @classmethod
    def monomial(cls: type[T], i: int, j: int, value: complex = 1.0) -> T:
        table = np.zeros((i + 1, j + 1), dtype=complex)
        table[i, j] = value
        return cls(table)

    @classmethod
    def from_terms(cls: type[T], terms: Dict[Tuple[int, int], complex]) -> T:
        if not terms:
            return cls.constant(0.0)
        rows = max(i for i, _ in terms) + 1
        cols = max(j for _, j in terms) + 1
        table = np.zeros((rows, cols), dtype=complex)
        for (i, j), value in terms.items():
            table[i, j] += value
        return cls(table)

    def terms(self) -> Dict[Tuple[int, int], complex]:
        """Mapping (i, j) -> coefficient of the nonzero entries"""
        return {(int(i), int(j)): complex(self.coeffs[i, j]) for i, j in np.argwhere(self.coeffs != 0)}

    def __iter__(self) -> Iterator[Tuple[Tuple[int, int], complex]]:
        return iter(self.terms().items())

    @property
    def is_zero(self) -> bool:
        return not np.any(self.coeffs)

    @property
    def total_degree(self) -> int:
        if self.is_zero:
            return 0
        return int(max(i + j for i, j in np.argwhere(self.coeffs != 0)))

    def __add__(self: T, other: T) -> T:
        return type(self)(_padded_add(self.coeffs, other.coeffs), prune=self.prune)

    def __sub__(self: T, other: T) -> T:
        return type(self)(_padded_add(self.coeffs, -other.coeffs), prune=self.prune)

    def __mul__(self: T, other: Union[T, complex, float]) -> T:
        if isinstance(other, _CoeffTable):
            return type(self)(convolve2d(self.coeffs, other.coeffs, mode='full'), prune=self.prune)
        return type(self)(self.coeffs * other, prune=self.prune)

    __rmul__ = __mul__

    def __pow__(self: T, power: int) -> T:
        if power < 0:
            raise ValueError("only non-negative powers are defined")
        result = type(self).constant(1.0)
        for _ in range(power):
            result = result * self
        return result

    def max_abs_deviation(self, other: '_CoeffTable') -> float:
        """Largest coefficientwise |self - other|"""
        return float(np.max(np.abs(_padded_add(self.coeffs, -other.coeffs))))

    def allclose(self, other: '_CoeffTable', atol: float = 1e-12) -> bool:
        return self.max_abs_deviation(other) <= atol


class BiPoly(_CoeffTable):
    """Polynomial in (q, p); coeffs[i, j] multiplies q^i p^j"""


class OperatorPoly(_CoeffTable):
    """Polynomial in the commuting symbols (q, d/dp); coeffs[i, j] multiplies q^i d^j/dp^j"""

    @classmethod
    def linear(cls, q_coef: complex, d_coef: complex, constant: complex = 0.0) -> 'OperatorPoly':
        """constant + q_coef * q + d_coef * d/dp"""
        return cls.from_terms({(0, 0): constant, (1, 0): q_coef, (0, 1): d_coef})


@dataclass(frozen=True, eq=False)
class GaussianAnsatz:
    """poly(q, p) * exp(-a q^2 - c p^2)"""
    poly: BiPoly
    a: float
    c: float
    imag_residue: float = 0.0

    def __post_init__(self):
        if self.a < 0.0:
            raise ValueError(f"q envelope rate must be non-negative, got {self.a}")
        if not self.c > 0.0:
            raise ValueError(f"p envelope rate must be positive, got {self.c}")

    @classmethod
    def gaussian(cls, a: float, c: float, scale: complex = 1.0) -> 'GaussianAnsatz':
        return cls(BiPoly.constant(scale), a, c)

    def with_poly(self, poly: BiPoly) -> 'GaussianAnsatz':
        return GaussianAnsatz(poly, self.a, self.c, self.imag_residue)

    def scaled(self, factor: complex) -> 'GaussianAnsatz':
        return self.with_poly(self.poly * factor)

    def __add__(self, other: 'GaussianAnsatz') -> 'GaussianAnsatz':
        if (self.a, self.c) != (other.a, other.c):
            raise ValueError("cannot add ansatz values with different envelopes")
        return self.with_poly(self.poly + other.poly)


def poly_mul(f: BiPoly, g: BiPoly) -> BiPoly:
    """Exact product of two coefficient tables"""
    return f * g


def poly_add(f: BiPoly, g: BiPoly) -> BiPoly:
    return f + g


def poly_scale(f: BiPoly, factor: complex) -> BiPoly:
    return f * factor


def multiply_q(f: BiPoly, power: int = 1) -> BiPoly:
    """q^power * f"""
    if power == 0:
        return f
    return BiPoly(np.pad(f.coeffs, ((power, 0), (0, 0))), prune=f.prune)


def differentiate_p(f: GaussianAnsatz) -> GaussianAnsatz:
    """d/dp of P exp(-a q^2 - c p^2) = (dP/dp - 2 c p P) exp(...)"""
    table = f.poly.coeffs
    rows, cols = table.shape
    out = np.zeros((rows, cols + 1), dtype=complex)
    if cols > 1:
        out[:, :cols - 1] += table[:, 1:] * np.arange(1, cols)
    out[:, 1:] -= 2.0 * f.c * table
    return f.with_poly(BiPoly(out, prune=f.poly.prune))


def apply_operator(opoly: OperatorPoly, f: GaussianAnsatz) -> GaussianAnsatz:
    """Apply sum c_ij q^i d^j/dp^j to the ansatz in closed form"""
    op_table = opoly.coeffs
    result = np.zeros((1, 1), dtype=complex)

    derivative = f
    for j in range(op_table.shape[1]):
        if j > 0:
            derivative = differentiate_p(derivative)
        column = op_table[:, j]
        if not np.any(column):
            continue
        # convolution with a column multiplies by sum_i c_ij q^i
        contribution = convolve2d(column[:, np.newaxis], derivative.poly.coeffs, mode='full')
        result = _padded_add(result, contribution)

    return f.with_poly(BiPoly(result, prune=f.poly.prune))


def laguerre_operator(n: int, k: float, scale: float, sign: int) -> OperatorPoly:
    """L_n^k(scale * (q + sign * i d/dp)^2) as an operator polynomial.

    Expands the Laguerre series sum_m (-1)^m/m! C(n+k, n-m) x^m and each
    (q + sign i d)^(2m) binomially; the symbols commute.
    """
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")

    table = np.zeros((2 * n + 1, 2 * n + 1), dtype=complex)
    unit = sign * 1j
    for m in range(n + 1):
        series_coef = (-1) ** m / math.factorial(m) * binomial_general(n + k, n - m) * scale ** m
        if series_coef == 0.0:
            continue
        for t in range(2 * m + 1):
            table[2 * m - t, t] += series_coef * math.comb(2 * m, t) * unit ** t

    return OperatorPoly(table)


def hermite_operator(n: int, q_scale: complex, d_scale: complex) -> OperatorPoly:
    """H_n(q_scale * q + d_scale * d/dp) by the Hermite recurrence on operators"""
    x = OperatorPoly.linear(q_scale, d_scale)
    prev = OperatorPoly.constant(1.0)
    if n == 0:
        return prev

    curr = x * 2.0
    for j in range(1, n):
        prev, curr = curr, (x * curr) * 2.0 - prev * (2.0 * j)
    return curr


def realify(f: GaussianAnsatz, tol: float = DEFAULT_RESIDUE_TOL) -> GaussianAnsatz:
    """Strip imaginary parts, recording max|Im c| / max|c| as imag_residue.

    Raises:
        NumericResidueError: if the relative residue exceeds tol
    """
    table = f.poly.coeffs
    scale = float(np.max(np.abs(table)))
    residue = float(np.max(np.abs(table.imag))) / scale if scale > 0.0 else 0.0

    if residue > tol:
        logger.error("Imaginary residue above tolerance", extra={
            'operation': 'realify', 'residue': residue, 'tolerance': tol
        })
        raise NumericResidueError(
            f"relative imaginary residue {residue:.3e} exceeds {tol:.1e}",
            residue=residue, tolerance=tol
        )

    real_poly = BiPoly(table.real, prune=f.poly.prune)
    return GaussianAnsatz(real_poly, f.a, f.c, imag_residue=residue)


def eval_ansatz(f: GaussianAnsatz, q, p):
    """P(q, p) exp(-a q^2 - c p^2) by nested Horner evaluation; broadcasts q and p"""
    q, p = np.broadcast_arrays(np.asarray(q, dtype=float), np.asarray(p, dtype=float))
    value = npoly.polyval2d(q, p, f.poly.coeffs) * np.exp(-f.a * q * q - f.c * p * p)
    return value if np.ndim(value) else complex(value)
