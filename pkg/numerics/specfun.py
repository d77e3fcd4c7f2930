"""
Orthogonal polynomials and Gamma-function values.

Laguerre and Hermite polynomials are evaluated by their three-term
recurrences in the degree; the alternating Laguerre series loses precision
for large arguments and is not used for evaluation. All functions accept
numpy arrays for the continuous argument.
"""

import logging
import math
from typing import Union

import numpy as np
from scipy import special

from utils.error_handler import SpecialFunctionDomainError

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]


def _check_degree(n: int) -> int:
    if int(n) != n or n < 0:
        raise SpecialFunctionDomainError(f"polynomial degree must be a non-negative integer, got {n}")
    return int(n)


def laguerre(n: int, k: float, x: ArrayLike) -> ArrayLike:
    """Generalized Laguerre polynomial L_n^k(x).

    Uses (j+1) L_{j+1} = (2j + 1 + k - x) L_j - (j + k) L_{j-1}.

    Args:
        n: Degree, n >= 0
        k: Order, k > -1
        x: Evaluation points, float or numpy.ndarray

    Returns:
        L_n^k(x), same shape as x

    Raises:
        SpecialFunctionDomainError: If n is negative or k <= -1
    """
    n = _check_degree(n)
    if not k > -1.0:
        raise SpecialFunctionDomainError(f"Laguerre order must exceed -1, got {k}")

    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if n == 0:
        return prev if prev.ndim else float(prev)

    curr = 1.0 + k - x
    for j in range(1, n):
        prev, curr = curr, ((2 * j + 1 + k - x) * curr - (j + k) * prev) / (j + 1)

    return curr if curr.ndim else float(curr)


def hermite(n: int, u: ArrayLike) -> ArrayLike:
    """Physicists' Hermite polynomial H_n(u) via H_{j+1} = 2u H_j - 2j H_{j-1}."""
    n = _check_degree(n)

    u = np.asarray(u, dtype=float)
    prev = np.ones_like(u)
    if n == 0:
        return prev if prev.ndim else float(prev)

    curr = 2.0 * u
    for j in range(1, n):
        prev, curr = curr, 2.0 * u * curr - 2.0 * j * prev

    return curr if curr.ndim else float(curr)


def log_gamma(x: float) -> float:
    """Natural log of Gamma(x) for x > 0."""
    if not x > 0.0:
        raise SpecialFunctionDomainError(f"log_gamma requires x > 0, got {x}")
    return float(special.gammaln(x))


def binomial_general(a: float, j: int) -> float:
    """a (a-1) ... (a-j+1) / j! for real a and integer j >= 0.

    Integer a with 0 <= a < j gives exactly 0.
    """
    j = _check_degree(j)
    if float(a).is_integer() and 0 <= a < j:
        return 0.0
    return float(special.binom(a, j))


def log_factorial_ratio(n: int, shift: float) -> float:
    """ln(n! / Gamma(n + shift)), computed in log space."""
    n = _check_degree(n)
    return log_gamma(n + 1.0) - log_gamma(n + shift)


def factorial_ratio(n: int, shift: float) -> float:
    """n! / Gamma(n + shift), exponentiated once from log space."""
    return math.exp(log_factorial_ratio(n, shift))
