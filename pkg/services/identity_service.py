"""Hermite/Laguerre operator identities behind the harmonic-oscillator reduction"""
import logging
import math
from typing import List, Optional, Sequence

import numpy as np

from models.reports import IdentityReport
from numerics.polygauss import (
    GaussianAnsatz,
    OperatorPoly,
    apply_operator,
    eval_ansatz,
    hermite_operator,
    laguerre_operator,
)
from numerics.specfun import laguerre

logger = logging.getLogger(__name__)

DEFAULT_AXIS = tuple(np.linspace(-2.0, 2.0, 41))


def _report(identity: str, n: int, omega_bar: float, deviation: float, scale: float,
            tol: float) -> IdentityReport:
    relative = deviation / scale if scale > 0.0 else deviation
    report = IdentityReport(
        identity=identity,
        n=n,
        omega_bar=omega_bar,
        max_abs_deviation=deviation,
        scale=scale,
        relative_deviation=relative,
        tolerance=tol,
        passed=bool(relative <= tol),
    )
    logger.debug(f"Identity {identity} n={n}: relative deviation {relative:.3e}", extra={
        'operation': 'identity_check', 'identity': identity, 'passed': report.passed
    })
    return report


def identity_hermite_laguerre_check(n: int, u_grid: Optional[Sequence[float]] = None,
                                    v_grid: Optional[Sequence[float]] = None,
                                    tol: float = 1e-9) -> IdentityReport:
    """
    H_n(u + (i/2) d/dv) H_n(u - (i/2) d/dv) exp(-v^2) = (-1)^n 2^n n! L_n(2(u^2 + v^2)) exp(-v^2)

    The left side is built exactly with operator polynomials and evaluated on
    the grid; the deviation is reported relative to max |right side|.
    """
    u = np.asarray(DEFAULT_AXIS if u_grid is None else u_grid, dtype=float)
    v = np.asarray(DEFAULT_AXIS if v_grid is None else v_grid, dtype=float)
    uu, vv = np.meshgrid(u, v)

    operator = hermite_operator(n, 1.0, 0.5j) * hermite_operator(n, 1.0, -0.5j)
    lhs = apply_operator(operator, GaussianAnsatz.gaussian(a=0.0, c=1.0))
    lhs_values = eval_ansatz(lhs, uu, vv)

    rhs_values = ((-1) ** n * 2.0 ** n * math.factorial(n)
                  * laguerre(n, 0.0, 2.0 * (uu * uu + vv * vv)) * np.exp(-vv * vv))

    deviation = float(np.max(np.abs(lhs_values - rhs_values)))
    scale = float(np.max(np.abs(rhs_values)))
    return _report('hermite_laguerre', n, 1.0, deviation, scale, tol)


def identity_operator_halfodd_check(n: int, omega_bar: float = 1.0, tol: float = 1e-10) -> List[IdentityReport]:
    """
    sqrt(w/2)(q -+ i d) L_n^(1/2)(w/2 (q -+ i d)^2) = (-1)^n / (2^(2n+1) n!) H_(2n+1)(sqrt(w/2)(q -+ i d))

    Both sides act on exp(-p^2 / 2w); the coefficient tables of the results are
    compared relative to the largest coefficient. One report per sign.
    """
    root = math.sqrt(omega_bar / 2.0)
    seed = GaussianAnsatz.gaussian(a=0.0, c=1.0 / (2.0 * omega_bar))
    hermite_scale = (-1) ** n / (2.0 ** (2 * n + 1) * math.factorial(n))

    reports = []
    for sign, label in ((-1, 'minus'), (1, 'plus')):
        linear = OperatorPoly.linear(root, sign * 1j * root)
        lhs_operator = linear * laguerre_operator(n, 0.5, omega_bar / 2.0, sign)
        rhs_operator = hermite_operator(2 * n + 1, root, sign * 1j * root) * hermite_scale

        lhs = apply_operator(lhs_operator, seed).poly
        rhs = apply_operator(rhs_operator, seed).poly
        deviation = lhs.max_abs_deviation(rhs)
        scale = float(np.max(np.abs(rhs.coeffs)))
        reports.append(_report(f'operator_halfodd_{label}', n, omega_bar, deviation, scale, tol))
    return reports
