"""
Verification Service

Runs the numerical verification suites behind `cli verify`:

* identities     Hermite/Laguerre operator identities
* oracles        agreement of independent evaluation paths, origin values
* marginals      momentum marginals against eigenfunction densities
* normalization  phase-space integrals and eigenfunction checks
* zeros          asymptotic zero ellipses and the large-order form
* figures        negativity and localization on the figure presets
"""
import logging
import math
import time
from typing import Callable, Dict, List, Optional

import numpy as np
from numpy.polynomial import polynomial as npoly

from models.parameters import QuadConfig
from models.phase_space import PhasePoint
from models.reports import CheckResult, SuiteReport
from numerics.quad import integrate_gaussian_weighted, integrate_interval
from numerics.specfun import laguerre
from services.csm_model import ode_residual, wavefunction_cm, wavefunction_rel
from services.grid_service import grid_eval, grid_values, localization_report
from services.identity_service import identity_hermite_laguerre_check, identity_operator_halfodd_check
from services.wigner_service import (
    WignerService,
    cm_wigner,
    cm_wigner_quad,
    f_integral_closed,
    relative_ansatz,
    rel_wigner_asymptotic,
    rel_wigner_closed_form,
    rel_wigner_g0,
    rel_wigner_operator,
    rel_wigner_quad,
    rel_wigner_series,
)
from services.zero_geometry import compare_zeros_to_ellipses, zero_ellipses
from utils.logger import log_with_context

logger = logging.getLogger(__name__)

SUITES = ('identities', 'oracles', 'marginals', 'normalization', 'zeros', 'figures')

ORACLE_OMEGAS = (1.0, math.sqrt(3.0), 3.0)
ORACLE_AXIS = tuple(np.linspace(-3.0, 3.0, 9))
MARGINAL_POSITIONS = (0.25, 0.5, 1.0, 2.0)
PHASE_SPACE_TOL = 1e-6


def _agreement(a: float, b: float) -> float:
    # max(abs, rel) criterion expressed as one number
    return abs(a - b) / max(1.0, abs(b))


class VerificationService:
    """Runs verification suites and collects SuiteReports"""

    def __init__(self, wigner_service: Optional[WignerService] = None, config_manager=None):
        """
        Initialize VerificationService

        Args:
            wigner_service: Evaluator with configured tolerances
            config_manager: Source of figure presets for the figures suite
        """
        self.wigner = wigner_service or WignerService()
        self.config_manager = config_manager
        self._suites: Dict[str, Callable[[Optional[int], Optional[float]], List[CheckResult]]] = {
            'identities': self.check_identities,
            'oracles': self.check_oracles,
            'marginals': self.check_marginals,
            'normalization': self.check_normalization,
            'zeros': self.check_zeros,
            'figures': self.check_figures,
        }

    def run(self, suite: str, n_max: Optional[int] = None, tol: Optional[float] = None) -> List[SuiteReport]:
        """
        Run one suite, or every suite for 'all'

        Args:
            suite: Suite name or 'all'
            n_max: Largest quantum number exercised; suite default if omitted
            tol: Overrides the suite's primary tolerance

        Returns:
            One SuiteReport per suite run
        """
        names = SUITES if suite == 'all' else (suite,)
        reports = []
        for name in names:
            if name not in self._suites:
                raise ValueError(f"unknown suite: {name}")
            started = time.perf_counter()
            checks = self._suites[name](n_max, tol)
            report = SuiteReport(suite=name, checks=checks,
                                 duration_ms=(time.perf_counter() - started) * 1000.0)
            status = 'pass' if report.passed else 'fail'
            log_with_context(logger, 'info' if report.passed else 'warning', f"Suite {name}: {status.upper()}",
                             operation='verify', suite=name, status=status,
                             failed=[c.name for c in checks if not c.passed],
                             duration_ms=round(report.duration_ms, 3))
            reports.append(report)
        return reports

    # ------------------------------------------------------------------
    # identities
    # ------------------------------------------------------------------

    def check_identities(self, n_max: Optional[int] = None, tol: Optional[float] = None) -> List[CheckResult]:
        n_max = 10 if n_max is None else n_max
        checks = []
        for n in range(n_max + 1):
            report = identity_hermite_laguerre_check(n, tol=tol or 1e-9)
            checks.append(CheckResult.from_deviation(
                f'hermite_laguerre_n{n}', report.relative_deviation, report.tolerance,
                scale=report.scale))

        for n in range(min(n_max, 6) + 1):
            for omega_bar in (1.0, 3.0):
                reports = identity_operator_halfodd_check(n, omega_bar, tol=tol or 1e-10)
                worst = max(reports, key=lambda r: r.relative_deviation)
                checks.append(CheckResult.from_deviation(
                    f'operator_halfodd_n{n}_w{omega_bar:g}', worst.relative_deviation, worst.tolerance,
                    scale=worst.scale))
        return checks

    # ------------------------------------------------------------------
    # oracles
    # ------------------------------------------------------------------

    def check_oracles(self, n_max: Optional[int] = None, tol: Optional[float] = None) -> List[CheckResult]:
        n_max = 3 if n_max is None else n_max
        tol = tol or 1e-8
        cfg = self.wigner.quad_config
        residue_tol = self.wigner.residue_tol
        points = [PhasePoint(q=q, p=p) for q in ORACLE_AXIS for p in ORACLE_AXIS]
        checks = []

        for l in range(7):
            deviation = abs(cm_wigner(l, 0.0, 0.0).value - (-1) ** l)
            checks.append(CheckResult.from_deviation(f'cm_origin_l{l}', deviation, 1e-15))
        for j in range(7):
            deviation = abs(rel_wigner_g0(j, 1.0, PhasePoint(q=0.0, p=0.0)).value - (-1) ** j)
            checks.append(CheckResult.from_deviation(f'g0_origin_j{j}', deviation, 1e-15))

        for l in range(min(n_max, 4) + 1):
            deviation = max(
                _agreement(cm_wigner_quad(l, pt.q, pt.p, cfg).value, cm_wigner(l, pt.q, pt.p).value)
                for pt in points)
            checks.append(CheckResult.from_deviation(f'cm_quadrature_l{l}', deviation, tol))

        for n in range(n_max + 1):
            for alpha in range(5):
                for omega_bar in ORACLE_OMEGAS:
                    deviation = 0.0
                    for pt in points:
                        reference = rel_wigner_operator(n, alpha, omega_bar, pt, residue_tol).value
                        series = rel_wigner_series(n, alpha, omega_bar, pt, residue_tol).value
                        quad = rel_wigner_quad(n, alpha, omega_bar, pt, cfg, residue_tol).value
                        deviation = max(deviation, _agreement(series, reference), _agreement(quad, reference))
                    checks.append(CheckResult.from_deviation(
                        f'three_path_n{n}_a{alpha}_w{omega_bar:.4g}', deviation, tol))

        for n in range(n_max + 1):
            for alpha in (0, 1):
                for omega_bar in ORACLE_OMEGAS:
                    j = 2 * n + alpha
                    deviation = 0.0
                    for pt in points:
                        g0 = rel_wigner_g0(j, omega_bar, pt).value
                        deviation = max(
                            deviation,
                            _agreement(rel_wigner_operator(n, alpha, omega_bar, pt, residue_tol).value, g0),
                            _agreement(rel_wigner_closed_form(n, alpha, omega_bar, pt).value, g0),
                        )
                    checks.append(CheckResult.from_deviation(
                        f'g0_collapse_n{n}_a{alpha}_w{omega_bar:.4g}', deviation, 1e-10))

        checks.append(self._check_f_integrals())
        return checks

    def _check_f_integrals(self) -> CheckResult:
        cfg = QuadConfig(rel_tol=1e-13, abs_tol=1e-14)
        deviation = 0.0
        for idx in range(9):
            for p_tilde in np.linspace(-3.0, 3.0, 7):
                for b in (0.5, 1.0, 1.5):
                    closed = f_integral_closed(idx, float(p_tilde), b)
                    direct = integrate_gaussian_weighted(
                        lambda y: y ** idx * np.exp(2j * p_tilde * y), b, cfg, frequency=2.0 * abs(p_tilde)
                    ).value
                    deviation = max(deviation, abs(direct - closed) / max(1.0, abs(closed)))
        return CheckResult.from_deviation('f_integral_closed_form', deviation, 1e-10)

    # ------------------------------------------------------------------
    # marginals and normalization
    # ------------------------------------------------------------------

    def check_marginals(self, n_max: Optional[int] = None, tol: Optional[float] = None) -> List[CheckResult]:
        n_max = 3 if n_max is None else n_max
        tol = tol or PHASE_SPACE_TOL
        cfg = self.wigner.quad_config
        checks = []

        for n in range(n_max + 1):
            for alpha in range(4):
                for omega_bar in (1.0, 3.0):
                    ansatz = relative_ansatz(n, alpha, omega_bar, self.wigner.residue_tol)
                    deviation = max(
                        abs(integrate_gaussian_weighted(lambda p: _poly_part(ansatz, q, p), ansatz.c, cfg).value
                            - 2.0 * math.pi * wavefunction_rel(n, q, alpha, omega_bar) ** 2)
                        for q in MARGINAL_POSITIONS)
                    checks.append(CheckResult.from_deviation(
                        f'rel_marginal_n{n}_a{alpha}_w{omega_bar:g}', deviation, tol))

        for l in range(n_max + 1):
            deviation = max(
                abs(integrate_gaussian_weighted(lambda P: _cm_poly_part(l, Q, P), 2.0, cfg).value
                    - 0.5 * math.pi * wavefunction_cm(l, Q) ** 2)
                for Q in MARGINAL_POSITIONS)
            checks.append(CheckResult.from_deviation(f'cm_marginal_l{l}', deviation, tol))
        return checks

    def check_normalization(self, n_max: Optional[int] = None, tol: Optional[float] = None) -> List[CheckResult]:
        n_max = 3 if n_max is None else n_max
        tol = tol or PHASE_SPACE_TOL
        cfg = self.wigner.quad_config
        checks = []

        for n in range(n_max + 1):
            for alpha in range(4):
                ansatz = relative_ansatz(n, alpha, 1.0, self.wigner.residue_tol)
                total = _iterated_integral(lambda q, p: _poly_part(ansatz, q, p), ansatz.a, ansatz.c, cfg)
                checks.append(CheckResult.from_deviation(
                    f'rel_phase_space_integral_n{n}_a{alpha}', abs(total - 2.0 * math.pi), tol, value=total))

        for l in range(n_max + 1):
            total = _iterated_integral(lambda Q, P: _cm_poly_part(l, Q, P), 2.0, 2.0, cfg)
            checks.append(CheckResult.from_deviation(
                f'cm_phase_space_integral_l{l}', abs(total - 0.5 * math.pi), tol, value=total))

        for n in range(n_max + 1):
            for alpha in range(4):
                half_width = cfg.window_halfwidth_sigmas / math.sqrt(0.5)
                norm = integrate_interval(
                    lambda q: wavefunction_rel(n, q, alpha, 1.0) ** 2, -half_width, half_width, cfg).value
                checks.append(CheckResult.from_deviation(
                    f'eigenfunction_norm_n{n}_a{alpha}', abs(norm - 1.0), 1e-8))

                residue = max(abs(ode_residual(n, z, float(alpha))) for z in (0.5, 1.0, 2.0))
                checks.append(CheckResult.from_deviation(f'ode_residual_n{n}_a{alpha}', residue, 1e-5))
        return checks

    # ------------------------------------------------------------------
    # zeros and figures
    # ------------------------------------------------------------------

    def check_zeros(self, n_max: Optional[int] = None, tol: Optional[float] = None) -> List[CheckResult]:
        checks = compare_zeros_to_ellipses(20, 1.0, 4, tol=tol)

        exact = rel_wigner_g0(20, 1.0, PhasePoint(q=math.sqrt(2.0), p=0.0)).value
        approx = rel_wigner_asymptotic(20, 1.0, PhasePoint(q=math.sqrt(2.0), p=0.0))
        checks.append(CheckResult.from_deviation(
            'asymptotic_order20_r2', abs(approx - exact) / abs(exact), 0.05, exact=exact, asymptotic=approx))

        ellipses = zero_ellipses(0, 1.0, 4)
        increasing = all(a.radial_value < b.radial_value for a, b in zip(ellipses, ellipses[1:]))
        checks.append(CheckResult.from_condition('zero_radii_increasing', increasing))
        checks.append(CheckResult.from_deviation(
            'first_zero_radius_order0', abs(ellipses[0].radial_value - 9.0 * math.pi ** 2 / 32.0), 1e-12))
        return checks

    def check_figures(self, n_max: Optional[int] = None, tol: Optional[float] = None) -> List[CheckResult]:
        if self.config_manager is None:
            return [CheckResult.from_condition('figure_presets', False, reason='no preset source')]

        checks = []
        for low_name, high_name in (('fig1a', 'fig1b'), ('fig2a', 'fig2b')):
            low = self.config_manager.get_preset(low_name)
            high = self.config_manager.get_preset(high_name)
            threads = self.config_manager.get('threads')
            values_low = grid_values(grid_eval(low.spec, low.grid, self.wigner, threads))
            values_high = grid_values(grid_eval(high.spec, high.grid, self.wigner, threads))

            for check in localization_report(values_low, values_high, low.grid):
                checks.append(check.model_copy(update={'name': f'{low_name}_{high_name}_{check.name}'}))

            center = values_low[low.grid.n_p // 2, low.grid.n_q // 2]
            expected = rel_wigner_operator(low.spec.n, low.spec.alpha, low.spec.omega_bar,
                                           PhasePoint(q=0.0, p=0.0)).value
            checks.append(CheckResult.from_deviation(f'{low_name}_center', abs(center - expected), 1e-12))
        return checks


def _poly_part(ansatz, q, p):
    # relative Wigner function divided by its momentum Gaussian exp(-c p^2)
    q, p = np.broadcast_arrays(np.asarray(q, dtype=float), np.asarray(p, dtype=float))
    return np.real(npoly.polyval2d(q, p, ansatz.poly.coeffs)) * np.exp(-ansatz.a * q * q)


def _cm_poly_part(l: int, Q, P):
    # center-of-mass Wigner function divided by exp(-2 P^2)
    return (-1) ** l * np.exp(-2.0 * Q * Q) * laguerre(l, 0.0, 4.0 * (Q * Q + P * P))


def _iterated_integral(f: Callable, q_rate: float, p_rate: float, cfg: QuadConfig) -> float:
    """integral dq integral dp f(q, p) exp(-p_rate p^2); f carries its own q decay at q_rate"""
    half_width = cfg.window_halfwidth_sigmas / math.sqrt(q_rate)

    def inner(q_nodes: np.ndarray) -> np.ndarray:
        return np.array([
            integrate_gaussian_weighted(lambda p: f(float(q), p), p_rate, cfg).value
            for q in np.atleast_1d(q_nodes)
        ])

    return integrate_interval(inner, -half_width, half_width, cfg).value
