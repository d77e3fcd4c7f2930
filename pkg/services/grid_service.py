"""
Grid Service

Evaluates a WignerSpec over a rectangular (q, p) grid. Rows of constant p are
fanned out to a thread pool; results are assembled in row order so the output
does not depend on scheduling.
"""
import logging
import os
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Sequence

import numpy as np

from models.phase_space import EvalResult, GridSpec, WignerSpec
from models.reports import CheckResult
from services.wigner_service import WignerService

logger = logging.getLogger(__name__)

# extrema smaller than this fraction of the peak are Gaussian-tail noise
EXTREMUM_FLOOR = 1e-3


def grid_eval(spec: WignerSpec, grid: GridSpec, service: Optional[WignerService] = None,
              threads: Optional[int] = None) -> List[List[EvalResult]]:
    """
    Evaluate spec on every grid point

    Args:
        spec: What to evaluate
        grid: Sampling grid
        service: Evaluator carrying tolerances; a default one if omitted
        threads: Worker count; os.cpu_count() if omitted

    Returns:
        n_p rows (increasing p) of n_q results (increasing q)
    """
    service = service or WignerService()
    workers = max(1, threads or os.cpu_count() or 1)
    q_values = grid.q_values()
    p_values = grid.p_values()

    started = time.perf_counter()
    service.prepare(spec)

    with ThreadPoolExecutor(max_workers=workers) as executor:
        rows = list(executor.map(lambda p: service.evaluate_row(spec, q_values, p), p_values))

    logger.info(f"Evaluated {grid.n_p}x{grid.n_q} grid", extra={
        'operation': 'grid_eval',
        'kind': spec.kind.value,
        'method': spec.method.value,
        'threads': workers,
        'duration_ms': round((time.perf_counter() - started) * 1000.0, 3),
    })
    return rows


def grid_values(results: List[List[EvalResult]]) -> np.ndarray:
    """Value matrix, shape (n_p, n_q)"""
    return np.array([[r.value for r in row] for row in results], dtype=float)


def grid_diagnostics(results: List[List[EvalResult]]) -> Dict[str, float]:
    """Largest imaginary residue and quadrature error over the grid"""
    flat = [r for row in results for r in row]
    return {
        'max_imag_residue': max(r.imag_residue for r in flat),
        'max_quad_error': max(r.quad_error for r in flat),
    }


def axis_extrema(values: Sequence[float], coords: Sequence[float], floor: float = EXTREMUM_FLOOR) -> List[float]:
    """Coordinates of interior local extrema above floor * max|values|"""
    values = np.asarray(values, dtype=float)
    coords = np.asarray(coords, dtype=float)
    threshold = floor * float(np.max(np.abs(values)))

    rising = np.diff(values)
    turning = np.flatnonzero(rising[:-1] * rising[1:] < 0.0) + 1
    return [float(coords[i]) for i in turning if abs(values[i]) >= threshold]


def _axis_profiles(values: np.ndarray, grid: GridSpec):
    q = np.asarray(grid.q_values())
    p = np.asarray(grid.p_values())
    q_profile = values[int(np.argmin(np.abs(p))), :]
    p_profile = values[:, int(np.argmin(np.abs(q)))]
    return q, q_profile, p, p_profile


def localization_report(values_low: np.ndarray, values_high: np.ndarray, grid: GridSpec) -> List[CheckResult]:
    """
    Compare two grids of the same state at a lower and a higher omega_bar

    Along the q axis the outermost extremum must move inward; along the p axis
    the first extremum off the origin must move outward. Both grids must have
    a negative value.
    """
    q, q_low, p, p_low = _axis_profiles(np.asarray(values_low), grid)
    _, q_high, _, p_high = _axis_profiles(np.asarray(values_high), grid)

    checks = []
    for label, values in (('low', values_low), ('high', values_high)):
        minimum = float(np.min(values))
        checks.append(CheckResult.from_condition(f'negative_region_{label}', minimum < 0.0, minimum))

    q_origin = 0.5 * (q[1] - q[0])
    p_origin = 0.5 * (p[1] - p[0])

    outer_low = [x for x in axis_extrema(q_low, q) if x > q_origin]
    outer_high = [x for x in axis_extrema(q_high, q) if x > q_origin]
    if outer_low and outer_high:
        shift = max(outer_high) - max(outer_low)
        checks.append(CheckResult.from_condition(
            'q_extremum_inward', shift < 0.0, shift, low=max(outer_low), high=max(outer_high)))
    else:
        checks.append(CheckResult.from_condition('q_extremum_inward', False, reason='no q extrema'))

    first_low = [x for x in axis_extrema(p_low, p) if x > p_origin]
    first_high = [x for x in axis_extrema(p_high, p) if x > p_origin]
    if first_low and first_high:
        shift = min(first_high) - min(first_low)
        checks.append(CheckResult.from_condition(
            'p_extremum_outward', shift > 0.0, shift, low=min(first_low), high=min(first_high)))
    else:
        checks.append(CheckResult.from_condition('p_extremum_outward', False, reason='no p extrema'))

    return checks
