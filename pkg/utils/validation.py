"""
Validation Utilities

Validation functions for evaluation requests, grids and zero-geometry
arguments. Each returns (is_valid, error_message) so callers decide how to
report the failure.
"""

import logging
import math
from typing import Optional, Tuple

from models.phase_space import EXACT_METHODS, G0_METHODS, WignerKind, WignerMethod, WignerSpec

logger = logging.getLogger(__name__)

VALID_METHODS = [method.value for method in WignerMethod]
VALID_KINDS = [kind.value for kind in WignerKind]


def validate_method_for_alpha(method: str, alpha: float) -> Tuple[bool, Optional[str]]:
    """
    Validate that an evaluation path can handle alpha.

    Args:
        method: Relative evaluation path
        alpha: Sector parameter

    Returns:
        Tuple of (is_valid, error_message)
    """
    if method not in VALID_METHODS:
        return False, f"Invalid method: {method}. Must be one of: {', '.join(VALID_METHODS)}"
    if not math.isfinite(alpha) or alpha < 0.0:
        return False, f"alpha must be a finite non-negative number, got {alpha}"

    method = WignerMethod(method)
    if method in EXACT_METHODS and not float(alpha).is_integer():
        return False, f"Method {method.value} requires integer alpha; use quadrature for alpha = {alpha}"
    if method in G0_METHODS and alpha not in (0.0, 1.0):
        return False, f"Method {method.value} requires alpha in {{0, 1}}, got {alpha}"
    return True, None


def validate_wigner_spec(spec: WignerSpec) -> Tuple[bool, Optional[str]]:
    """Validate an already-constructed WignerSpec against its evaluation path."""
    if spec.omega_bar < 1.0:
        return False, f"omega_bar must be at least 1, got {spec.omega_bar}"
    if spec.kind == WignerKind.CM:
        return True, None
    return validate_method_for_alpha(spec.method.value, spec.alpha)


def validate_grid_bounds(q_min: float, q_max: float, p_min: float, p_max: float,
                         n_q: int, n_p: int) -> Tuple[bool, Optional[str]]:
    """Validate grid bounds and resolution."""
    if not all(math.isfinite(x) for x in (q_min, q_max, p_min, p_max)):
        return False, "Grid bounds must be finite"
    if not q_min < q_max:
        return False, f"q_min ({q_min}) must be smaller than q_max ({q_max})"
    if not p_min < p_max:
        return False, f"p_min ({p_min}) must be smaller than p_max ({p_max})"
    if n_q < 2 or n_p < 2:
        return False, f"Grid needs at least 2 points per axis, got {n_q}x{n_p}"
    return True, None


def validate_k_max(k_max: int) -> Tuple[bool, Optional[str]]:
    """Validate the number of zero ellipses requested."""
    if k_max < 1:
        return False, f"k-max must be at least 1, got {k_max}"
    return True, None
