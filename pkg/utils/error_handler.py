"""Error Handling Utilities for Wigner Function Evaluation"""
import logging
from typing import Optional, Tuple

from pydantic import ValidationError

logger = logging.getLogger(__name__)


EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERIC = 2


class WignerError(Exception):
    """Base exception for all evaluation errors"""

    default_code = 'WIGNER_ERROR'
    default_exit_code = EXIT_USAGE

    def __init__(self, message: str, error_code: Optional[str] = None,
                 exit_code: Optional[int] = None):
        super().__init__(message)
        self.error_code = error_code or self.default_code
        self.exit_code = exit_code if exit_code is not None else self.default_exit_code

    def details(self) -> dict:
        """Structured fields for logging"""
        return {
            'error_code': self.error_code,
            'exit_code': self.exit_code,
            'error_message': str(self),
        }


class ParameterError(WignerError):
    """Exception for invalid physical or evaluation parameters"""
    default_code = 'INVALID_PARAMETER'


class CouplingOutOfRangeError(ParameterError):
    """Raised when g falls below -hbar^2/(8 mu)"""
    default_code = 'COUPLING_OUT_OF_RANGE'


class SectorInvalidError(ParameterError):
    """Raised when the negative beta root is requested away from g = 0"""
    default_code = 'SECTOR_INVALID'


class InvalidSpecError(ParameterError):
    """Raised when a method cannot evaluate the requested spec"""
    default_code = 'INVALID_SPEC'


class SpecialFunctionDomainError(WignerError):
    """Raised when a special function argument is outside its domain"""
    default_code = 'DOMAIN_ERROR'


class SingularPointError(WignerError):
    """Raised when evaluation is requested at a singular point"""
    default_code = 'SINGULAR_POINT'


class NumericalFailure(WignerError):
    """Base exception for numerical failures of an evaluation path"""
    default_code = 'NUMERICAL_FAILURE'
    default_exit_code = EXIT_NUMERIC


class NumericResidueError(NumericalFailure):
    """Raised when a result that must be real carries an imaginary residue"""
    default_code = 'NUMERIC_RESIDUE'

    def __init__(self, message: str, residue: float, tolerance: float):
        super().__init__(message)
        self.residue = residue
        self.tolerance = tolerance

    def details(self) -> dict:
        data = super().details()
        data.update({'residue': self.residue, 'tolerance': self.tolerance})
        return data


class NoConvergenceError(NumericalFailure):
    """Raised when adaptive quadrature exhausts its depth above tolerance"""
    default_code = 'NO_CONVERGENCE'

    def __init__(self, message: str, error_estimate: float, tolerance: float):
        super().__init__(message)
        self.error_estimate = error_estimate
        self.tolerance = tolerance

    def details(self) -> dict:
        data = super().details()
        data.update({'error_estimate': self.error_estimate, 'tolerance': self.tolerance})
        return data


class ConfigurationNotFoundError(WignerError):
    """Raised when a grid preset is not found"""
    default_code = 'PRESET_NOT_FOUND'


class ConfigurationValidationError(WignerError):
    """Raised when a grid preset file is invalid"""
    default_code = 'PRESET_INVALID'


def get_user_friendly_message(error: Exception) -> str:
    """
    Generate a short message for the command line

    Args:
        error: Exception raised during evaluation

    Returns:
        Message string
    """
    messages = {
        'COUPLING_OUT_OF_RANGE': 'Coupling g is below the bound -hbar^2/(8 mu).',
        'SECTOR_INVALID': 'The negative beta root is only admitted at g = 0.',
        'INVALID_SPEC': 'The requested method cannot evaluate this state.',
        'DOMAIN_ERROR': 'Special function argument outside its domain.',
        'SINGULAR_POINT': 'Evaluation requested at a singular point.',
        'NUMERIC_RESIDUE': 'Result carries an imaginary residue above tolerance.',
        'NO_CONVERGENCE': 'Adaptive quadrature did not converge.',
        'PRESET_NOT_FOUND': 'Unknown grid preset.',
        'PRESET_INVALID': 'Grid preset file is invalid.',
    }

    if isinstance(error, WignerError):
        return f"{messages.get(error.error_code, 'Evaluation failed.')} {error}"
    if isinstance(error, ValidationError):
        return f"Invalid input: {error.error_count()} validation error(s)."
    if isinstance(error, ValueError):
        return f"Invalid input: {error}"
    if isinstance(error, OSError):
        return f"I/O failure: {error}"
    return 'An unexpected error occurred.'


def handle_wigner_error(error: Exception, operation: str) -> Tuple[int, str]:
    """
    Handle an evaluation error and return the CLI exit code and message

    Args:
        error: Exception raised by the operation
        operation: Name of the operation that failed

    Returns:
        Tuple of (exit_code, user_message)
    """
    if isinstance(error, WignerError):
        logger.error(f"Operation '{operation}' failed", extra=error.details())
        return error.exit_code, get_user_friendly_message(error)

    if isinstance(error, (ValidationError, ValueError, OSError)):
        logger.error(f"Operation '{operation}' failed", extra={
            'error_code': type(error).__name__,
            'error_message': str(error),
        })
        return EXIT_USAGE, get_user_friendly_message(error)

    logger.error(f"Operation '{operation}' failed with unexpected {type(error).__name__}",
                 exc_info=error)
    return EXIT_NUMERIC, get_user_friendly_message(error)
