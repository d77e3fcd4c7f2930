"""Services module for model physics, Wigner evaluation and verification"""
from .wigner_service import WignerService

__all__ = ['WignerService']
