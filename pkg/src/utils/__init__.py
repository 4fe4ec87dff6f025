"""
Utilities Module

Shared error hierarchy and logging setup.
"""

from .exceptions import (
    AsymptoticsError,
    ConfigValidationError,
    UnknownEquationError,
    NumericalError,
    GammaPoleError,
    InsufficientDataError,
    SingularPadeError,
    NonDecayingRayError,
    QuadratureNonConvergenceError,
    IntegrationNonConvergenceError,
    OracleUnavailableError,
    TableTooShortError,
    NoReferenceError,
    AtSingularityError,
    OutsideTrustRegionError,
    UnsupportedDepthError,
    OscillationDetectedError,
    ModelUnavailableError,
    NonConvergenceError,
    RankDeficientFitError,
    ModeSeparationError,
)
from .logging_config import setup_logging

__all__ = [
    'AsymptoticsError',
    'ConfigValidationError',
    'UnknownEquationError',
    'NumericalError',
    'GammaPoleError',
    'InsufficientDataError',
    'SingularPadeError',
    'NonDecayingRayError',
    'QuadratureNonConvergenceError',
    'IntegrationNonConvergenceError',
    'OracleUnavailableError',
    'TableTooShortError',
    'NoReferenceError',
    'AtSingularityError',
    'OutsideTrustRegionError',
    'UnsupportedDepthError',
    'OscillationDetectedError',
    'ModelUnavailableError',
    'NonConvergenceError',
    'RankDeficientFitError',
    'ModeSeparationError',
    'setup_logging'
]
