"""
Exceptions

Error hierarchy shared by the numerical kernel, the experiment modules and
the command-line runner. Every error carries the process exit code the
runner uses when it escapes an experiment.
"""

from typing import Optional


class AsymptoticsError(Exception):
    """Base class for all toolkit errors."""

    exit_code = 1


# Configuration errors (exit 2)

class ConfigValidationError(AsymptoticsError, ValueError):
    """A run configuration does not match the schema."""

    exit_code = 2

    def __init__(self, message: str, field: Optional[str] = None):
        """
        Initialize the error.

        Args:
            message: Human-readable description
            field: Offending configuration key, if known
        """
        super().__init__(message)
        self.field = field


class UnknownEquationError(ConfigValidationError):
    """Requested catalog entry does not exist."""


# Numerical errors (exit 3)

class NumericalError(AsymptoticsError):
    """A computation could not deliver a trustworthy value."""

    exit_code = 3


class GammaPoleError(NumericalError, ValueError):
    """Gamma function evaluated at a nonpositive integer."""


class InsufficientDataError(NumericalError, ValueError):
    """Too few sequence entries or grid points for the requested operation."""


class SingularPadeError(NumericalError):
    """Degenerate Pade table: the defining linear system is singular."""

    def __init__(self, message: str, m: int, n: int):
        super().__init__(message)
        self.m = m
        self.n = n


class NonDecayingRayError(NumericalError, ValueError):
    """Laplace kernel does not decay along the terminal ray."""


class QuadratureNonConvergenceError(NumericalError):
    """Adaptive quadrature did not reach the requested tolerance."""


class IntegrationNonConvergenceError(NumericalError):
    """ODE integration oracle did not converge."""


class OracleUnavailableError(NumericalError):
    """Equation has no exact-solution oracle."""


class TableTooShortError(NumericalError, ValueError):
    """Coefficient table does not reach past the least term."""


class NoReferenceError(NumericalError):
    """Requested reference solution is not available for this equation."""


class AtSingularityError(NumericalError):
    """Borel function evaluated at a recorded singular point."""


class OutsideTrustRegionError(NumericalError):
    """Pade continuation evaluated where neighbouring approximants disagree."""


class UnsupportedDepthError(NumericalError):
    """Multi-crossing average requested without a closed-form continuation."""


class OscillationDetectedError(NumericalError):
    """Stokes-constant sequence does not settle (equimodular or resonant singularities)."""

    def __init__(self, message: str, raw_sequence=None):
        super().__init__(message)
        self.raw_sequence = raw_sequence


class ModelUnavailableError(NumericalError):
    """No late-term model is available for the requested singularity."""


class NonConvergenceError(NumericalError):
    """Successive values along a grid do not stabilize."""


class RankDeficientFitError(NumericalError):
    """Least-squares design matrix is numerically rank deficient."""


class ModeSeparationError(NumericalError):
    """Remainder cannot be split reliably onto the homogeneous modes."""
