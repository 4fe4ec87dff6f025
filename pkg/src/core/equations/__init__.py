"""
Equations Module

Implements the catalog of prepared equations, exact coefficient generation,
independent exact-solution oracles and the validity checkers.
"""

from .equation_spec import (
    EquationSpec, SingularPoint, Recurrence, LinearRecurrence, CallableRecurrence, prepared_exponents
)
from .coefficients import CoefficientTable, generate_coefficients, scaled_coefficients
from .catalog import CATALOG_NAMES, REQUIRED_PARAMS, build_catalog_equation, catalog_entries, equation_from_dict
from .oracles import (
    exact_solution, exact_solution_with_derivative, stokes_reference,
    resonant_modes, resonant_jump, resonant_mode_amplitudes, ResonantOracle
)
from .checks import CheckReport, check_nonresonance, check_prepared, check_ode_residual

__all__ = [
    'EquationSpec',
    'SingularPoint',
    'Recurrence',
    'LinearRecurrence',
    'CallableRecurrence',
    'prepared_exponents',
    'CoefficientTable',
    'generate_coefficients',
    'scaled_coefficients',
    'CATALOG_NAMES',
    'REQUIRED_PARAMS',
    'build_catalog_equation',
    'catalog_entries',
    'equation_from_dict',
    'exact_solution',
    'exact_solution_with_derivative',
    'stokes_reference',
    'resonant_modes',
    'resonant_jump',
    'resonant_mode_amplitudes',
    'ResonantOracle',
    'CheckReport',
    'check_nonresonance',
    'check_prepared',
    'check_ode_residual'
]
