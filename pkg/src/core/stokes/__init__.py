"""
Stokes Module

Implements Stokes-constant extraction from late coefficients, the Dingle
rule-of-signs phase check, and the anti-Stokes reading of connection
constants.
"""

from .extraction import (
    StokesEstimate,
    extract_stokes,
    check_oscillation,
    stokes_sequence,
    late_term_factor,
    regenerate_coefficients,
    inversion_constant
)
from .dingle import DingleReport, dingle_phase_check
from .antistokes import antistokes_point, antistokes_readings, antistokes_constant, converged_reading

__all__ = [
    'StokesEstimate',
    'extract_stokes',
    'check_oscillation',
    'stokes_sequence',
    'late_term_factor',
    'regenerate_coefficients',
    'inversion_constant',
    'DingleReport',
    'dingle_phase_check',
    'antistokes_point',
    'antistokes_readings',
    'antistokes_constant',
    'converged_reading'
]
