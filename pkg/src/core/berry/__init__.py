"""
Berry Module

Implements Berry-scale smoothing scans with erf fits, the alpha sweep of
truncation errors on the Stokes line, and the resonant-family coefficient
fit and two-mode scans.
"""

from .berry_scan import (
    BerryScan,
    berry_point,
    berry_model,
    fit_erf,
    singular_scale,
    stokes_constant_of,
    stokes_ray,
    averaged_reference,
    oracle_average,
    berry_scan
)
from .alpha_sweep import AlphaSweep, alpha_sweep
from .resonant import (
    ResonantFit,
    wkb_amplitudes,
    resonant_coefficient_fit,
    project_on_modes,
    resonant_berry_scan
)

__all__ = [
    'BerryScan',
    'berry_point',
    'berry_model',
    'fit_erf',
    'singular_scale',
    'stokes_constant_of',
    'stokes_ray',
    'averaged_reference',
    'oracle_average',
    'berry_scan',
    'AlphaSweep',
    'alpha_sweep',
    'ResonantFit',
    'wkb_amplitudes',
    'resonant_coefficient_fit',
    'project_on_modes',
    'resonant_berry_scan'
]
