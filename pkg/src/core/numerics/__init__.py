"""
Numerics Module

Implements the precision-configurable kernel: complex Gamma and erf,
Richardson extrapolation, Pade approximants, Laplace contour quadrature
and Taylor-method ODE integration.
"""

from .precision import PrecisionContext, required_bits_for_scale, Number
from .special_functions import gamma_complex, reciprocal_gamma, log_gamma_complex, erf_complex
from .acceleration import richardson, richardson_extrapolate, sliding_extrapolants
from .rational import RationalFunction, pade, diagonal_degrees
from .quadrature import Contour, ray_contour, indented_contour, lateral_contour, quad_laplace
from .taylor_ode import LinearODE, taylor_step, integrate_path

__all__ = [
    'PrecisionContext',
    'required_bits_for_scale',
    'Number',
    'gamma_complex',
    'reciprocal_gamma',
    'log_gamma_complex',
    'erf_complex',
    'richardson',
    'richardson_extrapolate',
    'sliding_extrapolants',
    'RationalFunction',
    'pade',
    'diagonal_degrees',
    'Contour',
    'ray_contour',
    'indented_contour',
    'lateral_contour',
    'quad_laplace',
    'LinearODE',
    'taylor_step',
    'integrate_path'
]
