"""
Borel Module

Implements the Borel transform of stored series, continuation in the Borel
plane, lateral and alpha-averaged Laplace summation, and the jump checks at
the first singular point.
"""

from .borel_function import BorelFunction, borel_transform, continue_borel
from .summation import AverageSpec, lateral_laplace, averaged_sum, balanced_sum, summation_angle
from .jump import JumpReport, lateral_jump, borel_jump_check

__all__ = [
    'BorelFunction',
    'borel_transform',
    'continue_borel',
    'AverageSpec',
    'lateral_laplace',
    'averaged_sum',
    'balanced_sum',
    'summation_angle',
    'JumpReport',
    'lateral_jump',
    'borel_jump_check'
]
