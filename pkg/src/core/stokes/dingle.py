"""
Dingle's Rule of Signs

Along the Stokes line of a singular point omega (arg x = -arg omega) the
late terms of the series all carry the same phase. The check evaluates the
phases of the modelled late terms S/(2 pi i) Gamma(s - beta') omega^(beta' - s) x^(-s)
over a window centered at the least term and reports their spread.
"""

import cmath
import logging
import math
from typing import Dict, Optional

import numpy as np

from ..numerics.precision import PrecisionContext, Number
from ..equations.coefficients import CoefficientTable
from ..equations.equation_spec import EquationSpec
from ..equations.oracles import stokes_reference
from ..truncation.optimal_truncation import least_term_index
from .extraction import late_term_factor
from ...utils.exceptions import ModelUnavailableError

logger = logging.getLogger(__name__)

DEFAULT_WINDOW = 20
PHASE_TOLERANCE = 0.05
LINE_TOLERANCE = 1e-9


class DingleReport:
    """Phase spread of the late terms at one point."""

    def __init__(self, spec_name: str, x: complex, indices, phases, observed_phases,
                 stokes_direction: float, tolerance: float = PHASE_TOLERANCE):
        self.spec_name = spec_name
        self.x = x
        self.indices = list(indices)
        self.phases = np.asarray(phases)
        self.observed_phases = np.asarray(observed_phases)
        self.stokes_direction = stokes_direction
        self.tolerance = tolerance

    @property
    def spread(self) -> float:
        """Max pairwise difference of the unwrapped model phases (radians)."""
        return float(self.phases.max() - self.phases.min())

    @property
    def observed_spread(self) -> float:
        """Same measure on the actual terms a_k x^(-s)."""
        if len(self.observed_phases) == 0:
            return float("nan")
        return float(self.observed_phases.max() - self.observed_phases.min())

    @property
    def on_stokes_line(self) -> bool:
        return abs(_wrap(cmath.phase(self.x) - self.stokes_direction)) < LINE_TOLERANCE

    @property
    def aligned(self) -> bool:
        return self.spread < self.tolerance

    @property
    def passed(self) -> bool:
        """Terms share a phase exactly when x lies on the Stokes line."""
        return self.aligned == self.on_stokes_line

    def to_dict(self) -> Dict:
        return {
            "equation": self.spec_name,
            "x": self.x,
            "window": [self.indices[0], self.indices[-1]],
            "spread": self.spread,
            "observed_spread": self.observed_spread,
            "on_stokes_line": self.on_stokes_line,
            "passed": self.passed,
        }

    def __repr__(self) -> str:
        return (f"DingleReport({self.spec_name}, arg x={cmath.phase(self.x):.4g}, "
                f"spread={self.spread:.4g}, passed={self.passed})")


def _wrap(angle: float) -> float:
    return math.remainder(angle, 2 * math.pi)


def dingle_phase_check(
    table: CoefficientTable,
    spec: EquationSpec,
    x: Number,
    j: int = 1,
    window: int = DEFAULT_WINDOW,
    ctx: Optional[PrecisionContext] = None,
    stokes_constant: Optional[complex] = None,
    tolerance: float = PHASE_TOLERANCE
) -> DingleReport:
    """
    Phase spread of the modelled late terms around the least term at x.

    Args:
        table: Coefficient table with K >= |x| + 10
        spec: Equation providing the singular point
        x: Evaluation point
        j: Singular point index (1-based)
        window: Number of index steps covered, centered at the least term
        ctx: Precision context
        stokes_constant: S_j (default: recorded or independently known value)
        tolerance: Spread below which the phases count as aligned

    Returns:
        DingleReport

    Raises:
        ModelUnavailableError: No Gamma late-term law or no Stokes constant for point j
    """
    ctx = ctx or PrecisionContext()
    mp = ctx.mp
    if not spec.singular_points:
        raise ModelUnavailableError(f"{spec.name} records no singular points")
    point = spec.dominant_singularity(j)
    if point.nominal:
        raise ModelUnavailableError(f"{spec.name}: singular point {j} has no Gamma late-term law")
    S = stokes_constant if stokes_constant is not None else point.stokes_constant
    if S is None:
        S = stokes_reference(spec, ctx)
    if S is None:
        raise ModelUnavailableError(f"{spec.name}: no Stokes constant known for singular point {j}")

    N = least_term_index(table, x, ctx)
    half = window // 2
    beta = ctx.convert(point.beta_prime)
    values = table.in_context(ctx)
    scale = ctx.mpc(S) / (2j * mp.pi)
    z = ctx.mpc(x)

    indices, model, observed = [], [], []
    start = max(0, N - half)
    for k in range(start, min(table.K, start + window) + 1):
        s = ctx.convert(table.power(k))
        if mp.re(s - beta) <= 0:
            continue
        indices.append(k)
        power = mp.power(z, -s)
        model.append(float(mp.arg(scale * late_term_factor(point, s, ctx) * power)))
        if values[k] != 0:
            observed.append(float(mp.arg(values[k] * power)))
    if len(indices) < 2:
        raise ModelUnavailableError(f"{spec.name}: fewer than two modelled terms around N={N}")

    report = DingleReport(spec.name, complex(x), indices, np.unwrap(model),
                          np.unwrap(observed) if observed else [],
                          -point.phase, tolerance)
    logger.debug("%r over k = %d..%d", report, indices[0], indices[-1])
    return report
