"""
Berry Smoothing Scans

Measures the beyond-all-orders constant of a solution across a Stokes line
on the Berry scale x = r e^(i Omega / sqrt(r)):

    C(Omega) = [y(x) - sum_{k<=N} a_k x^(-k-offset)] / (e^(-omega x) x^(-beta'))

and fits it to S/2 erf((Omega - center)/width) + offset. The solution is
the alpha-averaged Laplace sum of the series, continued from the Stokes
line by integrating along the fixed Stokes ray.
"""

import cmath
import logging
import math
from typing import Dict, List, Optional, Sequence

import numpy as np
from scipy.optimize import least_squares
from scipy.special import erf
from tqdm import tqdm

from ..numerics.precision import PrecisionContext, Number
from ..equations.coefficients import generate_coefficients
from ..equations.equation_spec import EquationSpec
from ..equations.oracles import exact_solution, stokes_reference
from ..borel.borel_function import BorelFunction, borel_transform
from ..borel.summation import AverageSpec, averaged_sum
from ..truncation.optimal_truncation import least_term_index, truncated_sum, table_length, working_context
from ...utils.exceptions import ModelUnavailableError

logger = logging.getLogger(__name__)

BERRY_WIDTH = math.sqrt(2)
DEFAULT_GRID = tuple(np.linspace(-3.5, 3.5, 25))
MONOTONE_TOLERANCE = 0.02
REFERENCE_MARGIN_BITS = 48


def berry_point(r: float, omega: float) -> complex:
    """x = r e^(i Omega / sqrt(r))."""
    return r * complex(math.cos(omega / math.sqrt(r)), math.sin(omega / math.sqrt(r)))


def berry_model(S: complex, omega_grid: Sequence[float], center: float = 0.0,
                offset: complex = 0, width: float = BERRY_WIDTH) -> np.ndarray:
    """S/2 erf((Omega - center)/width) + offset on a grid."""
    grid = np.asarray(omega_grid, dtype=float)
    return 0.5 * complex(S) * erf((grid - center) / width) + complex(offset)


def fit_erf(omega_grid: Sequence[float], values: Sequence[complex], free_width: bool = False) -> Dict:
    """
    Least-squares fit of S/2 erf((Omega - center)/width) + offset.

    Args:
        omega_grid: Scan variable
        values: Measured complex constants
        free_width: Fit the width too (fixed at sqrt(2) otherwise)

    Returns:
        Dict with S_fit, center, width, offset, residual_rms
    """
    grid = np.asarray(omega_grid, dtype=float)
    data = np.asarray(values, dtype=complex)
    jump = data[-1] - data[0]
    start = [jump.real, jump.imag, 0.0, data.mean().real, data.mean().imag]
    if free_width:
        start.append(BERRY_WIDTH)

    def unpack(params):
        width = params[5] if free_width else BERRY_WIDTH
        return complex(params[0], params[1]), params[2], width, complex(params[3], params[4])

    def residuals(params):
        S, center, width, offset = unpack(params)
        diff = berry_model(S, grid, center, offset, width) - data
        return np.concatenate([diff.real, diff.imag])

    result = least_squares(residuals, start)
    S, center, width, offset = unpack(result.x)
    diff = berry_model(S, grid, center, offset, width) - data
    return {
        "S_fit": S,
        "center": float(center),
        "width": float(abs(width)),
        "offset": offset,
        "residual_rms": float(np.sqrt(np.mean(np.abs(diff) ** 2))),
    }


class BerryScan:
    """Measured connection constants along a Berry parabola and their erf fit."""

    def __init__(
        self,
        spec_name: str,
        r: int,
        omega_grid: Sequence[float],
        measured_C: Sequence[complex],
        fit: Dict,
        alpha: float = 0.5,
        label: str = "C",
        expected_S: Optional[complex] = None,
        bits: Optional[int] = None
    ):
        self.spec_name = spec_name
        self.r = r
        self.omega_grid = [float(w) for w in omega_grid]
        self.measured_C = [complex(c) for c in measured_C]
        self.fit = fit
        self.alpha = alpha
        self.label = label
        self.expected_S = expected_S
        self.bits = bits

    @property
    def max_arg(self) -> float:
        """Largest |arg x| visited by the scan."""
        return max(abs(w) for w in self.omega_grid) / math.sqrt(self.r)

    @property
    def total_jump(self) -> complex:
        return self.measured_C[-1] - self.measured_C[0]

    @property
    def jump_consistency(self) -> float:
        """|C(last) - C(first) - fitted jump over the grid| / |S_fit|."""
        fit = self.fit
        ends = berry_model(fit["S_fit"], [self.omega_grid[0], self.omega_grid[-1]],
                           fit["center"], fit["offset"], fit["width"])
        return abs(self.total_jump - (ends[1] - ends[0])) / abs(fit["S_fit"])

    def fitted_values(self) -> np.ndarray:
        fit = self.fit
        return berry_model(fit["S_fit"], self.omega_grid, fit["center"], fit["offset"], fit["width"])

    def deviation_from(self, S: complex, center: float = 0.0, width: float = BERRY_WIDTH,
                       offset: complex = 0) -> float:
        """max |C(Omega) - S/2 erf((Omega - center)/width) - offset|."""
        model = berry_model(S, self.omega_grid, center, offset, width)
        return float(np.max(np.abs(np.asarray(self.measured_C) - model)))

    def is_monotone(self, tolerance: float = MONOTONE_TOLERANCE) -> bool:
        """C projected on the fitted jump direction never steps back by more than tolerance |S_fit|."""
        S = complex(self.fit["S_fit"])
        u = [((c - self.measured_C[0]) * S.conjugate()).real / abs(S) ** 2 for c in self.measured_C]
        return all(b - a >= -tolerance for a, b in zip(u, u[1:]))

    def rows(self) -> List[Dict]:
        """One row per grid point: Omega, measured C and fitted model."""
        model = self.fitted_values()
        return [
            {"omega": w, "re_C": c.real, "im_C": c.imag, "re_model": m.real, "im_model": m.imag}
            for w, c, m in zip(self.omega_grid, self.measured_C, model)
        ]

    def to_dict(self) -> Dict:
        fit = {key: (complex(v) if isinstance(v, complex) else v) for key, v in self.fit.items()}
        out = {
            "equation": self.spec_name,
            "label": self.label,
            "r": self.r,
            "alpha": self.alpha,
            "points": len(self.omega_grid),
            "max_arg": self.max_arg,
            "fit": fit,
            "total_jump": self.total_jump,
            "monotone": self.is_monotone(),
        }
        if self.expected_S is not None:
            out["expected_S"] = complex(self.expected_S)
        return out

    def __repr__(self) -> str:
        return (f"BerryScan({self.spec_name}/{self.label}, r={self.r}, points={len(self.omega_grid)}, "
                f"S_fit={complex(self.fit['S_fit']):.6g}, center={self.fit['center']:.4g})")


def singular_scale(spec: EquationSpec, x: Number, ctx: PrecisionContext, j: int = 1):
    """e^(-omega x) x^(-beta') for singular point j."""
    mp = ctx.mp
    point = spec.dominant_singularity(j)
    z = ctx.mpc(x)
    return mp.exp(-ctx.mpc(point.location) * z) * mp.power(z, -ctx.convert(point.beta_prime))


def stokes_constant_of(spec: EquationSpec, ctx: PrecisionContext, j: int = 1):
    """Recorded or independently known S_j."""
    point = spec.dominant_singularity(j)
    if point.stokes_constant is not None:
        return ctx.mpc(point.stokes_constant)
    S = stokes_reference(spec, ctx)
    if S is None:
        raise ModelUnavailableError(f"{spec.name}: no Stokes constant known for singular point {j}")
    return ctx.mpc(S)


def stokes_ray(spec: EquationSpec, j: int = 1) -> float:
    """Direction arg omega_j of the Borel-plane ray carrying singular point j."""
    return cmath.phase(complex(spec.dominant_singularity(j).location))


def reference_tolerance(spec: EquationSpec, x: Number, ctx: PrecisionContext):
    """Quadrature tolerance REFERENCE_MARGIN_BITS below the exponentially small scale at x."""
    return abs(singular_scale(spec, x, ctx)) * ctx.mp.ldexp(1, -REFERENCE_MARGIN_BITS)


def averaged_reference(
    spec: EquationSpec,
    bf: BorelFunction,
    x: Number,
    avg: AverageSpec,
    ctx: PrecisionContext
):
    """
    alpha-averaged Laplace sum continued from the Stokes line to x.

    Integrates along the fixed Stokes ray arg p = arg omega_1 rather than
    -arg x, which is the analytic continuation of the average for
    |arg x + arg omega_1| < pi/2.
    """
    return averaged_sum(bf, x, avg, ctx, tol=reference_tolerance(spec, x, ctx), angle=stokes_ray(spec))


def oracle_average(
    spec: EquationSpec,
    x: Number,
    alpha: float,
    ctx: PrecisionContext,
    stokes_constant: Optional[complex] = None
):
    """
    Closed-form counterpart of averaged_reference built on the solution oracle.

    (1 - alpha) L^above + alpha L^below = balanced + (1/2 - alpha)(L^above - L^below),
    and the lateral difference is S e^(-omega x) x^(-beta'). Used to cross-check
    Laplace sums, never as their replacement.
    """
    y = exact_solution(spec, x, ctx, method="continued")
    if alpha == 0.5:
        return y
    S = ctx.mpc(stokes_constant) if stokes_constant is not None else stokes_constant_of(spec, ctx)
    return y + (ctx.mpf(0.5) - ctx.mpf(alpha)) * S * singular_scale(spec, x, ctx)


def berry_scan(
    spec: EquationSpec,
    r: int = 400,
    omega_grid: Sequence[float] = DEFAULT_GRID,
    avg: AverageSpec = AverageSpec(),
    ctx: Optional[PrecisionContext] = None,
    verbose: bool = False
) -> BerryScan:
    """
    Connection constant across the first Stokes line on the Berry scale.

    Args:
        spec: Equation with a Borel continuation
        r: Base radius (integer)
        omega_grid: Omega values
        avg: Averaging weights of the reference Laplace sum (depth 1)
        ctx: Precision context (raised to resolve e^(-r) if needed)
        verbose: Show a progress bar

    Returns:
        BerryScan with the erf fit (width fixed at sqrt(2))
    """
    if int(r) != r or r < 1:
        raise ValueError(f"r must be a positive integer, got {r}")
    r = int(r)
    ctx = working_context(spec, r, ctx, log_level=logging.WARNING)
    table = generate_coefficients(spec, table_length(spec, r), ctx)
    bf = borel_transform(table, spec, ctx)
    try:
        S_known = stokes_constant_of(spec, ctx)
    except ModelUnavailableError:
        S_known = None

    measured = []
    for omega in tqdm(omega_grid, desc=f"Berry scan {spec.name}", disable=not verbose):
        x = ctx.mpc(berry_point(r, float(omega)))
        N = least_term_index(table, x, ctx)
        remainder = averaged_reference(spec, bf, x, avg, ctx) - truncated_sum(table, x, N, ctx)
        measured.append(complex(remainder / singular_scale(spec, x, ctx)))

    fit = fit_erf(omega_grid, measured)
    scan = BerryScan(spec.name, r, omega_grid, measured, fit, alpha=avg.alpha,
                     expected_S=None if S_known is None else complex(S_known), bits=ctx.bits)
    logger.info("%r", scan)
    return scan
