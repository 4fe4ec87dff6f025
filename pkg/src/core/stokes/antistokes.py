"""
Anti-Stokes Constant Reading

On the anti-Stokes lines arg(omega x) = +-pi/2 the exponential e^(-omega x)
has unit modulus, so the beyond-all-orders constant of a solution can be
read off directly:

    (y(x) - truncated series) x^(beta') e^(omega x)  ->  C +- S/2

for the analytic continuation of the solution whose constant is C on the
Stokes line (C = 0 for the balanced solution).
"""

import logging
from typing import List, Optional, Sequence

from ..numerics.precision import PrecisionContext, Number
from ..equations.coefficients import generate_coefficients
from ..equations.equation_spec import EquationSpec
from ..equations.oracles import exact_solution
from ..truncation.optimal_truncation import least_term_index, truncated_sum, table_length, working_context
from ...utils.exceptions import NonConvergenceError

logger = logging.getLogger(__name__)

DIRECTIONS = {"plus": 1, "minus": -1}
DEFAULT_R_GRID = (50, 100, 150, 200)
DEFAULT_TOLERANCE = 0.02


def antistokes_point(spec: EquationSpec, r: float, direction: str, j: int = 1) -> complex:
    """x = r e^(i(+-pi/2 - arg omega)) on the anti-Stokes line of singular point j."""
    if direction not in DIRECTIONS:
        raise ValueError(f"Unknown direction: {direction}")
    point = spec.dominant_singularity(j)
    unit = complex(point.location) / point.modulus
    return DIRECTIONS[direction] * 1j * r / unit


def antistokes_readings(
    spec: EquationSpec,
    C_reference: Number = 0,
    direction: str = "plus",
    r_grid: Sequence[float] = DEFAULT_R_GRID,
    ctx: Optional[PrecisionContext] = None,
    j: int = 1
) -> List:
    """
    Normalized remainders along one anti-Stokes line, one per radius.

    The solution is the analytic continuation of the oracle's real-axis
    solution, shifted by C_reference x^(-beta') e^(-omega x).
    """
    point = spec.dominant_singularity(j)
    readings = []
    for r in r_grid:
        x = antistokes_point(spec, r, direction, j)
        local = working_context(spec, x, ctx)
        mp = local.mp
        z = local.mpc(x)
        beta = local.convert(point.beta_prime)
        omega = local.mpc(point.location)
        table = generate_coefficients(spec, table_length(spec, x), local)
        N = least_term_index(table, z, local)
        y = exact_solution(spec, z, local, method="continued")
        y += local.mpc(C_reference) * mp.power(z, -beta) * mp.exp(-omega * z)
        remainder = y - truncated_sum(table, z, N, local)
        readings.append(remainder * mp.power(z, beta) * mp.exp(omega * z))
        logger.debug("%s %s r=%s: %s", spec.name, direction, r, mp.nstr(readings[-1], 12))
    return readings


def antistokes_constant(
    spec: EquationSpec,
    C_reference: Number = 0,
    direction: str = "plus",
    r_grid: Sequence[float] = DEFAULT_R_GRID,
    ctx: Optional[PrecisionContext] = None,
    tolerance: float = DEFAULT_TOLERANCE,
    j: int = 1
):
    """
    Limit of the normalized remainder along the anti-Stokes line gamma^+ or gamma^-.

    Args:
        spec: Equation with a solution oracle supporting method="continued"
        C_reference: Constant of the solution on the Stokes line
        direction: "plus" (arg(omega x) = pi/2) or "minus"
        r_grid: Increasing radii
        ctx: Precision context (raised per radius as needed)
        tolerance: Relative change allowed between the last two readings
        j: Singular point index (1-based)

    Returns:
        The reading at the largest radius; expected C +- S/2

    Raises:
        NonConvergenceError: The last two readings differ by more than ``tolerance``
    """
    if len(r_grid) < 2:
        raise ValueError("antistokes_constant needs at least two radii")
    readings = antistokes_readings(spec, C_reference, direction, r_grid, ctx, j)
    return converged_reading(readings, r_grid, tolerance, label=f"{spec.name} {direction}")


def converged_reading(readings: Sequence, r_grid: Sequence[float], tolerance: float = DEFAULT_TOLERANCE,
                      label: str = ""):
    """
    Last reading, provided it moved by at most ``tolerance`` (relative) since the previous radius.

    Raises:
        NonConvergenceError: The last two readings differ by more than ``tolerance``
    """
    if len(readings) < 2:
        raise ValueError("a convergence check needs at least two readings")
    last, previous = readings[-1], readings[-2]
    change = abs(last - previous) / max(abs(last), 1)
    if change > tolerance:
        raise NonConvergenceError(
            f"{label}: anti-Stokes readings still move by {float(change):.3g} between "
            f"r={r_grid[-2]} and r={r_grid[-1]}"
        )
    return last
