"""
Alpha Sweep

Error of optimal truncation on the Stokes line, relative to the least term,
for alpha-averaged reference solutions. Only the balanced average keeps the
ratio bounded as r grows; any other alpha leaves a multiple of the
exponentially small term that outgrows the least term like sqrt(r).
"""

import logging
import math
from typing import Dict, List, Optional, Sequence

import pandas as pd
from scipy.stats import linregress

from ..numerics.precision import PrecisionContext
from ..equations.coefficients import generate_coefficients
from ..equations.equation_spec import EquationSpec
from ..truncation.optimal_truncation import least_term_index, truncated_sum, table_length, working_context
from ..borel.borel_function import borel_transform
from ..borel.summation import AverageSpec
from .berry_scan import averaged_reference
from ...utils.exceptions import InsufficientDataError

logger = logging.getLogger(__name__)

DEFAULT_R_GRID = (100, 200, 300, 400)
DEFAULT_ALPHAS = (0.0, 0.5, 1.0)


class AlphaSweep:
    """Ratios |error|/|least term| per (alpha, r) and the log-log growth exponent per alpha."""

    def __init__(self, spec_name: str, rows: List[Dict], slopes: Dict[float, float]):
        self.spec_name = spec_name
        self.rows = rows
        self.slopes = slopes

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.rows, columns=["alpha", "r", "N", "ratio"])

    def to_dict(self) -> Dict:
        return {
            "equation": self.spec_name,
            "slopes": {str(alpha): slope for alpha, slope in self.slopes.items()},
            "points": len(self.rows),
        }

    def __repr__(self) -> str:
        shown = ", ".join(f"{alpha}: {slope:.3f}" for alpha, slope in self.slopes.items())
        return f"AlphaSweep({self.spec_name}, slopes={{{shown}}})"


def alpha_sweep(
    spec: EquationSpec,
    r_grid: Sequence[int] = DEFAULT_R_GRID,
    alpha_set: Sequence[float] = DEFAULT_ALPHAS,
    ctx: Optional[PrecisionContext] = None
) -> AlphaSweep:
    """
    Optimal-truncation error ratios on the Stokes line x = r for each alpha.

    Args:
        spec: Equation with a Borel continuation
        r_grid: Radii (at least two)
        alpha_set: Averaging weights
        ctx: Precision context (raised per radius)

    Returns:
        AlphaSweep with one slope of log(ratio) against log(r) per alpha
    """
    if len(r_grid) < 2:
        raise InsufficientDataError("a slope needs at least two radii")
    rows = []
    for r in r_grid:
        local = working_context(spec, r, ctx)
        table = generate_coefficients(spec, table_length(spec, r), local)
        x = local.mpc(r)
        N = least_term_index(table, x, local)
        partial = truncated_sum(table, x, N, local)
        least = table.abs_term(N, x, local)
        bf = borel_transform(table, spec, local)
        for alpha in alpha_set:
            reference = averaged_reference(spec, bf, x, AverageSpec(float(alpha)), local)
            ratio = float(abs(reference - partial) / least)
            rows.append({"alpha": float(alpha), "r": r, "N": N, "ratio": ratio})
            logger.debug("%s alpha=%s r=%s: ratio %.6g", spec.name, alpha, r, ratio)

    slopes = {}
    for alpha in alpha_set:
        picked = [row for row in rows if row["alpha"] == float(alpha)]
        fit = linregress([math.log(row["r"]) for row in picked], [math.log(row["ratio"]) for row in picked])
        slopes[float(alpha)] = float(fit.slope)
    sweep = AlphaSweep(spec.name, rows, slopes)
    logger.info("%r", sweep)
    return sweep
