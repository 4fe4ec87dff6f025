"""
Resonant Family

Experiments on y'' + 2y' + (1 + m^2/x) y = 1/x, where lambda_1 = lambda_2
and the late coefficients oscillate:

- the two-phase fit b_k ~ k^(1/4) (A_+ e^(2im sqrt k) + A_- e^(-2im sqrt k))
  of the scaled coefficients b_k = a_k/(k-1)!
- the Berry scan of the remainder split onto the two homogeneous modes
  y_+- ~ x^(1/4) e^(-x +- 2im sqrt x), one erf transition per mode
"""

import cmath
import logging
import math
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from tqdm import tqdm

from ..numerics.precision import PrecisionContext, Number
from ..equations.catalog import build_catalog_equation
from ..equations.coefficients import generate_coefficients, scaled_coefficients
from ..equations.oracles import exact_solution_with_derivative, resonant_modes, resonant_mode_amplitudes
from ..truncation.optimal_truncation import (
    envelope_least_term_index,
    truncated_sum,
    truncated_derivative,
    table_length,
    working_context
)
from .berry_scan import BerryScan, berry_point, fit_erf
from ...utils.exceptions import ModeSeparationError, RankDeficientFitError

logger = logging.getLogger(__name__)

DEFAULT_K_WINDOW = (500, 2000)
DEFAULT_BETA_GRID = tuple(np.linspace(-4.0, 4.0, 25))
MAX_FIT_CONDITION = 1e8
MAX_MODE_CONDITION = 1e6


def wkb_amplitudes(m) -> Tuple[complex, complex]:
    """Leading amplitudes e^(m^2/2) m^(-3/2) e^(-+3 pi i/4) / (2 sqrt(pi))."""
    m = float(m)
    common = math.exp(m * m / 2) * m ** -1.5 / (2 * math.sqrt(math.pi))
    return common * complex(math.cos(-3 * math.pi / 4), math.sin(-3 * math.pi / 4)), \
        common * complex(math.cos(3 * math.pi / 4), math.sin(3 * math.pi / 4))


class ResonantFit:
    """Two-phase fit of the scaled resonant coefficients."""

    def __init__(self, m, k_window: Tuple[int, int], A_plus: complex, A_minus: complex,
                 residual_rms: float, condition: float, ks=None, data=None):
        self.m = m
        self.k_window = k_window
        self.A_plus = A_plus
        self.A_minus = A_minus
        self.residual_rms = residual_rms
        self.condition = condition
        self.ks = [] if ks is None else [int(k) for k in ks]
        self.data = [] if data is None else [float(d) for d in data]

    @property
    def conjugacy(self) -> float:
        """|A_- - conj(A_+)| / |A_+|."""
        return abs(self.A_minus - self.A_plus.conjugate()) / abs(self.A_plus)

    def model(self, k) -> complex:
        phase = 2 * float(self.m) * math.sqrt(k)
        return self.A_plus * cmath.exp(1j * phase) + self.A_minus * cmath.exp(-1j * phase)

    def rows(self) -> List[Dict]:
        """k, b_k k^(-1/4) and the two-phase model over the fit window."""
        return [{"k": k, "scaled_b": d, "model": self.model(k)} for k, d in zip(self.ks, self.data)]

    def to_dict(self) -> Dict:
        expected_plus, expected_minus = wkb_amplitudes(self.m)
        return {
            "m": float(self.m),
            "k_window": list(self.k_window),
            "A_plus": self.A_plus,
            "A_minus": self.A_minus,
            "expected_A_plus": expected_plus,
            "expected_A_minus": expected_minus,
            "residual_rms": self.residual_rms,
            "conjugacy": self.conjugacy,
            "condition": self.condition,
        }

    def __repr__(self) -> str:
        return (f"ResonantFit(m={self.m}, A+={self.A_plus:.6g}, A-={self.A_minus:.6g}, "
                f"rms={self.residual_rms:.3g})")


def _parameter(m) -> Fraction:
    m = Fraction(str(m)) if not isinstance(m, Fraction) else m
    if m < 0:
        raise ValueError(f"m must be >= 0, got {m}")
    return m


def resonant_coefficient_fit(
    m=1,
    k_window: Tuple[int, int] = DEFAULT_K_WINDOW,
    ctx: Optional[PrecisionContext] = None
) -> ResonantFit:
    """
    Least-squares fit of b_k k^(-1/4) to A_+ e^(2im sqrt k) + A_- e^(-2im sqrt k).

    Args:
        m: Resonance parameter (> 0)
        k_window: Inclusive index window
        ctx: Precision context (used only for irrational m)

    Returns:
        ResonantFit; residual_rms is relative to the RMS of the fitted data

    Raises:
        RankDeficientFitError: m = 0, or phases too slow to separate over the window
    """
    m = _parameter(m)
    if m == 0:
        raise RankDeficientFitError(
            "m = 0: both phases coincide and b_k = k grows like k^(3/4) after scaling; nothing to fit"
        )
    lo, hi = int(k_window[0]), int(k_window[1])
    if lo < 1 or hi <= lo:
        raise ValueError(f"k_window must satisfy 1 <= lo < hi, got {k_window}")
    spec = build_catalog_equation("resonant", {"m": m})
    table = generate_coefficients(spec, hi, ctx)
    b = scaled_coefficients(table)

    ks = np.arange(lo, hi + 1, dtype=float)
    data = np.array([float(b[k]) for k in range(lo, hi + 1)]) * ks ** -0.25
    phase = 2 * float(m) * np.sqrt(ks)
    design = np.column_stack([np.exp(1j * phase), np.exp(-1j * phase)])
    singular = np.linalg.svd(design, compute_uv=False)
    condition = float(singular[0] / singular[-1]) if singular[-1] > 0 else math.inf
    if condition > MAX_FIT_CONDITION:
        raise RankDeficientFitError(f"m = {m}: two-phase design has condition number {condition:.3g}")
    (A_plus, A_minus), *_ = np.linalg.lstsq(design, data.astype(complex), rcond=None)
    residual = design @ np.array([A_plus, A_minus]) - data
    rms = float(np.sqrt(np.mean(np.abs(residual) ** 2)) / np.sqrt(np.mean(data ** 2)))
    fit = ResonantFit(m, (lo, hi), complex(A_plus), complex(A_minus), rms, condition, ks=ks, data=data)
    logger.info("%r", fit)
    return fit


def project_on_modes(m, x: Number, remainder, dremainder, ctx: PrecisionContext):
    """
    Solve C_+ y_+ + C_- y_- = R, C_+ y_+' + C_- y_-' = R'.

    Raises:
        ModeSeparationError: The row-normalized 2x2 system is too ill-conditioned
    """
    mp = ctx.mp
    (yp, dyp), (ym, dym) = resonant_modes(m, x, ctx)
    rows = [(yp, ym, remainder), (dyp, dym, dremainder)]
    normalized = []
    for a, b, rhs in rows:
        scale = max(abs(a), abs(b))
        normalized.append((a / scale, b / scale, rhs / scale))
    matrix = np.array([[complex(a), complex(b)] for a, b, _ in normalized])
    condition = float(np.linalg.cond(matrix))
    if not np.isfinite(condition) or condition > MAX_MODE_CONDITION:
        raise ModeSeparationError(f"mode projection at x = {mp.nstr(x, 8)} has condition {condition:.3g}")
    (a11, a12, r1), (a21, a22, r2) = normalized
    det = a11 * a22 - a12 * a21
    return (r1 * a22 - a12 * r2) / det, (a11 * r2 - r1 * a21) / det


def resonant_berry_scan(
    m=1,
    r: int = 2500,
    beta_grid: Sequence[float] = DEFAULT_BETA_GRID,
    ctx: Optional[PrecisionContext] = None,
    verbose: bool = False
) -> Tuple[BerryScan, BerryScan]:
    """
    Berry scans of the two homogeneous-mode constants of the resonant remainder.

    Args:
        m: Resonance parameter (> 0)
        r: Base radius (integer)
        beta_grid: Scan variable beta with x = r e^(i beta / sqrt(r))
        ctx: Precision context (raised to resolve e^(-r))
        verbose: Show a progress bar

    Returns:
        (scan of C_+, scan of C_-), each with a free-center, free-width erf fit

    Raises:
        ModeSeparationError: Projection onto the modes fails at some grid point
    """
    m = _parameter(m)
    if m == 0:
        raise ValueError("the homogeneous modes degenerate at m = 0")
    if int(r) != r or r < 1:
        raise ValueError(f"r must be a positive integer, got {r}")
    r = int(r)
    spec = build_catalog_equation("resonant", {"m": m})
    ctx = working_context(spec, r, ctx, log_level=logging.WARNING)
    table = generate_coefficients(spec, table_length(spec, r), ctx)
    N = envelope_least_term_index(table, r, ctx)
    logger.info("resonant m=%s r=%d: envelope least term N=%d", m, r, N)

    plus, minus = [], []
    for beta in tqdm(beta_grid, desc=f"resonant Berry scan m={m}", disable=not verbose):
        x = ctx.mpc(berry_point(r, float(beta)))
        y, dy = exact_solution_with_derivative(spec, x, ctx, method="continued")
        remainder = y - truncated_sum(table, x, N, ctx)
        dremainder = dy - truncated_derivative(table, x, N, ctx)
        c_plus, c_minus = project_on_modes(m, x, remainder, dremainder, ctx)
        plus.append(complex(c_plus))
        minus.append(complex(c_minus))

    expected_plus, expected_minus = resonant_mode_amplitudes(m, ctx)
    scans = []
    for label, values, expected in (("C_plus", plus, expected_plus), ("C_minus", minus, expected_minus)):
        fit = fit_erf(beta_grid, values, free_width=True)
        scan = BerryScan(spec.name, r, beta_grid, values, fit, label=label,
                         expected_S=complex(expected), bits=ctx.bits)
        logger.info("%r", scan)
        scans.append(scan)
    return scans[0], scans[1]
