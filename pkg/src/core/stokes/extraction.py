"""
Stokes-Constant Extraction

Inverts the late-term law of the stored series,

    a_k ~ S / (2 pi i) * Gamma(s - beta') / omega^(s - beta'),   s = k + offset,

over a window of indices and accelerates the resulting sequence with
Richardson extrapolation. A symmetric pair of singular points +-omega
contributes twice on its nonvanishing parity class.
"""

import logging
from typing import Dict, List, Optional, Sequence, Tuple

from ..numerics.precision import PrecisionContext
from ..numerics.special_functions import gamma_complex
from ..numerics.acceleration import richardson_extrapolate, sliding_extrapolants
from ..equations.coefficients import CoefficientTable
from ..equations.equation_spec import EquationSpec, SingularPoint
from ...utils.exceptions import InsufficientDataError, ModelUnavailableError, OscillationDetectedError

logger = logging.getLogger(__name__)

DEFAULT_WINDOW = (150, 200)
DEFAULT_ORDER = 4
SPREAD_FACTOR = 10


class StokesEstimate:
    """Extrapolated Stokes constant with the raw inversion sequence behind it."""

    def __init__(
        self,
        spec_name: str,
        j: int,
        value,
        raw_sequence: Sequence,
        indices: Sequence[int],
        richardson_order: int,
        error_estimate
    ):
        """
        Initialize an estimate.

        Args:
            spec_name: Equation name
            j: Singular point index (1-based)
            value: Extrapolated S_j
            raw_sequence: S_est(k) over the window
            indices: Table indices k of the window
            richardson_order: Order used for the extrapolation
            error_estimate: Difference of the last two extrapolants
        """
        self.spec_name = spec_name
        self.j = j
        self.value = value
        self.raw_sequence = list(raw_sequence)
        self.indices = list(indices)
        self.richardson_order = richardson_order
        self.error_estimate = error_estimate

    @property
    def tail_band(self):
        """Distance from the last raw entry to the limit of a c/k tail through the window ends."""
        first, last = self.raw_sequence[0], self.raw_sequence[-1]
        k0, k1 = self.indices[0], self.indices[-1]
        if k1 == k0:
            return abs(last - first)
        return abs(last - first) * k0 / (k1 - k0)

    @property
    def sanity_band_ok(self) -> bool:
        """Extrapolated value within twice the tail band (plus the error estimate) of the raw window end."""
        return abs(self.value - self.raw_sequence[-1]) <= 2 * self.tail_band + self.error_estimate

    def to_dict(self) -> Dict:
        return {
            "equation": self.spec_name,
            "j": self.j,
            "S": complex(self.value),
            "error_estimate": float(self.error_estimate),
            "richardson_order": self.richardson_order,
            "window": [self.indices[0], self.indices[-1]],
            "sanity_band_ok": self.sanity_band_ok,
        }

    def __repr__(self) -> str:
        return (f"StokesEstimate({self.spec_name}, j={self.j}, S={complex(self.value):.10g}, "
                f"error={float(self.error_estimate):.3g})")


def _singular_point(spec: EquationSpec, j: int, allow_nominal: bool = False) -> SingularPoint:
    point = spec.dominant_singularity(j)
    if point.nominal and not allow_nominal:
        raise ModelUnavailableError(
            f"{spec.name}: singular point {j} is nominal; its late terms do not follow a single Gamma law"
        )
    return point


def _window_indices(table: CoefficientTable, spec: EquationSpec, point: SingularPoint,
                    r_window: Tuple[int, int], ctx: PrecisionContext) -> List[int]:
    lo, hi = int(r_window[0]), int(r_window[1])
    if lo < 1 or hi <= lo:
        raise ValueError(f"r_window must satisfy 1 <= lo < hi, got {r_window}")
    if hi > table.K:
        raise InsufficientDataError(f"window ends at {hi} but the table stops at K={table.K}")
    beta = ctx.convert(point.beta_prime)
    values = table.in_context(ctx)
    out = []
    for k in range(lo, hi + 1):
        if values[k] == 0:
            continue
        if ctx.mp.re(ctx.convert(table.power(k)) - beta) <= 0:
            continue
        out.append(k)
    return out


def late_term_factor(point: SingularPoint, s, ctx: PrecisionContext):
    """Gamma(s - beta') / omega^(s - beta'), doubled for a symmetric pair."""
    mp = ctx.mp
    shifted = ctx.convert(s) - ctx.convert(point.beta_prime)
    factor = gamma_complex(shifted, ctx) / mp.power(ctx.mpc(point.location), shifted)
    return 2 * factor if point.pair else factor


def stokes_sequence(table: CoefficientTable, spec: EquationSpec, j: int,
                    indices: Sequence[int], ctx: PrecisionContext) -> List:
    """S_est(k) = 2 pi i a_k / late_term_factor(s) for each k."""
    point = _singular_point(spec, j, allow_nominal=True)
    values = table.in_context(ctx)
    two_pi_i = 2j * ctx.mp.pi
    return [two_pi_i * values[k] / late_term_factor(point, table.power(k), ctx) for k in indices]


def check_oscillation(
    name: str,
    raw: Sequence,
    indices: Sequence[int],
    richardson_order: int,
    error_estimate,
    ctx: PrecisionContext
) -> None:
    """
    Reject inversion windows whose |S_est| is not Cauchy.

    The moduli of the order-k extrapolants over every sub-window ending
    inside the window may spread, relative to the last one, by at most
    SPREAD_FACTOR times the relative Richardson error estimate. The raw
    moduli may not change direction either.

    Args:
        name: Equation name for the diagnostic
        raw: S_est(k) over the window
        indices: Table indices k of the window
        richardson_order: Order of the extrapolants
        error_estimate: Richardson error estimate of the window
        ctx: Precision context

    Raises:
        OscillationDetectedError: Either rule fails
    """
    mp = ctx.mp
    moduli = [abs(v) for v in raw]
    floor = ctx.half_tolerance * max(max(moduli), 1)

    accelerated = [abs(v) for v in sliding_extrapolants(raw, richardson_order, indices, ctx)]
    scale = max(accelerated[-1], floor)
    spread = (max(accelerated) - min(accelerated)) / scale
    allowed = SPREAD_FACTOR * error_estimate / scale + ctx.half_tolerance
    if spread > allowed:
        raise OscillationDetectedError(
            f"{name}: relative spread {mp.nstr(spread, 3)} of the accelerated |S_est| exceeds "
            f"{SPREAD_FACTOR} x the Richardson error estimate ({mp.nstr(allowed, 3)})",
            raw_sequence=raw,
        )

    steps = [b - a for a, b in zip(moduli, moduli[1:]) if abs(b - a) > floor]
    turns = sum(1 for a, b in zip(steps, steps[1:]) if (a > 0) != (b > 0))
    if turns:
        raise OscillationDetectedError(
            f"{name}: |S_est| changes direction {turns} times across the window "
            f"(equimodular singular points or a resonance)",
            raw_sequence=raw,
        )


def extract_stokes(
    table: CoefficientTable,
    spec: EquationSpec,
    j: int = 1,
    r_window: Tuple[int, int] = DEFAULT_WINDOW,
    richardson_order: int = DEFAULT_ORDER,
    ctx: Optional[PrecisionContext] = None
) -> StokesEstimate:
    """
    Stokes constant S_j from the late coefficients.

    Args:
        table: Coefficient table reaching the end of the window
        spec: Equation providing omega_j, beta'_j and the series offset
        j: Singular point index (1-based)
        r_window: Inclusive range of table indices
        richardson_order: Inverse powers of k removed by extrapolation
        ctx: Precision context

    Returns:
        StokesEstimate

    Raises:
        OscillationDetectedError: |S_est| is not Cauchy across the window
        InsufficientDataError: Window too short for the Richardson order
    """
    ctx = ctx or PrecisionContext()
    point = _singular_point(spec, j, allow_nominal=True)
    indices = _window_indices(table, spec, point, r_window, ctx)
    raw = stokes_sequence(table, spec, j, indices, ctx)
    if any(not ctx.mp.isfinite(abs(v)) for v in raw):
        raise OscillationDetectedError(f"{spec.name}: non-finite inversion values", raw_sequence=raw)
    value, error = richardson_extrapolate(raw, richardson_order, indices=indices, ctx=ctx)
    check_oscillation(spec.name, raw, indices, richardson_order, error, ctx)
    estimate = StokesEstimate(spec.name, j, value, raw, indices, richardson_order, error)
    logger.debug("%r", estimate)
    if not estimate.sanity_band_ok:
        logger.warning("%s: extrapolated S outside the tail band of the raw window", spec.name)
    return estimate


def regenerate_coefficients(estimate: StokesEstimate, spec: EquationSpec,
                            r_values: Sequence[int], ctx: Optional[PrecisionContext] = None) -> List:
    """Late coefficients predicted by the extracted constant: S/(2 pi i) * late_term_factor."""
    ctx = ctx or PrecisionContext()
    point = _singular_point(spec, estimate.j)
    scale = estimate.value / (2j * ctx.mp.pi)
    return [scale * late_term_factor(point, spec.power(k), ctx) for k in r_values]


def inversion_constant(estimate: StokesEstimate, table: CoefficientTable, spec: EquationSpec,
                       ctx: Optional[PrecisionContext] = None) -> float:
    """Smallest K with |a_pred - a_k| <= (K / k) |a_k| over the estimate's window."""
    ctx = ctx or PrecisionContext()
    predicted = regenerate_coefficients(estimate, spec, estimate.indices, ctx)
    values = table.in_context(ctx)
    worst = 0.0
    for k, pred in zip(estimate.indices, predicted):
        worst = max(worst, float(k * abs(pred - values[k]) / abs(values[k])))
    return worst
