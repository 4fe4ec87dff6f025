"""
Optimal Truncation

Least-term location, partial sums up to the least term, the least-term
magnitude, and the truncation error measured against a reference solution.
"""

import logging
import math
from typing import Dict, List, Optional, Sequence

import numpy as np

from ..numerics.precision import PrecisionContext, Number, required_bits_for_scale
from ..equations.coefficients import CoefficientTable, generate_coefficients
from ..equations.equation_spec import EquationSpec
from ..equations.oracles import exact_solution
from ...utils.exceptions import NoReferenceError, OracleUnavailableError, TableTooShortError

logger = logging.getLogger(__name__)

TABLE_MARGIN = 10
REFERENCES = ("exact_oracle", "balanced_sum")


class TruncationReport:
    """Least-term truncation of one series at one point."""

    def __init__(self, x, N: int, partial_sum, least_term, remainder=None, reference: Optional[str] = None):
        """
        Initialize a truncation report.

        Args:
            x: Evaluation point
            N: Least-term index
            partial_sum: Sum of terms 0..N
            least_term: Value of term N
            remainder: Reference minus partial sum, when a reference was supplied
            reference: Reference name
        """
        self.x = x
        self.N = N
        self.partial_sum = partial_sum
        self.least_term = least_term
        self.remainder = remainder
        self.reference = reference

    @property
    def ratio(self):
        """|remainder| / |least term|, or None without a reference."""
        if self.remainder is None:
            return None
        return abs(self.remainder) / abs(self.least_term)

    def to_dict(self) -> Dict:
        return {
            "x": self.x,
            "N": self.N,
            "partial_sum": self.partial_sum,
            "least_term": self.least_term,
            "remainder": self.remainder,
            "ratio": self.ratio,
            "reference": self.reference,
        }

    def __repr__(self) -> str:
        ratio = self.ratio
        shown = "n/a" if ratio is None else f"{float(ratio):.4g}"
        return f"TruncationReport(x={complex(self.x):.6g}, N={self.N}, ratio={shown})"


def _check_table(table: CoefficientTable, x: Number) -> None:
    if abs(complex(x)) > table.K - TABLE_MARGIN:
        raise TableTooShortError(
            f"table {table.spec_name} ends at K={table.K}; |x|={abs(complex(x)):.6g} "
            f"needs K >= |x| + {TABLE_MARGIN}"
        )


def _log_magnitudes(table: CoefficientTable, x: Number, ctx: PrecisionContext) -> List:
    """log|a_k x^(-k-offset)| per k, None where a_k vanishes."""
    mp = ctx.mp
    logx = mp.log(abs(ctx.mpc(x)))
    out = []
    for k, a in enumerate(table.in_context(ctx)):
        if a == 0:
            out.append(None)
        else:
            out.append(mp.log(abs(a)) - mp.re(ctx.convert(table.power(k))) * logx)
    return out


def least_term_index(table: CoefficientTable, x: Number, ctx: Optional[PrecisionContext] = None) -> int:
    """
    Global argmin over k <= K of |a_k x^(-k-offset)|, ties toward smaller k.

    Vanishing coefficients are not terms and are skipped.

    Args:
        table: Coefficient table with K >= |x| + 10
        x: Evaluation point
        ctx: Precision context

    Returns:
        Least-term index N

    Raises:
        TableTooShortError: The table does not reach past the least term
    """
    ctx = ctx or PrecisionContext()
    if x == 0:
        raise ValueError("the least term is undefined at x = 0")
    _check_table(table, x)
    tie = ctx.half_tolerance
    best_k, best = None, None
    for k, value in enumerate(_log_magnitudes(table, x, ctx)):
        if value is None:
            continue
        if best is None or value < best - tie * (1 + abs(best)):
            best_k, best = k, value
    if best_k is None:
        raise TableTooShortError(f"table {table.spec_name} has no nonzero coefficient")
    return best_k


def envelope_least_term_index(
    table: CoefficientTable,
    x: Number,
    ctx: Optional[PrecisionContext] = None,
    start_fraction: float = 0.25
) -> int:
    """
    Least-term index of the smooth envelope of |a_k|.

    The detrended magnitudes log|a_k| - log Gamma(k + offset) are fitted, on
    their local maxima (all points when there are none), by
    c - s log(rho) + gamma log(s) with s = k + offset; the envelope term
    is then minimized in closed form over k <= K. Oscillating coefficients
    (resonant family) give a stable index where the global argmin wobbles.

    Args:
        table: Coefficient table with K >= |x| + 10
        x: Evaluation point
        ctx: Precision context
        start_fraction: Fit over k >= start_fraction * K

    Returns:
        Envelope least-term index
    """
    ctx = ctx or PrecisionContext()
    _check_table(table, x)
    mp = ctx.mp
    values = table.in_context(ctx)
    offset = float(table.series_offset.real) if isinstance(table.series_offset, complex) else float(table.series_offset)
    k0 = max(1, int(start_fraction * table.K))
    ks, detrended = [], []
    for k in range(k0, table.K + 1):
        if values[k] == 0:
            continue
        s = k + offset
        ks.append(k)
        detrended.append(float(mp.log(abs(values[k])) - mp.loggamma(ctx.mpf(s)).real))
    if len(ks) < 4:
        raise TableTooShortError(f"table {table.spec_name} has too few nonzero coefficients for an envelope")

    ks_arr = np.array(ks, dtype=float)
    y = np.array(detrended)
    peaks = [i for i in range(1, len(y) - 1) if y[i] >= y[i - 1] and y[i] >= y[i + 1]]
    use = np.array(peaks) if len(peaks) >= 4 else np.arange(len(y))
    s = ks_arr[use] + offset
    design = np.column_stack([np.ones_like(s), -s, np.log(s)])
    (c, log_rho, gamma), *_ = np.linalg.lstsq(design, y[use], rcond=None)

    logx = math.log(abs(complex(x)))
    best_k, best = None, None
    for k in range(1, table.K + 1):
        sk = k + offset
        if sk <= 0:
            continue
        value = math.lgamma(sk) + c - sk * log_rho + gamma * math.log(sk) - sk * logx
        if best is None or value < best:
            best_k, best = k, value
    logger.debug("envelope fit for %s: rho=%.6g gamma=%.4g -> N=%d", table.spec_name,
                 math.exp(log_rho), gamma, best_k)
    return best_k


def series_terms(table: CoefficientTable, x: Number, N: int, ctx: PrecisionContext) -> List:
    """Terms a_k x^(-k-offset) for k = 0..N."""
    if N > table.K:
        raise TableTooShortError(f"N={N} exceeds the table length K={table.K}")
    mp = ctx.mp
    x = ctx.mpc(x)
    inv = 1 / x
    power = mp.power(x, -ctx.convert(table.series_offset))
    values = table.in_context(ctx)
    out = []
    for k in range(N + 1):
        out.append(values[k] * power)
        power *= inv
    return out


def truncated_sum(table: CoefficientTable, x: Number, N: int, ctx: Optional[PrecisionContext] = None):
    """
    Partial sum sum_{k=0}^{N} a_k x^(-k-offset).

    Args:
        table: Coefficient table
        x: Evaluation point
        N: Last included index (<= K)
        ctx: Precision context (sums carry the guard digits)

    Returns:
        Partial sum as a context complex
    """
    ctx = ctx or PrecisionContext()
    return ctx.mp.fsum(series_terms(table, x, N, ctx))


def truncated_derivative(table: CoefficientTable, x: Number, N: int, ctx: Optional[PrecisionContext] = None):
    """Derivative of the partial sum: -sum_{k=0}^{N} (k + offset) a_k x^(-k-offset-1)."""
    ctx = ctx or PrecisionContext()
    x = ctx.mpc(x)
    terms = series_terms(table, x, N, ctx)
    return -ctx.mp.fsum(ctx.convert(table.power(k)) * t for k, t in enumerate(terms)) / x


def least_term_magnitude(table: CoefficientTable, x: Number, ctx: Optional[PrecisionContext] = None):
    """|a_N x^(-N-offset)| at the least-term index."""
    ctx = ctx or PrecisionContext()
    N = least_term_index(table, x, ctx)
    return table.abs_term(N, x, ctx)


def reference_solution(spec: EquationSpec, x: Number, reference: str, ctx: PrecisionContext):
    """
    Reference value for truncation errors.

    Raises:
        NoReferenceError: Unknown reference or none available for ``spec``
    """
    if reference == "exact_oracle":
        try:
            return exact_solution(spec, x, ctx)
        except OracleUnavailableError as exc:
            raise NoReferenceError(str(exc)) from exc
    if reference == "balanced_sum":
        from ..borel.summation import balanced_sum
        return balanced_sum(spec, x, ctx)
    raise NoReferenceError(f"Unknown reference: {reference}")


def truncation_error(
    spec: EquationSpec,
    x: Number,
    reference: str = "exact_oracle",
    ctx: Optional[PrecisionContext] = None,
    table: Optional[CoefficientTable] = None,
    homogeneous_shift: Number = 0
) -> TruncationReport:
    """
    Truncation at the least term, compared with a reference solution.

    Args:
        spec: Equation spec
        x: Evaluation point
        reference: "exact_oracle" or "balanced_sum"
        ctx: Precision context (raised when e^(-|omega x|) would be unresolved)
        table: Precomputed coefficients
        homogeneous_shift: C added to the reference as C x^(-beta') e^(-omega x)
            along the first singular point (C != 0 selects a non-balanced solution)

    Returns:
        TruncationReport

    Raises:
        NoReferenceError: Reference unavailable
    """
    ctx = working_context(spec, x, ctx)
    if table is None:
        table = generate_coefficients(spec, table_length(spec, x), ctx)
    mp = ctx.mp
    N = least_term_index(table, x, ctx)
    partial = truncated_sum(table, x, N, ctx)
    least = table.term(N, x, ctx)
    ref = reference_solution(spec, x, reference, ctx)
    if homogeneous_shift:
        point = spec.dominant_singularity(1)
        z = ctx.mpc(x)
        ref = ref + ctx.mpc(homogeneous_shift) * mp.power(z, -ctx.convert(point.beta_prime)) \
            * mp.exp(-ctx.mpc(point.location) * z)
    report = TruncationReport(x=ctx.mpc(x), N=N, partial_sum=partial, least_term=least,
                              remainder=ref - partial, reference=reference)
    logger.debug("%s at x=%s: %r", spec.name, mp.nstr(ctx.mpc(x), 8), report)
    return report


def truncation_scan(
    spec: EquationSpec,
    xs: Sequence[Number],
    reference: str = "exact_oracle",
    ctx: Optional[PrecisionContext] = None
) -> List[TruncationReport]:
    """Truncation reports over a grid of points sharing one coefficient table."""
    if len(xs) == 0:
        return []
    far = max(xs, key=lambda z: abs(complex(z)))
    ctx = working_context(spec, far, ctx)
    table = generate_coefficients(spec, table_length(spec, far), ctx)
    return [truncation_error(spec, x, reference, ctx, table=table) for x in xs]


# Utility functions

def _omega_modulus(spec: EquationSpec) -> float:
    if spec.singular_points:
        return spec.dominant_singularity(1).modulus
    return 1.0


def table_length(spec: EquationSpec, x: Number) -> int:
    """Coefficients needed past the least term near |omega x|."""
    r = abs(complex(x))
    return int(math.ceil(max(1.0, _omega_modulus(spec)) * r)) + 2 * TABLE_MARGIN + 20


def working_context(
    spec: EquationSpec,
    x: Number,
    ctx: Optional[PrecisionContext],
    log_level: int = logging.INFO
) -> PrecisionContext:
    """Context with enough bits to resolve e^(-|omega x|) next to O(1) values."""
    ctx = ctx or PrecisionContext()
    needed = required_bits_for_scale(_omega_modulus(spec) * abs(complex(x)))
    if needed > ctx.bits:
        logger.log(log_level, "raising precision from %d to %d bits for |x| = %.6g", ctx.bits, needed, abs(complex(x)))
        ctx = ctx.with_bits(needed)
    return ctx
