"""
Coefficient Generation

Runs an equation's recurrence to produce the level-0 series coefficients
a_0 ... a_K. Rational recurrences with rational seeds are run in exact
Fraction arithmetic; everything else runs in the context's big floats, with
a warning when the recurrence cancels more digits than the guard bits cover.
"""

import logging
import math
from fractions import Fraction
from typing import Dict, List, Optional

from ..numerics.precision import PrecisionContext, Number
from .equation_spec import EquationSpec, LinearRecurrence, _poly
from ...utils.exceptions import InsufficientDataError

logger = logging.getLogger(__name__)


class CoefficientTable:
    """
    Immutable table a_0 ... a_K of one formal series.

    Values are Fractions when ``exact`` is True and context floats otherwise.
    The stored series is sum_k a_k x^(-k-offset).
    """

    def __init__(
        self,
        spec_name: str,
        values: List,
        series_offset=0,
        exact: bool = True,
        bits: Optional[int] = None,
        guard_bits: Optional[int] = None,
        parity: int = 1
    ):
        """
        Initialize a coefficient table.

        Args:
            spec_name: Name of the generating equation
            values: a_0 ... a_K
            series_offset: Power carried by a_0
            exact: Whether values are exact rationals
            bits: Working precision of float tables
            guard_bits: Guard digits of float tables
            parity: Step between nonvanishing coefficients
        """
        self.spec_name = spec_name
        self._values = tuple(values)
        self.series_offset = series_offset
        self.exact = exact
        self.bits = bits
        self.guard_bits = guard_bits
        self.parity = parity
        self._converted: Dict = {}

    @property
    def K(self) -> int:
        """Highest stored index."""
        return len(self._values) - 1

    @property
    def values(self) -> tuple:
        return self._values

    def __len__(self) -> int:
        return len(self._values)

    def __getitem__(self, k):
        return self._values[k]

    def power(self, k: int):
        """Power s of x^(-s) carried by a_k."""
        return k + self.series_offset

    def in_context(self, ctx: PrecisionContext) -> List:
        """Values converted to the context's floats (cached per context)."""
        key = (ctx.bits, ctx.guard_bits)
        if key not in self._converted:
            self._converted[key] = [ctx.convert(v) for v in self._values]
        return self._converted[key]

    def term(self, k: int, x: Number, ctx: PrecisionContext):
        """a_k x^(-k-offset) as a context number."""
        mp = ctx.mp
        a = self.in_context(ctx)[k]
        if a == 0:
            return ctx.mpc(0)
        return a * mp.power(ctx.mpc(x), -ctx.convert(self.power(k)))

    def abs_term(self, k: int, x: Number, ctx: PrecisionContext):
        """|a_k x^(-k-offset)| as a context float."""
        mp = ctx.mp
        a = self.in_context(ctx)[k]
        if a == 0:
            return ctx.mpf(0)
        return abs(a) * mp.power(abs(ctx.mpc(x)), -mp.re(ctx.convert(self.power(k))))

    def precision_metadata(self) -> Dict:
        return {"exact": self.exact, "bits": self.bits, "guard_bits": self.guard_bits}

    def __repr__(self) -> str:
        kind = "exact" if self.exact else f"{self.bits}-bit"
        return f"CoefficientTable(spec={self.spec_name}, K={self.K}, {kind})"


def generate_coefficients(
    spec: EquationSpec,
    K: int,
    ctx: Optional[PrecisionContext] = None,
    exact: Optional[bool] = None
) -> CoefficientTable:
    """
    Generate a_0 ... a_K from the recurrence.

    Args:
        spec: Equation spec
        K: Highest index (>= 2)
        ctx: Precision context for float tables
        exact: Force (True) or refuse (False) exact arithmetic; None picks
            exact whenever the recurrence and seeds are rational

    Returns:
        Coefficient table

    Raises:
        InsufficientDataError: K < 2
        ValueError: Exact arithmetic requested for a non-rational recurrence
    """
    if K < 2:
        raise InsufficientDataError(f"K must be at least 2, got {K}")
    if exact is None:
        exact = spec.rational
    if exact and not spec.rational:
        raise ValueError(f"{spec.name}: exact coefficients need a rational recurrence and seeds")
    if not exact and ctx is None:
        raise ValueError("float coefficients need a precision context")

    if exact:
        values = [Fraction(s) for s in spec.seeds[:K + 1]]
    else:
        values = [ctx.convert(s) for s in spec.seeds[:K + 1]]

    recurrence = spec.recurrence
    check_cancellation = not exact and isinstance(recurrence, LinearRecurrence)
    worst_loss = 0.0
    for k in range(len(values) - 1, K):
        value = recurrence.next_value(k, values)
        if check_cancellation:
            worst_loss = max(worst_loss, _cancellation_bits(recurrence, k, values, value))
        values.append(value)

    if check_cancellation and worst_loss > ctx.guard_bits:
        logger.warning(
            "%s: recurrence cancelled about %d bits (guard bits %d); raise the precision",
            spec.name, int(worst_loss), ctx.guard_bits
        )

    logger.debug("generated %d coefficients for %s (%s)", K + 1, spec.name,
                 "exact" if exact else f"{ctx.bits} bits")
    return CoefficientTable(
        spec.name,
        values,
        series_offset=spec.series_offset,
        exact=exact,
        bits=None if exact else ctx.bits,
        guard_bits=None if exact else ctx.guard_bits,
        parity=spec.parity
    )


def scaled_coefficients(table: CoefficientTable) -> Dict[int, object]:
    """
    b_k = a_k / (k-1)! for k >= 1.

    Exact tables give exact b_k; for the resonant family these satisfy
    b_{k+1} = (2 - m^2/k) b_k - b_{k-1}.

    Returns:
        Mapping k -> b_k
    """
    out = {}
    factorial = 1
    for k in range(1, table.K + 1):
        if k > 1:
            factorial *= k - 1
        a = table[k]
        out[k] = Fraction(a) / factorial if table.exact else a / factorial
    return out


# Utility functions

def _cancellation_bits(recurrence: LinearRecurrence, k: int, values, value) -> float:
    """Bits lost when the recurrence's terms nearly cancel."""
    magnitudes = recurrence.term_magnitudes(k, values)
    if not magnitudes:
        return 0.0
    biggest = max(magnitudes)
    if biggest == 0:
        return 0.0
    total = abs(value * _poly(recurrence.denominator, k))
    if total == 0:
        return math.inf
    return max(0.0, math.log2(float(biggest / total)))

