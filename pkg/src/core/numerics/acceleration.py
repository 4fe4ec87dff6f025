"""
Sequence Acceleration

Richardson extrapolation for sequences with an asymptotic tail in powers of
1/r, s_r ~ s + c_1/r + c_2/r^2 + ... . The extrapolant of order k is the
value at h = 0 of the polynomial of degree k in h = 1/r interpolating the
last k + 1 entries (Neville's scheme), which removes r^-1 ... r^-k exactly.

Works on context floats and, when every entry is an int or Fraction and no
context is given, in exact rational arithmetic.
"""

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .precision import PrecisionContext
from ...utils.exceptions import InsufficientDataError


def _is_exact(values: Sequence) -> bool:
    return all(isinstance(v, (int, Fraction)) for v in values)


def _neville_at_zero(hs: Sequence, values: Sequence):
    """Value at h = 0 of the interpolating polynomial through (hs, values)."""
    table = list(values)
    n = len(table)
    for level in range(1, n):
        for i in range(n - level):
            h_lo = hs[i]
            h_hi = hs[i + level]
            table[i] = (h_lo * table[i + 1] - h_hi * table[i]) / (h_lo - h_hi)
    return table[0]


def _steps(indices: Sequence, ctx: Optional[PrecisionContext], exact: bool) -> List:
    if exact:
        return [Fraction(1, int(r)) for r in indices]
    return [ctx.mpf(1) / ctx.mpf(r) for r in indices]


def richardson_extrapolate(
    values: Sequence,
    order: int,
    indices: Optional[Sequence] = None,
    ctx: Optional[PrecisionContext] = None
) -> Tuple[object, object]:
    """
    Order-k Richardson extrapolant and its error estimate.

    Args:
        values: Sequence entries s_r (consecutive or arbitrary positive r)
        order: Number of inverse powers to eliminate (k >= 0)
        indices: The r for each entry (default 1, 2, ..., len(values))
        ctx: Precision context; None selects exact arithmetic for rational input

    Returns:
        (extrapolated value, error estimate). The estimate is the larger of
        |E_k - E_{k-1}| at the window end and |E_k(end) - E_k(end-1)|.

    Raises:
        InsufficientDataError: Fewer than order + 2 entries
    """
    if order < 0:
        raise ValueError(f"order must be >= 0, got {order}")
    values = list(values)
    if len(values) < order + 2:
        raise InsufficientDataError(
            f"Richardson order {order} needs at least {order + 2} entries, got {len(values)}"
        )
    if indices is None:
        indices = list(range(1, len(values) + 1))
    indices = list(indices)
    if len(indices) != len(values):
        raise ValueError("indices and values must have the same length")
    if any(r <= 0 for r in indices):
        raise ValueError("Richardson indices must be positive")

    exact = ctx is None and _is_exact(values)
    if ctx is None and not exact:
        raise ValueError("a PrecisionContext is required for non-rational sequences")
    if not exact:
        values = [ctx.convert(v) for v in values]

    hs = _steps(indices, ctx, exact)

    best = _neville_at_zero(hs[-(order + 1):], values[-(order + 1):])
    shifted = _neville_at_zero(hs[-(order + 2):-1], values[-(order + 2):-1])
    if order > 0:
        lower = _neville_at_zero(hs[-order:], values[-order:])
    else:
        lower = values[-2]

    error = max(abs(best - lower), abs(best - shifted))
    return best, error


def richardson(
    values: Sequence,
    order: int,
    indices: Optional[Sequence] = None,
    ctx: Optional[PrecisionContext] = None
):
    """
    Order-k Richardson extrapolant of a sequence with a 1/r-power tail.

    Args:
        values: Sequence entries s_r
        order: Number of inverse powers to eliminate
        indices: The r for each entry (default 1, 2, ...)
        ctx: Precision context (None for exact rational input)

    Returns:
        The extrapolated limit
    """
    value, _ = richardson_extrapolate(values, order, indices=indices, ctx=ctx)
    return value


def sliding_extrapolants(
    values: Sequence,
    order: int,
    indices: Sequence,
    ctx: PrecisionContext
) -> List:
    """Order-k extrapolants for every window end from order+1 to len(values)."""
    values = [ctx.convert(v) for v in values]
    hs = _steps(indices, ctx, exact=False)
    out = []
    for end in range(order + 1, len(values) + 1):
        out.append(_neville_at_zero(hs[end - order - 1:end], values[end - order - 1:end]))
    return out
