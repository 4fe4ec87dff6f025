"""
Rational Approximation

[m/n] Pade approximants from Taylor coefficients, in working-precision
floats (mpmath) or exact rationals (sympy). Denominators are normalized to
constant term 1. Degenerate Pade tables surface as SingularPadeError; the
default caller behavior is to step down the diagonal with a logged warning.
"""

import logging
from fractions import Fraction
from typing import List, Optional, Sequence

import sympy

from .precision import PrecisionContext
from ...utils.exceptions import SingularPadeError

logger = logging.getLogger(__name__)


class RationalFunction:
    """
    Rational function P(p)/Q(p) given by coefficient lists (ascending powers).
    """

    def __init__(self, numerator: Sequence, denominator: Sequence, exact: bool = False):
        """
        Initialize a rational function.

        Args:
            numerator: Coefficients p_0 ... p_m
            denominator: Coefficients q_0 ... q_n (q_0 = 1)
            exact: True when coefficients are Fractions
        """
        self.numerator = list(numerator)
        self.denominator = list(denominator)
        self.exact = exact

    @property
    def m(self) -> int:
        return len(self.numerator) - 1

    @property
    def n(self) -> int:
        return len(self.denominator) - 1

    def __call__(self, p, ctx: Optional[PrecisionContext] = None):
        """Evaluate at p (Horner in both polynomials)."""
        if ctx is not None:
            p = ctx.convert(p)
            num = ctx.mp.polyval([ctx.convert(c) for c in reversed(self.numerator)], p)
            den = ctx.mp.polyval([ctx.convert(c) for c in reversed(self.denominator)], p)
        else:
            num = _horner(self.numerator, p)
            den = _horner(self.denominator, p)
        return num / den

    def taylor(self, count: int) -> List:
        """
        Re-expand P/Q at 0.

        Args:
            count: Number of coefficients to return

        Returns:
            Taylor coefficients c_0 ... c_{count-1}
        """
        q = self.denominator
        out: List = []
        for k in range(count):
            s = self.numerator[k] if k < len(self.numerator) else 0 * q[0]
            for j in range(1, min(k, self.n) + 1):
                s = s - q[j] * out[k - j]
            out.append(s / q[0])
        return out

    def poles(self, ctx: PrecisionContext) -> List:
        """Roots of the denominator."""
        if self.n == 0:
            return []
        coeffs = [ctx.convert(c) for c in reversed(self.denominator)]
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
        if len(coeffs) < 2:
            return []
        return list(ctx.mp.polyroots(coeffs, maxsteps=200, extraprec=ctx.bits))

    def __repr__(self) -> str:
        mode = "exact" if self.exact else "float"
        return f"RationalFunction([{self.m}/{self.n}], {mode})"


def _horner(coeffs: Sequence, p):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * p + c
    return acc


def _pade_exact(coeffs: Sequence[Fraction], m: int, n: int) -> RationalFunction:
    if n == 0:
        return RationalFunction(list(coeffs[:m + 1]), [Fraction(1)], exact=True)

    a = [sympy.Rational(c.numerator, c.denominator) for c in coeffs]
    matrix = sympy.zeros(n, n)
    for j in range(n):
        for i in range(n):
            idx = m + j - i
            if idx >= 0:
                matrix[j, i] = a[idx]
    rhs = sympy.Matrix([-a[m + 1 + j] for j in range(n)])
    if matrix.det() == 0:
        raise SingularPadeError(f"degenerate Pade table at [{m}/{n}]", m, n)
    solution = matrix.LUsolve(rhs)

    q = [Fraction(1)] + [Fraction(int(sympy.fraction(v)[0]), int(sympy.fraction(v)[1]))
                         for v in solution]
    p = []
    for i in range(m + 1):
        s = coeffs[i]
        for j in range(1, min(n, i) + 1):
            s += q[j] * coeffs[i - j]
        p.append(s)
    return RationalFunction(p, q, exact=True)


def _pade_float(coeffs: Sequence, m: int, n: int, ctx: PrecisionContext) -> RationalFunction:
    a = [ctx.convert(c) for c in coeffs]
    try:
        p, q = ctx.mp.pade(a, m, n)
    except ZeroDivisionError as exc:
        raise SingularPadeError(f"degenerate Pade table at [{m}/{n}]: {exc}", m, n) from exc
    return RationalFunction(p, q, exact=False)


def pade(
    coeffs: Sequence,
    m: int,
    n: int,
    ctx: Optional[PrecisionContext] = None,
    reduce_degenerate: bool = True
) -> RationalFunction:
    """
    [m/n] Pade approximant of a Taylor series.

    Args:
        coeffs: Taylor coefficients (at least m + n + 1)
        m: Numerator degree
        n: Denominator degree
        ctx: Precision context; None means exact rational arithmetic
            (coefficients must be ints or Fractions)
        reduce_degenerate: Step down to [m-1/n-1] on a singular system
            instead of raising

    Returns:
        RationalFunction matching the series through order m + n

    Raises:
        ValueError: Too few coefficients or negative degrees
        SingularPadeError: Degenerate table and reduce_degenerate is False
    """
    if m < 0 or n < 0:
        raise ValueError(f"Pade degrees must be nonnegative, got [{m}/{n}]")
    if len(coeffs) < m + n + 1:
        raise ValueError(f"[{m}/{n}] needs {m + n + 1} coefficients, got {len(coeffs)}")

    exact = ctx is None
    if exact:
        coeffs = [Fraction(c) for c in coeffs]

    while True:
        try:
            if exact:
                return _pade_exact(coeffs, m, n)
            return _pade_float(coeffs, m, n, ctx)
        except SingularPadeError:
            if not reduce_degenerate or n == 0:
                raise
            logger.warning("Degenerate Pade table at [%d/%d]; reducing to [%d/%d]",
                           m, n, max(m - 1, 0), n - 1)
            m, n = max(m - 1, 0), n - 1


def diagonal_degrees(count: int) -> tuple:
    """Default diagonal degrees floor(K/2)/floor(K/2) for K = count - 1 coefficients past a_0."""
    half = (count - 1) // 2
    return half, half
