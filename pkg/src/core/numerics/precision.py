"""
Precision Context

Working-precision carrier for every numerical routine. Late coefficients
grow like r!, so all arithmetic runs in big floats whose precision is fixed
by (bits, guard_bits). Each context owns a private mpmath context, which
keeps results reproducible and avoids touching mpmath's global state.
"""

import math
from fractions import Fraction
from numbers import Integral
from typing import Union

import mpmath

MIN_BITS = 64
MIN_GUARD_BITS = 32
DIGITS_PER_BIT = 0.302

Number = Union[int, float, complex, Fraction, "mpmath.mpf", "mpmath.mpc"]


class PrecisionContext:
    """
    Binary working precision plus guard digits.

    All numeric results are pure functions of (bits, guard_bits) and the
    inputs. The context is immutable; use ``with_bits`` to obtain a more
    precise one.
    """

    def __init__(self, bits: int = 256, guard_bits: int = 64):
        """
        Initialize a precision context.

        Args:
            bits: Working precision in binary digits (>= 64)
            guard_bits: Extra binary digits for intermediate sums (>= 32)

        Raises:
            ValueError: If either value is below its minimum
        """
        if not isinstance(bits, Integral) or bits < MIN_BITS:
            raise ValueError(f"bits must be an integer >= {MIN_BITS}, got {bits!r}")
        if not isinstance(guard_bits, Integral) or guard_bits < MIN_GUARD_BITS:
            raise ValueError(f"guard_bits must be an integer >= {MIN_GUARD_BITS}, got {guard_bits!r}")

        self._bits = int(bits)
        self._guard_bits = int(guard_bits)
        self._mp = mpmath.MPContext()
        self._mp.prec = self._bits + self._guard_bits

    @property
    def bits(self) -> int:
        return self._bits

    @property
    def guard_bits(self) -> int:
        return self._guard_bits

    @property
    def mp(self):
        """The private mpmath context (precision bits + guard_bits)."""
        return self._mp

    @property
    def digits(self) -> int:
        """Decimal digits emitted for this precision: ceil(bits * 0.302)."""
        return int(math.ceil(self._bits * DIGITS_PER_BIT))

    @property
    def tolerance(self):
        """Default absolute target 2^(-bits+64)."""
        return self._mp.ldexp(1, -self._bits + 64)

    @property
    def half_tolerance(self):
        """Loose tolerance 2^(-bits/2) used by property checks."""
        return self._mp.ldexp(1, -(self._bits // 2))

    @property
    def epsilon(self):
        """Unit roundoff of the working precision, 2^(-bits)."""
        return self._mp.ldexp(1, -self._bits)

    def with_bits(self, bits: int) -> "PrecisionContext":
        """Return a context with at least ``bits`` working bits (same guard)."""
        if bits <= self._bits:
            return self
        return PrecisionContext(bits=bits, guard_bits=self._guard_bits)

    def mpf(self, value: Number):
        """Convert a real number (including Fraction) to a context float."""
        if isinstance(value, Fraction):
            return self._mp.mpf(value.numerator) / value.denominator
        return self._mp.mpf(value)

    def mpc(self, value: Number):
        """Convert any number (including Fraction) to a context complex."""
        if isinstance(value, Fraction):
            return self._mp.mpc(self.mpf(value))
        return self._mp.mpc(value)

    def convert(self, value: Number):
        """Convert to mpf when real, mpc otherwise."""
        if isinstance(value, Fraction):
            return self.mpf(value)
        if isinstance(value, complex) or hasattr(value, "_mpc_"):
            return self._mp.mpc(value)
        return self._mp.mpf(value)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PrecisionContext):
            return NotImplemented
        return (self._bits, self._guard_bits) == (other._bits, other._guard_bits)

    def __hash__(self) -> int:
        return hash((self._bits, self._guard_bits))

    def __repr__(self) -> str:
        return f"PrecisionContext(bits={self._bits}, guard_bits={self._guard_bits})"


def required_bits_for_scale(r: float, margin_bits: int = 64) -> int:
    """
    Bits needed to resolve e^(-r)-sized remainders next to O(1) values.

    Args:
        r: Modulus of the evaluation point
        margin_bits: Extra bits kept below the remainder

    Returns:
        Working precision in bits
    """
    return int(math.ceil(r / math.log(2))) + margin_bits
