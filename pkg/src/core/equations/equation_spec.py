"""
Equation Specification

Data model for a prepared equation: eigenvalues, exponents and their
normalized companions, the coefficient recurrence of the level-0 series and
the optional oracles attached by the catalog.
"""

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence

from ..numerics.precision import PrecisionContext

SIDES = ("above", "below")


def to_exact(value) -> object:
    """Fraction for ints, Fractions and decimal strings/floats; complex left as is."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("boolean is not a number")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite value {value}")
        return Fraction(str(value))
    if isinstance(value, str):
        return Fraction(value.strip())
    return value


def is_rational(value) -> bool:
    return isinstance(value, (int, Fraction)) and not isinstance(value, bool)


def prepared_exponents(beta) -> tuple:
    """(m, beta') with m = 1 - floor(Re beta) and beta' = beta + m."""
    re = beta.real if isinstance(beta, complex) else beta
    m = 1 - math.floor(re)
    return m, beta + m


@dataclass(frozen=True)
class SingularPoint:
    """
    Borel-plane singularity seen by the stored series.

    ``beta_prime`` is the exponent of S*x^(-beta')*e^(-location*x) in the
    stored series' normalization (the local Borel exponent is beta' - 1).
    ``pair`` marks a symmetric pair +-location of equal strength.
    """

    location: complex
    beta_prime: object
    stokes_constant: Optional[complex] = None
    nominal: bool = False
    pair: bool = False

    @property
    def modulus(self) -> float:
        return abs(complex(self.location))

    @property
    def phase(self) -> float:
        return cmath.phase(complex(self.location))


class Recurrence:
    """Base class: produces a_{k+1} from a_0 ... a_k."""

    rational = True

    def next_value(self, k: int, values: Sequence):
        raise NotImplementedError

    def describe(self) -> str:
        return self.__class__.__name__


def _poly(coeffs: Sequence, k: int):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * k + c
    return acc


class LinearRecurrence(Recurrence):
    """
    a_{k+1} = (sum_j P_j(k) a_{k-j} + q(k)) / D(k)

    P_j, D are polynomials in k given by ascending coefficient lists; q is a
    sparse map k -> value (Kronecker terms). Missing a_{k-j} with k-j < 0
    count as zero.
    """

    def __init__(
        self,
        terms: Dict[int, Sequence],
        denominator: Optional[Sequence] = None,
        inhomogeneous: Optional[Dict[int, object]] = None,
        text: str = ""
    ):
        """
        Initialize a linear recurrence.

        Args:
            terms: shift j -> coefficients of P_j(k)
            denominator: Coefficients of D(k) (default 1)
            inhomogeneous: k -> q(k) for the nonzero Kronecker terms
            text: Human-readable formula
        """
        if not terms:
            raise ValueError("a recurrence needs at least one term")
        self.terms = {int(j): [to_exact(c) for c in cs] for j, cs in terms.items()}
        self.denominator = [to_exact(c) for c in (denominator or [1])]
        self.inhomogeneous = {int(k): to_exact(v) for k, v in (inhomogeneous or {}).items()}
        self.text = text
        if any(j < 0 for j in self.terms):
            raise ValueError("recurrence shifts must be nonnegative")
        coeffs = [c for cs in self.terms.values() for c in cs] + self.denominator
        coeffs += list(self.inhomogeneous.values())
        self.rational = all(is_rational(c) for c in coeffs)

    def next_value(self, k: int, values: Sequence):
        total = self.inhomogeneous.get(k, 0)
        for j, coeffs in self.terms.items():
            if k - j >= 0:
                total = total + _poly(coeffs, k) * values[k - j]
        den = _poly(self.denominator, k)
        if den == 0:
            raise ZeroDivisionError(f"recurrence denominator vanishes at k = {k}")
        return total / den

    def term_magnitudes(self, k: int, values: Sequence) -> List:
        """|P_j(k) a_{k-j}| for cancellation checks."""
        out = []
        for j, coeffs in self.terms.items():
            if k - j >= 0:
                out.append(abs(_poly(coeffs, k) * values[k - j]))
        return out

    def describe(self) -> str:
        return self.text or f"linear recurrence with shifts {sorted(self.terms)}"

    def to_dict(self) -> Dict:
        def enc(v):
            return str(v) if isinstance(v, Fraction) else v
        return {
            "recurrence": [{"shift": j, "coefficients": [enc(c) for c in cs]}
                           for j, cs in sorted(self.terms.items())],
            "denominator": [enc(c) for c in self.denominator],
            "inhomogeneous": {str(k): enc(v) for k, v in sorted(self.inhomogeneous.items())},
        }


class CallableRecurrence(Recurrence):
    """Recurrence given by a step function (nonlinear recurrences)."""

    def __init__(self, step: Callable[[int, Sequence], object], text: str, rational: bool = True):
        self.step = step
        self.text = text
        self.rational = rational

    def next_value(self, k: int, values: Sequence):
        return self.step(k, values)

    def describe(self) -> str:
        return self.text


class EquationSpec:
    """
    A prepared equation and its level-0 formal series.

    ``series_offset`` is the power carried by a_k: the stored series is
    sum_k a_k x^(-k-offset).
    """

    def __init__(
        self,
        name: str,
        lambdas: Sequence[complex],
        betas: Sequence,
        recurrence: Recurrence,
        seeds: Sequence,
        series_offset=0,
        singular_points: Sequence[SingularPoint] = (),
        params: Optional[Dict] = None,
        exact_oracle: Optional[Callable] = None,
        stokes_oracle: Optional[Callable[[PrecisionContext], complex]] = None,
        borel_closed_form: Optional[Callable] = None,
        ode_residual: Optional[Callable] = None,
        parity: int = 1,
        description: str = ""
    ):
        """
        Initialize an equation spec.

        Args:
            name: Catalog identifier
            lambdas: Eigenvalues lambda_i
            betas: Exponents beta_i of the prepared system
            recurrence: Coefficient recurrence
            seeds: a_0 ... a_{s-1}; the recurrence produces a_s onward
            series_offset: Power of x carried by a_0
            singular_points: Borel singularities of the stored series
            params: Catalog parameters (e.g. {"m": 1})
            exact_oracle: (x, ctx) -> distinguished solution
            stokes_oracle: ctx -> independently known Stokes constant
            borel_closed_form: (p, ctx) -> regular part g of Y = p^(sigma-1) g
            ode_residual: sympy operator (expr, symbol) -> residual expression
            parity: Step between nonvanishing coefficients (2 for even-only series)
            description: One-line summary
        """
        if len(lambdas) == 0:
            raise ValueError("at least one eigenvalue is required")
        if len(betas) != len(lambdas):
            raise ValueError("lambdas and betas must have the same length")
        if len(seeds) == 0:
            raise ValueError("at least one seed is required")

        self.name = name
        self.lambdas = [complex(lam) for lam in lambdas]
        self.betas = [to_exact(b) if not isinstance(b, complex) else b for b in betas]
        prepared = [prepared_exponents(b) for b in self.betas]
        self.ms = [m for m, _ in prepared]
        self.beta_primes = [bp for _, bp in prepared]
        self.recurrence = recurrence
        self.seeds = [to_exact(s) if not isinstance(s, complex) else s for s in seeds]
        self.series_offset = to_exact(series_offset)
        self.singular_points = list(singular_points)
        self.params = dict(params or {})
        self.exact_oracle = exact_oracle
        self.stokes_oracle = stokes_oracle
        self.borel_closed_form = borel_closed_form
        self.ode_residual = ode_residual
        self.parity = parity
        self.description = description

    @property
    def rational(self) -> bool:
        """True when seeds and recurrence are rational (coefficients stored exactly)."""
        return self.recurrence.rational and all(is_rational(s) for s in self.seeds)

    @property
    def borel_sigma(self) -> Fraction:
        """Exponent sigma in (0, 1] with Y(p) = p^(sigma-1) g(p)."""
        offset = Fraction(self.series_offset)
        return offset - math.ceil(offset) + 1

    @property
    def taylor_shift(self) -> int:
        """a_k pairs with Taylor index j = k - taylor_shift of g."""
        return 1 - math.ceil(Fraction(self.series_offset))

    def power(self, k: int):
        """Power s of x^(-s) carried by a_k."""
        return k + self.series_offset

    def dominant_singularity(self, j: int = 1) -> SingularPoint:
        """The j-th recorded singular point (1-based)."""
        if not 1 <= j <= len(self.singular_points):
            raise IndexError(f"{self.name} records {len(self.singular_points)} singular points, got j={j}")
        return self.singular_points[j - 1]

    def has_oracle(self) -> bool:
        return self.exact_oracle is not None

    def __repr__(self) -> str:
        return (f"EquationSpec(name={self.name}, lambdas={self.lambdas}, "
                f"offset={self.series_offset}, params={self.params})")
