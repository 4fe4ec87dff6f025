"""
Borel Function

Borel-plane representation of a stored series sum_k a_k x^(-k-offset):
x^(-s) maps to p^(s-1)/Gamma(s), so the transform is Y(p) = p^(sigma-1) g(p)
with g analytic at 0. The regular part g is carried by its Taylor
coefficients and continued beyond the disc of convergence by a closed form
when the catalog knows one, by a Pade approximant otherwise.
"""

import cmath
import logging
import math
from fractions import Fraction
from typing import Callable, List, Optional, Sequence

from ..numerics.precision import PrecisionContext, Number
from ..numerics.rational import RationalFunction, pade, diagonal_degrees
from ..numerics.acceleration import richardson_extrapolate
from ..equations.coefficients import CoefficientTable
from ..equations.equation_spec import EquationSpec
from ...utils.exceptions import AtSingularityError, OutsideTrustRegionError

logger = logging.getLogger(__name__)

DEFAULT_PADE_DEGREE = 40
BRANCH_DELTA = 0.05
TRUST_FACTOR = 1.5
TRUST_TOLERANCE = 1e-8
ANGLE_TOLERANCE = 1e-12

CLOSED_FORM = "closed_form"
PADE = "pade"
TAYLOR = "taylor"


class BorelFunction:
    """
    Y(p) = p^(sigma-1) g(p) plus an optional constant term of the series.

    Attributes:
        taylor: Taylor coefficients g_j of the regular part
        sigma: Exponent in (0, 1]
        constant: Coefficient of x^0 (its Borel image is a delta at 0)
        singularities: Recorded singular points
        continuation: Callable (p, ctx) -> g(p)
        kind: "closed_form", "pade" or "taylor" (entire)
        single_valued: Whether the continuation is single-valued around the singular points
    """

    def __init__(
        self,
        taylor: Sequence,
        sigma=1,
        constant=0,
        singularities: Sequence[complex] = (),
        continuation: Optional[Callable] = None,
        kind: str = TAYLOR,
        approximants: Sequence[RationalFunction] = (),
        single_valued: bool = True,
        name: str = ""
    ):
        self.taylor = list(taylor)
        self.sigma = sigma
        self.constant = constant
        self.singularities = [complex(s) for s in singularities]
        self.continuation = continuation
        self.kind = kind
        self.approximants = list(approximants)
        self.single_valued = single_valued
        self.name = name
        self._reversed: dict = {}

    @property
    def radius(self) -> float:
        """Certified convergence radius min|singularity| (inf for an entire function)."""
        if not self.singularities:
            return math.inf
        return min(abs(s) for s in self.singularities)

    @property
    def trust_radius(self) -> float:
        """|p| bound for Pade evaluation: 1.5 times the second singular distance."""
        moduli = sorted({round(abs(s), 12) for s in self.singularities})
        if not moduli:
            return math.inf
        second = moduli[1] if len(moduli) > 1 else 2 * moduli[0]
        return TRUST_FACTOR * second

    def estimated_radius(self, tail: int = 10) -> float:
        """Root-test radius from the last ``tail`` nonzero Taylor coefficients."""
        estimates = []
        for j in range(len(self.taylor) - 1, 0, -1):
            c = self.taylor[j]
            if c != 0:
                estimates.append(math.exp(-_log_abs(c) / j))
            if len(estimates) >= tail:
                break
        if not estimates:
            return math.inf
        return min(estimates)

    def rays(self) -> List[float]:
        """Directions of the recorded singular points."""
        return sorted({round(cmath.phase(s), 12) for s in self.singularities})

    def singularities_on_ray(self, angle: float) -> List[complex]:
        """Recorded singular points on the ray arg p = angle, by increasing modulus."""
        out = [s for s in self.singularities if abs(_angle_diff(cmath.phase(s), angle)) < ANGLE_TOLERANCE]
        return sorted(out, key=abs)

    def regular_part(self, p, ctx: PrecisionContext):
        """g(p) from the continuation, with no side selection."""
        if self.kind == TAYLOR:
            if abs(complex(p)) >= self.radius:
                raise OutsideTrustRegionError(f"|p| = {abs(complex(p)):.6g} outside the convergence disc")
            key = (ctx.bits, ctx.guard_bits)
            if key not in self._reversed:
                self._reversed[key] = [ctx.convert(c) for c in reversed(self.taylor)]
            return ctx.mp.polyval(self._reversed[key], ctx.convert(p))
        return self.continuation(p, ctx)

    def sigma_factor(self, p, ctx: PrecisionContext):
        """p^(sigma-1) on the principal branch."""
        if self.sigma == 1:
            return 1
        return ctx.mp.power(ctx.convert(p), ctx.convert(self.sigma) - 1)

    def __call__(self, p, ctx: PrecisionContext):
        """Y(p) = p^(sigma-1) g(p) on the principal branch."""
        p = ctx.convert(p)
        return self.sigma_factor(p, ctx) * self.regular_part(p, ctx)

    def __repr__(self) -> str:
        return (f"BorelFunction({self.name}, kind={self.kind}, sigma={self.sigma}, "
                f"taylor={len(self.taylor)}, singularities={self.singularities})")


def _log_abs(c) -> float:
    if isinstance(c, Fraction):
        return math.log(abs(c.numerator)) - math.log(c.denominator)
    return math.log(abs(complex(c)))


def _angle_diff(a: float, b: float) -> float:
    d = math.fmod(a - b + math.pi, 2 * math.pi)
    if d < 0:
        d += 2 * math.pi
    return d - math.pi


def _spec_singularities(spec: EquationSpec) -> List[complex]:
    points = []
    for sp in spec.singular_points:
        points.append(complex(sp.location))
        if sp.pair:
            points.append(-complex(sp.location))
    if points:
        return points
    # seeded from the eigenvalues: lambda_i and lambda_1 - lambda_i
    lam1 = spec.lambdas[0]
    candidates = list(spec.lambdas) + [lam1 - lam for lam in spec.lambdas]
    return [c for c in dict.fromkeys(candidates) if abs(c) > 0]


def borel_transform(
    table: CoefficientTable,
    spec: Optional[EquationSpec] = None,
    ctx: Optional[PrecisionContext] = None,
    pade_degree: int = DEFAULT_PADE_DEGREE,
    use_closed_form: bool = True
) -> BorelFunction:
    """
    Borel transform of a coefficient table.

    Args:
        table: Coefficients a_k of sum a_k x^(-k-offset)
        spec: Generating equation (singular points, closed form)
        ctx: Precision context (Pade approximants, non-integer offsets)
        pade_degree: Cap on the diagonal Pade degree
        use_closed_form: Prefer the equation's closed-form continuation

    Returns:
        BorelFunction
    """
    ctx = ctx or PrecisionContext()
    offset = Fraction(table.series_offset)
    sigma = offset - math.ceil(offset) + 1

    constant = 0
    taylor = []
    for k in range(table.K + 1):
        a = table[k]
        s = k + offset
        if s <= 0:
            if s < 0 and a != 0:
                raise ValueError(f"a_{k} multiplies a positive power of x; no Borel transform")
            constant = a if s == 0 else constant
            continue
        if table.exact and s.denominator == 1:
            taylor.append(Fraction(a) / math.factorial(int(s) - 1))
        else:
            taylor.append(ctx.convert(a) * ctx.mp.rgamma(ctx.convert(s)))

    singularities = _spec_singularities(spec) if spec is not None else []
    name = spec.name if spec is not None else table.spec_name

    if spec is not None and use_closed_form and spec.borel_closed_form is not None:
        return BorelFunction(taylor, sigma, constant, singularities, spec.borel_closed_form,
                             CLOSED_FORM, single_valued=sigma == 1, name=name)
    if not singularities:
        return BorelFunction(taylor, sigma, constant, singularities, None, TAYLOR, name=name)

    m, n = diagonal_degrees(len(taylor))
    m = n = min(m, pade_degree)
    main = pade(taylor, m, n, ctx)
    check = pade(taylor, max(m - 1, 0), n, ctx)
    logger.debug("Pade continuation for %s: %r, check %r", name, main, check)

    def continuation(p, c: PrecisionContext, approximant=main):
        return approximant(p, c)

    return BorelFunction(taylor, sigma, constant, singularities, continuation, PADE,
                         approximants=[main, check], single_valued=False, name=name)


def _on_cut(bf: BorelFunction, p: complex) -> bool:
    """p lies on a singular ray beyond its first singular point."""
    if p == 0:
        return False
    on_ray = bf.singularities_on_ray(cmath.phase(p))
    return bool(on_ray) and abs(p) > abs(on_ray[0])


def continue_borel(
    bf: BorelFunction,
    p: Number,
    side: str,
    ctx: Optional[PrecisionContext] = None,
    delta: float = BRANCH_DELTA
):
    """
    Y(p) on the branch reached along a path passing on ``side`` of the singular ray.

    Closed forms are evaluated a vanishing distance off the cut; Pade
    continuations at displacements delta, delta/2, delta/4 followed by
    Richardson extrapolation to the ray. Off the singular rays the side is
    irrelevant.

    Args:
        bf: Borel function
        p: Point in the Borel plane
        side: "above" (counterclockwise of the ray) or "below"
        ctx: Precision context
        delta: Largest displacement for Pade boundary values

    Returns:
        Y(p)

    Raises:
        AtSingularityError: p is a recorded singular point
        OutsideTrustRegionError: Pade continuation is not trustworthy at p
    """
    if side not in ("above", "below"):
        raise ValueError(f"Unknown side: {side}")
    ctx = ctx or PrecisionContext()
    mp = ctx.mp
    pc = complex(p)
    tol = float(ctx.half_tolerance)
    for s in bf.singularities:
        if abs(pc - s) <= tol * max(1.0, abs(s)):
            raise AtSingularityError(f"p = {pc} is a recorded singular point")
    sign = 1 if side == "above" else -1
    p = ctx.mpc(p)
    cut = _on_cut(bf, pc)

    if bf.kind == PADE:
        if abs(pc) > bf.trust_radius:
            raise OutsideTrustRegionError(
                f"|p| = {abs(pc):.6g} beyond the Pade trust radius {bf.trust_radius:.6g}"
            )
        direction = p / abs(p) if pc != 0 else 1

        def at(c, approximant):
            return bf.sigma_factor(c, ctx) * approximant(c, ctx)

        values = []
        for approximant in bf.approximants:
            if not cut:
                values.append(at(p, approximant))
                continue
            samples = [at(p + sign * 1j * (delta / r) * direction, approximant) for r in (1, 2, 4)]
            value, _ = richardson_extrapolate(samples, 2, indices=[1, 2, 4], ctx=ctx)
            values.append(value)
        main, check = values
        if abs(main - check) > TRUST_TOLERANCE * max(1, abs(main)):
            raise OutsideTrustRegionError(
                f"[m/m] and [m-1/m] approximants disagree by {mp.nstr(abs(main - check), 3)} at p = {pc}"
            )
        return main

    if cut:
        # principal branches of the closed forms cut along the singular rays
        p = p * (1 + sign * 1j * mp.ldexp(1, -2 * (ctx.bits + ctx.guard_bits)))
    return bf(p, ctx)
