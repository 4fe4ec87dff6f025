"""
Laplace Summation

Lateral Laplace sums L^above / L^below of a Borel function along the ray
arg p = -arg x, or along a fixed Stokes ray to continue them off the Stokes
line, and their alpha-weighted averages. alpha is the weight of the lower
continuation; alpha = 1/2 is the balanced average.
"""

import logging
import math
from dataclasses import dataclass
from itertools import product
from typing import Callable, Optional

from ..numerics.precision import PrecisionContext, Number
from ..numerics.quadrature import ray_contour, indented_contour, lateral_contour, quad_laplace
from ..equations.coefficients import CoefficientTable, generate_coefficients
from ..equations.equation_spec import EquationSpec
from .borel_function import (
    BorelFunction, borel_transform, CLOSED_FORM, DEFAULT_PADE_DEGREE, PADE, TRUST_TOLERANCE
)
from ...utils.exceptions import OutsideTrustRegionError, UnsupportedDepthError

logger = logging.getLogger(__name__)

MAX_DEPTH = 6


@dataclass(frozen=True)
class AverageSpec:
    """
    Weights of an averaged Laplace sum.

    alpha weights the lower continuation, 1 - alpha the upper one; depth is
    the number of singular-point crossings retained on the Stokes ray.
    """

    alpha: float = 0.5
    depth: int = 1

    def __post_init__(self):
        if not 0 <= self.alpha <= 1:
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha}")
        if int(self.depth) != self.depth or self.depth < 1:
            raise ValueError(f"depth must be an integer >= 1, got {self.depth}")


def summation_angle(x: Number) -> float:
    """Direction -arg x of the Laplace ray along which e^(-xp) decays fastest."""
    return -math.atan2(complex(x).imag, complex(x).real)


def laplace_integrand(bf: BorelFunction, x: Number, ctx: PrecisionContext,
                      tol: Optional[Number] = None) -> Callable:
    """
    Regular part g(p) as fed to quad_laplace.

    Closed forms and entire Taylor series pass through. Pade continuations
    are held to their trust region: wherever e^(-xp) g(p) is not negligible
    against ``tol``, the [m/m] and [m-1/m] approximants must agree to the
    trust tolerance inside the trust radius, and to ``tol`` (after the
    kernel weight) beyond it.

    Raises (when called):
        OutsideTrustRegionError: the approximants disagree where the integral still needs them
    """
    if bf.kind != PADE:
        return lambda p: bf.regular_part(p, ctx)
    mp = ctx.mp
    z = ctx.mpc(x)
    limit = ctx.tolerance if tol is None else ctx.mpf(tol)
    main, check = bf.approximants

    def g(p):
        value = main(p, ctx)
        weight = mp.exp(-mp.re(z * p))
        if weight * abs(value) <= limit:
            return value
        gap = abs(value - check(p, ctx))
        modulus = abs(complex(p))
        if modulus > bf.trust_radius:
            if weight * gap > limit:
                raise OutsideTrustRegionError(
                    f"Laplace contour reaches |p| = {modulus:.6g} beyond the Pade trust radius "
                    f"{bf.trust_radius:.6g} where the approximants still disagree"
                )
        elif gap > TRUST_TOLERANCE * max(1, abs(value)):
            raise OutsideTrustRegionError(
                f"[m/m] and [m-1/m] approximants disagree by {mp.nstr(gap, 3)} at p = {complex(p)}"
            )
        return value

    return g


def lateral_laplace(
    bf: BorelFunction,
    x: Number,
    side: str,
    ctx: Optional[PrecisionContext] = None,
    tol: Optional[Number] = None,
    angle: Optional[float] = None
):
    """
    Laplace sum along a contour passing on ``side`` of the singular points
    on the summation ray.

    Args:
        bf: Borel function
        x: Laplace variable (Re of x times the ray direction must be positive)
        side: "above" or "below"
        ctx: Precision context
        tol: Absolute quadrature tolerance
        angle: Direction of the summation ray (default -arg x); a fixed
            Stokes ray continues the lateral sum off the Stokes line

    Returns:
        The lateral sum (plus the series' constant term)

    Raises:
        OutsideTrustRegionError: a Pade continuation is needed outside its trust region
    """
    if side not in ("above", "below"):
        raise ValueError(f"Unknown side: {side}")
    ctx = ctx or PrecisionContext()
    angle = summation_angle(x) if angle is None else float(angle)
    on_ray = bf.singularities_on_ray(angle)
    if on_ray:
        contour = lateral_contour(abs(on_ray[0]), angle, side)
    else:
        contour = ray_contour(angle)
    value = quad_laplace(laplace_integrand(bf, x, ctx, tol), contour, x, ctx,
                         tol=tol, origin_power=bf.sigma)
    return value + ctx.convert(bf.constant)


def averaged_sum(
    bf: BorelFunction,
    x: Number,
    avg: AverageSpec = AverageSpec(),
    ctx: Optional[PrecisionContext] = None,
    tol: Optional[Number] = None,
    angle: Optional[float] = None
):
    """
    alpha-averaged Laplace sum.

    depth = 1 gives (1 - alpha) L^above + alpha L^below. depth = d > 1
    sums over the 2^d paths around the singular points omega, 2 omega, ...,
    d omega of the ray, a path passing a points above and b below weighted
    by (1 - alpha)^a alpha^b (2^-d each for the balanced average). For
    single-valued continuations every depth gives the depth-1 value.

    Args:
        bf: Borel function
        x: Laplace variable
        avg: Average weights
        ctx: Precision context
        tol: Absolute quadrature tolerance
        angle: Direction of the summation ray (default -arg x)

    Returns:
        The averaged sum

    Raises:
        UnsupportedDepthError: depth > 1 without a single-valued closed form
        OutsideTrustRegionError: a Pade continuation is needed outside its trust region
    """
    ctx = ctx or PrecisionContext()
    angle = summation_angle(x) if angle is None else float(angle)
    on_ray = bf.singularities_on_ray(angle)
    if not on_ray:
        return lateral_laplace(bf, x, "above", ctx, tol, angle)

    alpha = ctx.mpf(avg.alpha)
    if avg.depth == 1:
        upper = lateral_laplace(bf, x, "above", ctx, tol, angle) if avg.alpha < 1 else 0
        lower = lateral_laplace(bf, x, "below", ctx, tol, angle) if avg.alpha > 0 else 0
        return (1 - alpha) * upper + alpha * lower

    if bf.kind != CLOSED_FORM or not bf.single_valued:
        raise UnsupportedDepthError(
            f"depth {avg.depth} needs a single-valued closed-form continuation; {bf.name} has kind {bf.kind}"
        )
    if avg.depth > MAX_DEPTH:
        raise UnsupportedDepthError(f"depth is capped at {MAX_DEPTH}, got {avg.depth}")

    base = abs(on_ray[0])
    moduli = [j * base for j in range(1, avg.depth + 1)]
    total = ctx.mpc(0)
    for sides in product(("above", "below"), repeat=avg.depth):
        above = sides.count("above")
        weight = (1 - alpha) ** above * alpha ** (avg.depth - above)
        if weight == 0:
            continue
        contour = indented_contour(moduli, angle, list(sides))
        total += weight * quad_laplace(lambda p: bf.regular_part(p, ctx), contour, x, ctx,
                                       tol=tol, origin_power=bf.sigma)
    logger.debug("depth-%d average of %s over %d paths", avg.depth, bf.name, 2 ** avg.depth)
    return total + ctx.convert(bf.constant)


def balanced_sum(
    spec: EquationSpec,
    x: Number,
    ctx: Optional[PrecisionContext] = None,
    table: Optional[CoefficientTable] = None
):
    """Balanced (alpha = 1/2) Laplace sum of the equation's level-0 series."""
    ctx = ctx or PrecisionContext()
    if table is None:
        table = generate_coefficients(spec, 2 * DEFAULT_PADE_DEGREE + 2, ctx)
    bf = borel_transform(table, spec, ctx)
    return averaged_sum(bf, x, AverageSpec(0.5, 1), ctx)
