"""
Borel-Plane Jumps

The lateral jump L^above - L^below at the Laplace level and the branch jump
(Y^+ - Y^-)(omega + z) next to the first singular point, compared with the
local model S z^(beta'-1) / Gamma(beta').
"""

import cmath
import logging
from typing import Dict, Optional, Sequence

import numpy as np

from ..numerics.precision import PrecisionContext, Number
from ..numerics.quadrature import Contour, quad_laplace
from ..equations.equation_spec import EquationSpec
from ..equations.oracles import stokes_reference
from .borel_function import BorelFunction, continue_borel
from .summation import laplace_integrand, summation_angle

logger = logging.getLogger(__name__)

DEFAULT_Z_GRID = tuple(np.linspace(0.05, 0.3, 11))
RESIDUE_RADIUS = 0.1
FIT_DEGREE = 2


def lateral_jump(
    bf: BorelFunction,
    x: Number,
    ctx: Optional[PrecisionContext] = None,
    rho: float = 0.5
):
    """
    L^above(x) - L^below(x), integrating only where the two lateral contours differ.

    Returns 0 when the ray arg p = -arg x carries no singular point.
    """
    ctx = ctx or PrecisionContext()
    angle = summation_angle(x)
    on_ray = bf.singularities_on_ray(angle)
    if not on_ray:
        return ctx.mpc(0)
    t = abs(on_ray[0])
    h = rho * t
    d = cmath.exp(1j * angle)
    values = {}
    for side, s in (("above", 1), ("below", -1)):
        contour = Contour([(t - h) * d, (t + 1j * s * h) * d], ray=angle, side_tags=[side, "on"])
        values[side] = quad_laplace(laplace_integrand(bf, x, ctx), contour, x, ctx,
                                    origin_power=bf.sigma)
    return values["above"] - values["below"]


class JumpReport:
    """Measured versus modelled jump at the first singular point."""

    def __init__(self, mode: str, measured, model, details: Optional[Dict] = None):
        """
        Initialize a jump report.

        Args:
            mode: "branch" (fitted leading coefficient), "pole" (residue) or
                "analytic" (no jump expected)
            measured: Fitted leading coefficient, residue, or max |jump|
            model: S/Gamma(beta'), -S/(2 pi i), or 0
            details: Grid values and fit diagnostics
        """
        self.mode = mode
        self.measured = measured
        self.model = model
        self.details = details or {}

    @property
    def relative_deviation(self) -> float:
        if self.model == 0:
            return float(abs(self.measured))
        return float(abs(self.measured - self.model) / abs(self.model))

    def to_dict(self) -> Dict:
        return {
            "mode": self.mode,
            "measured": complex(self.measured),
            "model": complex(self.model),
            "relative_deviation": self.relative_deviation,
            **self.details,
        }

    def __repr__(self) -> str:
        return f"JumpReport(mode={self.mode}, deviation={self.relative_deviation:.3g})"


def borel_jump_check(
    bf: BorelFunction,
    spec: EquationSpec,
    stokes_constant: Optional[complex] = None,
    z_grid: Sequence[float] = DEFAULT_Z_GRID,
    ctx: Optional[PrecisionContext] = None
) -> JumpReport:
    """
    Compare (Y^+ - Y^-)(omega + z) with S z^(beta'-1)/Gamma(beta').

    Simple poles give no jump on the cut; they are checked through the
    residue instead (L^above - L^below = -2 pi i Res e^(-omega x), so the
    model residue is -S/(2 pi i)).

    Args:
        bf: Borel function
        spec: Equation providing omega and beta'
        stokes_constant: S (default: recorded or independently known value)
        z_grid: Distances past omega along the singular ray
        ctx: Precision context

    Returns:
        JumpReport
    """
    ctx = ctx or PrecisionContext()
    mp = ctx.mp
    point = spec.dominant_singularity(1)
    omega = complex(point.location)
    direction = omega / abs(omega)
    if stokes_constant is None:
        stokes_constant = point.stokes_constant
    if stokes_constant is None:
        stokes_constant = stokes_reference(spec, ctx)
    if stokes_constant is None:
        raise ValueError(f"{spec.name}: a Stokes constant estimate is required for the jump check")
    S = ctx.mpc(stokes_constant)

    zs = [float(z) for z in z_grid]
    jumps = []
    for z in zs:
        p = omega + z * direction
        jumps.append(continue_borel(bf, p, "above", ctx) - continue_borel(bf, p, "below", ctx))
    biggest = max(abs(j) for j in jumps)
    details = {"z_grid": zs, "max_jump": float(biggest)}

    if biggest <= ctx.half_tolerance:
        if S == 0:
            return JumpReport("analytic", biggest, 0, details)
        radius = RESIDUE_RADIUS * abs(omega)

        def integrand(phi):
            p = ctx.mpc(omega) + radius * mp.expj(phi)
            return bf(p, ctx) * 1j * radius * mp.expj(phi)

        residue = mp.quad(integrand, [0, mp.pi / 2, mp.pi, 3 * mp.pi / 2, 2 * mp.pi]) / (2j * mp.pi)
        details["residue_radius"] = radius
        logger.debug("%s: pole branch, residue %s", spec.name, mp.nstr(residue, 10))
        return JumpReport("pole", residue, -S / (2j * mp.pi), details)

    beta = ctx.convert(point.beta_prime)
    scaled = np.array([complex(j * mp.power(z, 1 - beta)) for j, z in zip(jumps, zs)])
    design = np.vander(np.array(zs), FIT_DEGREE + 1, increasing=True).astype(complex)
    coeffs, *_ = np.linalg.lstsq(design, scaled, rcond=None)
    model = S * mp.rgamma(beta)
    details["fit_coefficients"] = [complex(c) for c in coeffs]
    logger.debug("%s: fitted leading jump coefficient %s vs model %s", spec.name,
                 coeffs[0], mp.nstr(model, 10))
    return JumpReport("branch", ctx.mpc(complex(coeffs[0])), model, details)
