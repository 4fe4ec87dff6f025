"""
Exact-Solution Oracles

Independent reference values for the catalog equations:

- toy: e^{-x} Ei(x), the principal-value solution, and its directional
  Borel sums -e^{-x} E1(-x) off the real axis
- airy: the balanced solution e^{-t} sqrt(pi) (3/2)^{1/6} Bi((3t/2)^{2/3}) of
  the growing-mode factor, and the Stokes constant read off the connection
  identity between Ai on neighbouring sectors
- resonant(m): the balanced Laplace sum of the closed-form Borel function at
  a moderate anchor, continued forward by Taylor-method ODE integration, and
  the far-anchor backward integration seeded by the truncated series
"""

import logging
import math
from fractions import Fraction
from typing import Dict, Optional, Tuple

from ..numerics.precision import PrecisionContext, Number, required_bits_for_scale
from ..numerics.quadrature import indented_contour, quad_laplace
from ..numerics.taylor_ode import LinearODE, integrate_path
from ...utils.exceptions import OracleUnavailableError, NoReferenceError

logger = logging.getLogger(__name__)

AIRY_STOKES_POINT = 5
RESONANT_ANCHOR = 30
ANCHOR_BITS = 256
FAR_ANCHOR_FACTOR = 4


# Toy model

def toy_exact(spec, x: Number, ctx: PrecisionContext, method: Optional[str] = None):
    """
    Principal-value solution of f' + f = 1/x.

    Args:
        spec: Toy spec (unused; oracle signature)
        x: Evaluation point
        ctx: Precision context
        method: None, "exact" or "balanced" give the Borel sum in the
            direction of x: e^{-x} Ei(x) on the positive axis and
            -e^{-x} E1(-x) off it. "continued" gives the analytic
            continuation e^{-x} Ei(x) of the real-axis solution, which
            differs from the directional sum by +-pi i e^{-x}

    Returns:
        f(x)
    """
    mp = ctx.mp
    x = ctx.convert(x)
    if x == 0:
        raise ValueError("the toy solution is singular at x = 0")
    if method == "continued" or (method in (None, "exact", "balanced") and mp.im(x) == 0):
        return mp.exp(-x) * mp.ei(x)
    if method in (None, "exact", "balanced"):
        return -mp.exp(-x) * mp.e1(-x)
    raise NoReferenceError(f"toy has no '{method}' reference")


def toy_borel(p, ctx: PrecisionContext):
    return 1 / (1 - ctx.convert(p))


# Airy

def _airy_variable(t, ctx: PrecisionContext):
    mp = ctx.mp
    return mp.power(ctx.mpf(3) * t / 2, ctx.mpf(2) / 3)


def _airy_scale(ctx: PrecisionContext):
    mp = ctx.mp
    return 2 * mp.sqrt(mp.pi) * mp.power(ctx.mpf(3) / 2, ctx.mpf(1) / 6)


def airy_balanced(spec, t: Number, ctx: PrecisionContext, method: Optional[str] = None):
    """
    Balanced solution of G'' + 2G' + (G' + G)/(3t) = 0 with G ~ t^{-1/6}.

    Args:
        spec: Airy spec (unused; oracle signature)
        t: Evaluation point
        ctx: Precision context
        method: None, "exact" or "balanced" give the Borel sum in the
            direction of t (Bi off the axis corrected by -+(i/2) Ai, the
            half Stokes jump); "continued" the analytic continuation of
            e^{-t} (K/2) Bi; "recessive" the decaying companion
            e^{-t} K Ai((3t/2)^{2/3}) ~ e^{-2t} t^{-1/6}

    Returns:
        G(t)
    """
    mp = ctx.mp
    t = ctx.convert(t)
    z = _airy_variable(t, ctx)
    scale = mp.exp(-t) * _airy_scale(ctx)
    if method == "recessive":
        return scale * mp.airyai(z)
    if method == "continued":
        return scale / 2 * mp.airybi(z)
    if method in (None, "exact", "balanced"):
        side = mp.sign(mp.im(t))
        return scale / 2 * (mp.airybi(z) - 1j * side * mp.airyai(z))
    raise NoReferenceError(f"airy has no '{method}' reference")


def airy_stokes_constant(ctx: PrecisionContext, t0: Number = AIRY_STOKES_POINT):
    """
    Stokes constant of the growing Airy series from the connection identity.

    The lateral sums continue the recessive solutions of the two neighbouring
    sectors, y_up = K e^{-i pi/6} Ai(z e^{-2 pi i/3}) and
    y_down = K e^{i pi/6} Ai(z e^{2 pi i/3}); their difference is S times the
    recessive solution K Ai(z) of the real axis. Uses only Ai values.
    """
    mp = ctx.mp
    t0 = ctx.mpf(t0)
    z = _airy_variable(t0, ctx)
    k = _airy_scale(ctx)
    rot = mp.expj(2 * mp.pi / 3)
    y_up = k * mp.expj(-mp.pi / 6) * mp.airyai(z / rot)
    y_down = k * mp.expj(mp.pi / 6) * mp.airyai(z * rot)
    y_plus = k * mp.airyai(z)
    return (y_down - y_up) / y_plus


def airy_borel(p, ctx: PrecisionContext):
    """Regular part g with Y(p) = p^{-5/6} g(p): Gamma(5/6)/(2 pi) (1 - p/2)^{-5/6}."""
    mp = ctx.mp
    p = ctx.convert(p)
    return mp.gamma(ctx.mpf(5) / 6) / (2 * mp.pi) * mp.power(1 - p / 2, -ctx.mpf(5) / 6)


# Resonant family

def resonant_borel(m):
    """Borel function e^{-m^2 p/(1-p)} / (1-p)^2 of sum_{k>=1} a_k x^{-k}."""
    def g(p, ctx: PrecisionContext):
        mp = ctx.mp
        p = ctx.convert(p)
        m2 = ctx.convert(m) ** 2
        return mp.exp(-m2 * p / (1 - p)) / (1 - p) ** 2
    return g


def resonant_ode(m) -> LinearODE:
    """x y'' + 2x y' + (x + m^2) y = 1."""
    m2 = Fraction(m) ** 2 if not isinstance(m, complex) else m ** 2
    return LinearODE([[m2, 1], [0, 2], [0, 1]], rhs=[1], rate=1.0)


def resonant_modes(m, x: Number, ctx: PrecisionContext):
    """
    Homogeneous solutions y_+- = sqrt(pi m) e^{+-3 pi i/4} e^{-x} sqrt(x) H_1^{(1,2)}(2m sqrt(x))
    normalized to x^{1/4} e^{-x +- 2im sqrt(x)}, with their derivatives.

    Returns:
        ((y_plus, dy_plus), (y_minus, dy_minus))
    """
    mp = ctx.mp
    x = ctx.mpc(x)
    m = ctx.convert(m)
    if m == 0:
        raise ValueError("the homogeneous modes degenerate at m = 0")
    z = 2 * m * mp.sqrt(x)
    base = mp.sqrt(mp.pi * m) * mp.exp(-x)
    out = []
    for sign, hankel in ((1, mp.hankel1), (-1, mp.hankel2)):
        pref = base * mp.expj(sign * 3 * mp.pi / 4)
        y = pref * mp.sqrt(x) * hankel(1, z)
        # (sqrt(x) H_1(2m sqrt(x)))' = m H_0(2m sqrt(x))
        dy = -y + pref * m * hankel(0, z)
        out.append((y, dy))
    return out[0], out[1]


def resonant_jump(m, x: Number, ctx: PrecisionContext, derivative: bool = False):
    """
    Closed-form lateral difference 2 pi i e^{m^2 - x} sqrt(x) J_1(2m sqrt(x)) / m
    (2 pi i e^{-x} x at m = 0), optionally with its x-derivative.
    """
    mp = ctx.mp
    x = ctx.mpc(x)
    m = ctx.convert(m)
    factor = 2j * mp.pi * mp.exp(m ** 2 - x)
    if m == 0:
        jump, slope = factor * x, factor
    else:
        z = 2 * m * mp.sqrt(x)
        jump = factor * mp.sqrt(x) * mp.besselj(1, z) / m
        # (sqrt(x) J_1(2m sqrt(x)))' = m J_0(2m sqrt(x))
        slope = factor * mp.besselj(0, z)
    if derivative:
        return jump, slope - jump
    return jump


def resonant_mode_amplitudes(m, ctx: PrecisionContext) -> Tuple:
    """Jump amplitudes on (y_+, y_-): i sqrt(pi) e^{m^2} m^{-3/2} e^{-+3 pi i/4}."""
    mp = ctx.mp
    m = ctx.convert(m)
    common = 1j * mp.sqrt(mp.pi) * mp.exp(m ** 2) * mp.power(m, -ctx.mpf(3) / 2)
    return common * mp.expj(-3 * mp.pi / 4), common * mp.expj(3 * mp.pi / 4)


class ResonantOracle:
    """
    Balanced solution of y'' + 2y' + (1 + m^2/x) y = 1/x.

    Methods:
        "laplace": half-sum of the two lateral Laplace integrals of the
            closed-form Borel function (moderate |x|)
        "continued": "laplace" at a real anchor x0, continued forward by
            Taylor-method integration; the homogeneous modes decay in that
            direction, so anchor errors are damped by e^{-(x - x0)}
        "balanced": "continued" on the real axis; off it the Borel sum in
            the direction of x, i.e. corrected by minus/plus half the jump
        "ode": backward integration from x_a = 4|x| seeded by the optimally
            truncated series (contaminated at the least-term level)
    """

    def __init__(self, m, anchor: float = RESONANT_ANCHOR, anchor_bits: int = ANCHOR_BITS):
        self.m = m
        self.anchor = anchor
        self.anchor_bits = anchor_bits
        self.ode = resonant_ode(m)
        self.borel = resonant_borel(m)
        self._cache: Dict = {}

    def __call__(self, spec, x: Number, ctx: PrecisionContext, method: Optional[str] = None):
        return self.value_and_derivative(spec, x, ctx, method)[0]

    def value_and_derivative(self, spec, x: Number, ctx: PrecisionContext, method: Optional[str] = None):
        """(y(x), y'(x)) for the selected method."""
        method = method or "balanced"
        x = ctx.mpc(x)
        if method == "laplace":
            return self._laplace(x, ctx)
        if method in ("balanced", "exact", "continued"):
            if abs(x) <= self.anchor:
                y, dy = self._laplace(x, ctx)
            else:
                y, dy = self._forward(x, ctx)
            side = ctx.mp.sign(ctx.mp.im(x))
            if method == "continued" or side == 0:
                return y, dy
            # directional sum: L_below above the axis, L_above below it
            jump, djump = resonant_jump(self.m, x, ctx, derivative=True)
            return y - side * jump / 2, dy - side * djump / 2
        if method == "ode":
            return self._far_anchor(spec, x, ctx)
        raise NoReferenceError(f"resonant has no '{method}' reference")

    def _laplace(self, x, ctx: PrecisionContext):
        mp = ctx.mp
        if mp.re(x) <= 0:
            raise NoReferenceError("the Laplace oracle needs Re x > 0")
        values = []
        for side in ("above", "below"):
            contour = indented_contour([1.0], 0.0, side)
            y = quad_laplace(lambda p: self.borel(p, ctx), contour, x, ctx)
            dy = quad_laplace(lambda p: -p * self.borel(p, ctx), contour, x, ctx)
            values.append((y, dy))
        logger.debug("resonant Laplace oracle at x = %s", mp.nstr(x, 8))
        y = (values[0][0] + values[1][0]) / 2
        dy = (values[0][1] + values[1][1]) / 2
        return y, dy

    def _anchor_state(self, ctx: PrecisionContext):
        key = ("anchor", ctx.bits, ctx.guard_bits)
        if key not in self._cache:
            low = PrecisionContext(bits=self.anchor_bits, guard_bits=ctx.guard_bits)
            y, dy = self._laplace(low.mpc(self.anchor), low)
            self._cache[key] = [ctx.mpc(y), ctx.mpc(dy)]
        return self._cache[key]

    def _forward(self, x, ctx: PrecisionContext):
        mp = ctx.mp
        r = abs(x)
        key = ("real", ctx.bits, ctx.guard_bits, mp.nstr(r, ctx.digits))
        if key not in self._cache:
            state = integrate_path(self.ode, [self.anchor, r], self._anchor_state(ctx), ctx)
            self._cache[key] = state
        state = self._cache[key]
        if x != r:
            state = integrate_path(self.ode, [r, x], state, ctx)
        return state[0], state[1]

    def _far_anchor(self, spec, x, ctx: PrecisionContext):
        from .coefficients import generate_coefficients
        from ..truncation.optimal_truncation import least_term_index, truncated_sum, truncated_derivative

        mp = ctx.mp
        x_a = FAR_ANCHOR_FACTOR * float(abs(x))
        hi = ctx.with_bits(required_bits_for_scale(x_a))
        table = generate_coefficients(spec, int(math.ceil(x_a)) + 40, hi)
        n = least_term_index(table, x_a, hi)
        state = [truncated_sum(table, x_a, n, hi), truncated_derivative(table, x_a, n, hi)]
        path = [x_a, abs(x)] if mp.im(x) != 0 else [x_a]
        path.append(x)
        state = integrate_path(self.ode, path, state, hi)
        return ctx.mpc(state[0]), ctx.mpc(state[1])


# Dispatch

def exact_solution(spec, x: Number, ctx: PrecisionContext, method: Optional[str] = None):
    """
    Distinguished solution of ``spec`` at x.

    Args:
        spec: EquationSpec
        x: Evaluation point
        ctx: Precision context
        method: Oracle variant (equation dependent; None selects the default)

    Returns:
        Solution value as a context number

    Raises:
        OracleUnavailableError: The equation carries no oracle
    """
    if spec.exact_oracle is None:
        raise OracleUnavailableError(f"{spec.name} has no exact-solution oracle (series-only)")
    return spec.exact_oracle(spec, x, ctx, method)


def exact_solution_with_derivative(spec, x: Number, ctx: PrecisionContext, method: Optional[str] = None):
    """(y, y') where the oracle supports derivatives; otherwise y' by numerical differentiation."""
    oracle = spec.exact_oracle
    if oracle is None:
        raise OracleUnavailableError(f"{spec.name} has no exact-solution oracle (series-only)")
    if hasattr(oracle, "value_and_derivative"):
        return oracle.value_and_derivative(spec, x, ctx, method)
    mp = ctx.mp
    y = oracle(spec, x, ctx, method)
    dy = mp.diff(lambda z: oracle(spec, z, ctx, method), ctx.convert(x))
    return y, dy


def stokes_reference(spec, ctx: PrecisionContext):
    """Independently known Stokes constant of the first singular point, if any."""
    if spec.stokes_oracle is None:
        return None
    return spec.stokes_oracle(ctx)
