"""
Contour Quadrature

Laplace integrals int_C e^{-xp} f(p) dp along piecewise-linear contours in
the Borel plane, ending in a terminal ray. Segments are cut into panels that
are graded against the decay scale 1/|x|, each panel is integrated with
mpmath's Gauss-Legendre rule and bisected until its error estimate meets
its share of the absolute tolerance.
"""

import cmath
import logging
from typing import Callable, List, Optional, Sequence, Tuple, Union

from .precision import PrecisionContext, Number
from ...utils.exceptions import NonDecayingRayError, QuadratureNonConvergenceError

logger = logging.getLogger(__name__)

SIDE_TAGS = ("above", "below", "on")

DEFAULT_MAX_DEGREE = 7
DEFAULT_MAX_DEPTH = 14
MAX_RAY_PANELS = 64
GRADING_SCALE = 4


class Contour:
    """
    Piecewise-linear path starting at ``vertices[0]``, optionally continued
    by a terminal ray from the last vertex.

    |p| must increase strictly along the path, and the path may cross each
    declared singular ray at most once.
    """

    def __init__(
        self,
        vertices: Sequence[complex],
        ray: Optional[float] = None,
        side_tags: Optional[Sequence[str]] = None,
        singular_rays: Sequence[float] = ()
    ):
        """
        Initialize a contour.

        Args:
            vertices: Ordered corner points (at least one)
            ray: Angle of the terminal ray, or None for a finite path
            side_tags: Tag per segment ("above", "below", "on"); the terminal
                ray counts as the last segment
            singular_rays: Angles of the Stokes rays the path is checked against

        Raises:
            ValueError: On a malformed or non-monotone path
        """
        if len(vertices) == 0:
            raise ValueError("a contour needs at least one vertex")
        self.vertices = [complex(v) for v in vertices]
        self.ray = ray
        self.singular_rays = [float(a) for a in singular_rays]

        n_segments = len(self.vertices) - 1 + (1 if ray is not None else 0)
        if n_segments == 0:
            raise ValueError("a contour needs a segment or a terminal ray")
        if side_tags is None:
            side_tags = ["on"] * n_segments
        side_tags = list(side_tags)
        if len(side_tags) != n_segments:
            raise ValueError(f"expected {n_segments} side tags, got {len(side_tags)}")
        for tag in side_tags:
            if tag not in SIDE_TAGS:
                raise ValueError(f"Unknown side tag: {tag}")
        self.side_tags = side_tags

        self._validate_monotone()
        self._validate_crossings()

    def segments(self) -> List[Tuple[complex, complex]]:
        """Finite segments as (start, end) pairs."""
        return list(zip(self.vertices[:-1], self.vertices[1:]))

    @property
    def ray_direction(self) -> Optional[complex]:
        if self.ray is None:
            return None
        return cmath.exp(1j * self.ray)

    def _validate_monotone(self) -> None:
        for a, b in self.segments():
            if a == b:
                raise ValueError(f"repeated contour vertex {a}")
            # |a + t(b-a)|^2 is convex in t; increasing iff it does not start decreasing
            if a != 0 and (a.conjugate() * (b - a)).real <= 0:
                raise ValueError(f"|p| does not increase strictly along segment {a} -> {b}")
        if self.ray is not None:
            end = self.vertices[-1]
            if end != 0 and (end.conjugate() * self.ray_direction).real <= 0:
                raise ValueError("|p| does not increase strictly along the terminal ray")

    def _validate_crossings(self) -> None:
        for angle in self.singular_rays:
            rot = cmath.exp(-1j * angle)
            points = [v * rot for v in self.vertices]
            crossings = 0
            for a, b in zip(points[:-1], points[1:]):
                if a.imag * b.imag < 0:
                    t = a.imag / (a.imag - b.imag)
                    if (a + t * (b - a)).real > 0:
                        crossings += 1
            if crossings > 1:
                raise ValueError(f"contour crosses the singular ray at angle {angle} {crossings} times")

    def __repr__(self) -> str:
        return (f"Contour(vertices={len(self.vertices)}, ray={self.ray}, "
                f"tags={self.side_tags})")


def ray_contour(angle: float = 0.0) -> Contour:
    """Straight ray from the origin."""
    return Contour([0], ray=angle)


def indented_contour(
    moduli: Sequence[float],
    angle: float,
    side: Union[str, Sequence[str]],
    rho: float = 0.5,
    extend: bool = True
) -> Contour:
    """
    Ray from 0 in direction ``angle`` with a triangular detour around each
    singular point at distance ``moduli`` from the origin.

    The detour around a point t*d runs (t - h)d -> (t + s*i*h)d -> (t + h)d
    with h = rho * min(t, neighbouring gaps) and s = +1 above (counterclockwise
    of the ray), -1 below.

    Args:
        moduli: Distances of the singular points on the ray
        angle: Direction of the ray
        side: "above" or "below", or one side per singular point
        rho: Relative detour size (< 1)
        extend: Append the terminal ray

    Returns:
        The lateral contour
    """
    ts = [float(t) for t in moduli]
    sides = [side] * len(ts) if isinstance(side, str) else list(side)
    if len(sides) != len(ts):
        raise ValueError(f"expected {len(ts)} sides, got {len(sides)}")
    for tag in sides:
        if tag not in ("above", "below"):
            raise ValueError(f"Unknown side: {tag}")
    if not 0 < rho < 1:
        raise ValueError(f"rho must lie in (0, 1), got {rho}")
    if not ts or ts[0] <= 0 or any(b <= a for a, b in zip(ts, ts[1:])):
        raise ValueError("singular points must lie at increasing positive distances on the ray")

    d = cmath.exp(1j * angle)
    vertices: List[complex] = [0j]
    tags: List[str] = []
    for i, t in enumerate(ts):
        gaps = [t]
        if i > 0:
            gaps.append(t - ts[i - 1])
        if i + 1 < len(ts):
            gaps.append(ts[i + 1] - t)
        h = rho * min(gaps)
        s = 1 if sides[i] == "above" else -1
        start = (t - h) * d
        if abs(start - vertices[-1]) > 0:
            vertices.append(start)
            tags.append("on")
        vertices.append((t + 1j * s * h) * d)
        tags.append(sides[i])
        vertices.append((t + h) * d)
        tags.append(sides[i])
    if extend:
        tags.append("on")
    return Contour(vertices, ray=angle if extend else None, side_tags=tags,
                   singular_rays=[angle] if extend else [])


def lateral_contour(modulus: float, angle: float, side: str, rho: float = 0.5) -> Contour:
    """
    Ray from 0 in direction ``angle`` that leaves it before the first singular
    point and continues parallel to it at distance rho*t on the given side.

    Vertices 0 -> (t - h)d -> (t + s*i*h)d, then the terminal ray in direction
    d (h = rho*t, s = +1 above, -1 below). Every later singular point on the
    ray is passed on the same side, and the path never touches the ray's
    branch cut.

    Args:
        modulus: Distance t of the first singular point on the ray
        angle: Direction of the ray
        side: "above" or "below"
        rho: Relative detour size (< 1)

    Returns:
        The lateral contour
    """
    if side not in ("above", "below"):
        raise ValueError(f"Unknown side: {side}")
    if not 0 < rho < 1:
        raise ValueError(f"rho must lie in (0, 1), got {rho}")
    if modulus <= 0:
        raise ValueError("the singular point must lie at positive distance on the ray")
    d = cmath.exp(1j * angle)
    s = 1 if side == "above" else -1
    h = rho * modulus
    vertices = [0j, (modulus - h) * d, (modulus + 1j * s * h) * d]
    return Contour(vertices, ray=angle, side_tags=["on", side, side])


# Utility functions

def _graded_fractions(scale: float) -> List[float]:
    """Breakpoints in [0, 1] refined toward 0 for a kernel decaying on 1/scale."""
    if scale <= GRADING_SCALE:
        return [0.0, 1.0]
    out = [0.0]
    j = 1
    while True:
        s = GRADING_SCALE * (2 ** j - 1) / scale
        if s >= 1:
            break
        out.append(s)
        j += 1
    out.append(1.0)
    return out


def _integrate_panel(mp, g, a, b, tol, depth: int, max_depth: int, max_degree: int):
    value, err = mp.quad(g, [a, b], method="gauss-legendre", error=True, maxdegree=max_degree)
    if err <= tol:
        return value, err
    if depth >= max_depth:
        raise QuadratureNonConvergenceError(
            f"panel [{mp.nstr(a, 6)}, {mp.nstr(b, 6)}] stuck at error {mp.nstr(err, 3)} "
            f"(tolerance {mp.nstr(tol, 3)})"
        )
    mid = (a + b) / 2
    v1, e1 = _integrate_panel(mp, g, a, mid, tol / 2, depth + 1, max_depth, max_degree)
    v2, e2 = _integrate_panel(mp, g, mid, b, tol / 2, depth + 1, max_depth, max_degree)
    return v1 + v2, e1 + e2


def quad_laplace(
    f: Callable,
    contour: Contour,
    x: Number,
    ctx: PrecisionContext,
    tol: Optional[Number] = None,
    origin_power: Number = 1,
    bound: Optional[Callable] = None,
    error: bool = False,
    max_degree: int = DEFAULT_MAX_DEGREE,
    max_depth: int = DEFAULT_MAX_DEPTH
):
    """
    Laplace integral int_C e^{-xp} p^{origin_power-1} f(p) dp.

    Args:
        f: Function of a context complex, analytic on the contour
        contour: Integration path
        x: Laplace variable
        ctx: Precision context
        tol: Absolute tolerance (default 2^(-bits+64))
        origin_power: Exponent sigma of the p^(sigma-1) factor, sigma in (0, 1];
            panels starting at p = 0 are mapped by p = b*u^(1/sigma)
        bound: Optional bound |f(p)| used to truncate the terminal ray
        error: Also return the accumulated error estimate
        max_degree: Gauss-Legendre degree cap per panel (3*2^(d-1) nodes)
        max_depth: Bisection depth cap per panel

    Returns:
        The integral, or (integral, error) when ``error`` is True

    Raises:
        NonDecayingRayError: Re(x * ray direction) <= 0
        QuadratureNonConvergenceError: A panel cannot reach its tolerance
    """
    mp = ctx.mp
    x = ctx.mpc(x)
    tol = ctx.tolerance if tol is None else ctx.mpf(tol)
    sigma = ctx.mpf(origin_power)
    if not 0 < sigma <= 1:
        raise ValueError(f"origin_power must lie in (0, 1], got {origin_power}")

    decay = None
    if contour.ray is not None:
        direction = mp.expj(ctx.mpf(contour.ray))
        decay = mp.re(x * direction)
        if decay <= 0:
            raise NonDecayingRayError(
                f"Re(x * e^(i*{contour.ray})) = {mp.nstr(decay, 6)} <= 0: kernel does not decay"
            )

    def kernel(p):
        if sigma == 1:
            return mp.exp(-x * p) * f(p)
        return mp.exp(-x * p) * mp.power(p, sigma - 1) * f(p)

    def magnitude(p):
        b = bound(p) if bound is not None else 2 * abs(f(p))
        if sigma != 1:
            b = b * abs(mp.power(p, sigma - 1))
        return abs(mp.exp(-x * p)) * b

    # Panels on the finite segments
    panels: List[Tuple] = []
    absx = float(abs(x))
    for a, b in contour.segments():
        a, b = ctx.mpc(a), ctx.mpc(b)
        for s0, s1 in _pairs(_graded_fractions(absx * float(abs(b - a)))):
            panels.append((a + s0 * (b - a), a + s1 * (b - a)))

    # Panels on the terminal ray, up to the truncation point
    if contour.ray is not None:
        start = ctx.mpc(contour.vertices[-1])
        h = GRADING_SCALE / decay
        t_prev = ctx.mpf(0)
        j = 1
        while True:
            t = h * (2 ** j - 1)
            p_end = start + t * direction
            panels.append((start + t_prev * direction, p_end))
            if magnitude(p_end) / decay < tol / 100:
                break
            if j >= MAX_RAY_PANELS:
                raise QuadratureNonConvergenceError(
                    f"terminal ray not truncated after {MAX_RAY_PANELS} panels"
                )
            t_prev = t
            j += 1

    share = tol / (2 * len(panels))
    total = ctx.mpc(0)
    total_err = ctx.mpf(0)
    for a, b in panels:
        if a == 0 and sigma != 1:
            # p = b * u^(1/sigma): p^(sigma-1) dp = (b^sigma / sigma) du
            scale = mp.power(b, sigma) / sigma

            def mapped(u, b=b, scale=scale):
                if u == 0:
                    return scale * f(ctx.mpc(0))
                p = b * mp.power(u, 1 / sigma)
                return scale * mp.exp(-x * p) * f(p)

            value, err = _integrate_panel(mp, mapped, ctx.mpf(0), ctx.mpf(1), share, 0,
                                          max_depth, max_degree)
        else:
            value, err = _integrate_panel(mp, kernel, a, b, share, 0, max_depth, max_degree)
        total += value
        total_err += err

    logger.debug("quad_laplace: %d panels, error estimate %s", len(panels), mp.nstr(total_err, 3))
    if error:
        return total, total_err
    return total


def _pairs(points: Sequence) -> List[Tuple]:
    return list(zip(points[:-1], points[1:]))
