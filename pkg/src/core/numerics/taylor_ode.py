"""
Taylor-Method ODE Integration

High-precision integration of linear ODEs with polynomial coefficients,
sum_i P_i(x) y^(i)(x) = Q(x), along piecewise-straight complex paths. Each
step expands the solution in its Taylor series about the current point; the
coefficients follow from a recurrence obtained by matching powers of
h = x - x0, so every step is exact up to series truncation and rounding.
"""

import logging
import math
from typing import List, Sequence

import numpy as np

from .precision import PrecisionContext, Number
from ...utils.exceptions import IntegrationNonConvergenceError

logger = logging.getLogger(__name__)

MAX_TERMS = 50000
RADIUS_FRACTION = 0.5


def _shift_poly(mp, coeffs: Sequence, x0) -> List:
    """Coefficients of P(x0 + h) in h."""
    n = len(coeffs)
    out = []
    for l in range(n):
        s = 0
        for k in range(l, n):
            s += coeffs[k] * mp.binomial(k, l) * mp.power(x0, k - l)
        out.append(s)
    return out


class LinearODE:
    """
    sum_{i=0}^{order} P_i(x) y^(i) = Q(x) with polynomial P_i, Q.

    ``rate`` bounds the growth |lambda| of the homogeneous exponentials and
    limits the step length so that Taylor sums never lose more than half
    the guard bits to cancellation.
    """

    def __init__(self, coefficients: Sequence[Sequence], rhs: Sequence = (0,), rate: float = 1.0):
        """
        Initialize the operator.

        Args:
            coefficients: [P_0, P_1, ..., P_order], each an ascending coefficient list
            rhs: Ascending coefficients of Q
            rate: Largest |lambda| among the homogeneous exponentials e^(lambda x)
        """
        if len(coefficients) < 2:
            raise ValueError("order must be at least 1")
        self.coefficients = [list(c) for c in coefficients]
        self.rhs = list(rhs)
        self.rate = rate
        lead = [complex(c) for c in self.coefficients[-1]]
        while len(lead) > 1 and lead[-1] == 0:
            lead.pop()
        if len(lead) == 1 and lead[0] == 0:
            raise ValueError("leading coefficient vanishes identically")
        self.singularities = list(np.roots(lead[::-1])) if len(lead) > 1 else []

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def distance_to_singularity(self, x: complex) -> float:
        if not self.singularities:
            return math.inf
        return min(abs(complex(x) - s) for s in self.singularities)

    def __repr__(self) -> str:
        return f"LinearODE(order={self.order}, singularities={self.singularities})"


def taylor_step(ode: LinearODE, x0: Number, state: Sequence, h: Number, ctx: PrecisionContext) -> List:
    """
    Advance [y, y', ..., y^(order-1)] from x0 to x0 + h.

    Args:
        ode: Operator
        x0: Current point
        state: Values and derivatives at x0
        h: Step (|h| below the distance to the nearest singular point)
        ctx: Precision context

    Returns:
        State at x0 + h

    Raises:
        IntegrationNonConvergenceError: The Taylor series does not settle
    """
    mp = ctx.mp
    order = ode.order
    x0 = ctx.mpc(x0)
    h = ctx.mpc(h)
    p = [_shift_poly(mp, [ctx.convert(c) for c in coeffs], x0) for coeffs in ode.coefficients]
    q = _shift_poly(mp, [ctx.convert(c) for c in ode.rhs], x0)
    lead = p[order][0]
    if lead == 0:
        raise IntegrationNonConvergenceError(f"step starts at a singular point x = {mp.nstr(x0, 8)}")

    y = [ctx.mpc(state[n]) / mp.factorial(n) for n in range(order)]
    sums = [ctx.mpc(0) for _ in range(order)]
    absh = abs(h)
    eps = ctx.epsilon
    scale = max([abs(v) for v in state] + [ctx.mpf(1e-300)])
    quiet = 0
    hump = int(math.ceil(math.e * ode.rate * float(absh))) + order
    hpow = ctx.mpc(1)
    hinv = [mp.power(h, -j) for j in range(order)]

    n = 0
    while True:
        if n >= len(y):
            # coefficient of h^m with m = n - order fixes y_n
            m = n - order
            acc = q[m] if m < len(q) else 0
            for i in range(order + 1):
                for l, c in enumerate(p[i]):
                    idx = m - l + i
                    if c == 0 or m - l < 0 or (i == order and l == 0):
                        continue
                    acc -= c * mp.rf(m - l + 1, i) * y[idx]
            y.append(acc / (lead * mp.rf(m + 1, order)))

        term = y[n] * hpow
        hpow *= h
        for j in range(order):
            if n >= j:
                sums[j] += term * mp.ff(n, j) * hinv[j]

        size = abs(term) * (n + 1) ** (order - 1) / max(absh, ctx.mpf(1)) ** (order - 1)
        if n > hump and size <= eps * scale:
            quiet += 1
            if quiet > order + 2:
                break
        else:
            quiet = 0
        n += 1
        if n > MAX_TERMS:
            raise IntegrationNonConvergenceError(
                f"Taylor series did not converge in {MAX_TERMS} terms at step {mp.nstr(h, 6)}"
            )
    return sums


def integrate_path(
    ode: LinearODE,
    path: Sequence[Number],
    state: Sequence,
    ctx: PrecisionContext,
    max_step: float = None
) -> List:
    """
    Integrate along straight segments between successive path points.

    Args:
        ode: Operator
        path: Waypoints, starting at the point where ``state`` is given
        state: Initial [y, y', ...]
        ctx: Precision context
        max_step: Step length cap (default guard_bits*ln2 / (2*rate))

    Returns:
        State at the last waypoint
    """
    if max_step is None:
        max_step = ctx.guard_bits * math.log(2) / (2 * ode.rate)
    mp = ctx.mp
    state = [ctx.mpc(v) for v in state]
    x = ctx.mpc(path[0])
    steps = 0
    for target in path[1:]:
        target = ctx.mpc(target)
        while x != target:
            remaining = target - x
            radius = RADIUS_FRACTION * ode.distance_to_singularity(complex(x))
            length = min(float(abs(remaining)), max_step, radius)
            if length <= 0:
                raise IntegrationNonConvergenceError(f"path runs into a singular point near {mp.nstr(x, 8)}")
            if length >= float(abs(remaining)):
                h = remaining
            else:
                h = remaining * (length / abs(remaining))
            state = taylor_step(ode, x, state, h, ctx)
            x = target if h == remaining else x + h
            steps += 1
    logger.debug("integrate_path: %d Taylor steps", steps)
    return state
