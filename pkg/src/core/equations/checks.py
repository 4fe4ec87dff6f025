"""
Validity Checks

Checkers for the hypotheses a prepared equation must satisfy before the
truncation and summation results apply: nonresonance of the eigenvalues,
the normalization conditions on lambda and beta, the proper-transseries
selection along a direction, and recurrence-vs-ODE consistency.
"""

import cmath
import logging
import math
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Sequence

import numpy as np
import sympy

from ..numerics.precision import PrecisionContext
from .coefficients import generate_coefficients
from .equation_spec import EquationSpec

logger = logging.getLogger(__name__)

RESIDUAL_TERMS = 8


class CheckReport:
    """Outcome of a validity check: pass/fail, witnesses and per-condition details."""

    def __init__(self, name: str, passed: bool, witnesses: Optional[List] = None,
                 details: Optional[Dict] = None):
        self.name = name
        self.passed = passed
        self.witnesses = witnesses or []
        self.details = details or {}

    def __bool__(self) -> bool:
        return self.passed

    def to_dict(self) -> Dict:
        return {"check": self.name, "passed": self.passed,
                "witnesses": self.witnesses, "details": self.details}

    def __repr__(self) -> str:
        status = "pass" if self.passed else "fail"
        return f"CheckReport({self.name}: {status}, witnesses={len(self.witnesses)})"


def _wrap(angle: float) -> float:
    """Angle reduced to (-pi, pi]."""
    a = math.fmod(angle + math.pi, 2 * math.pi)
    if a <= 0:
        a += 2 * math.pi
    return a - math.pi


def _in_half_plane(z: complex, theta: float, margin: float = 0.0) -> bool:
    return (z * cmath.exp(-1j * theta)).real > margin


def half_planes(lambdas: Sequence[complex]) -> List[float]:
    """
    One direction per distinct open half-plane content.

    Membership of lambda_i changes only at arg(lambda_i) +- pi/2; the midpoints
    between consecutive critical angles cover every distinct subset.
    """
    critical = sorted({_wrap(cmath.phase(lam) + s * math.pi / 2) for lam in lambdas for s in (1, -1)})
    if len(critical) == 1:
        return [_wrap(critical[0] + math.pi / 2)]
    thetas = []
    for a, b in zip(critical, critical[1:] + [critical[0] + 2 * math.pi]):
        thetas.append(_wrap((a + b) / 2))
    seen = set()
    out = []
    for theta in thetas:
        members = tuple(i for i, lam in enumerate(lambdas) if _in_half_plane(lam, theta))
        if members and members not in seen:
            seen.add(members)
            out.append(theta)
    return out


def check_nonresonance(
    lambdas: Sequence[complex],
    bound: int,
    ctx: Optional[PrecisionContext] = None
) -> CheckReport:
    """
    Nonresonance of the eigenvalues, half-plane by half-plane.

    (1) The lambda_i in each half-plane admit no integer relation with
        coefficients |k_i| <= bound.
    (2) The finite set {lambda_i - sum_j k_j lambda_j in the half-plane, k_j >= 0,
        sum k_j <= bound} has pairwise distinct directions.

    Args:
        lambdas: Eigenvalues
        bound: Search cap (>= 1)
        ctx: Precision context supplying the angular tolerance 2^(-bits/2)

    Returns:
        CheckReport with one witness per violation
    """
    if bound < 1:
        raise ValueError(f"bound must be >= 1, got {bound}")
    ctx = ctx or PrecisionContext()
    tol = float(ctx.half_tolerance)
    lambdas = [complex(lam) for lam in lambdas]
    witnesses = []
    planes = half_planes(lambdas)

    for theta in planes:
        idx = [i for i, lam in enumerate(lambdas) if _in_half_plane(lam, theta)]
        sub = np.array([lambdas[i] for i in idx])

        # (1) integer relations, canonical sign (first nonzero entry positive)
        grid = np.array(list(product(range(-bound, bound + 1), repeat=len(idx))), dtype=float)
        grid = grid[np.any(grid != 0, axis=1)]
        first = grid[np.arange(len(grid)), np.argmax(grid != 0, axis=1)]
        grid = grid[first > 0]
        if len(grid):
            sums = grid @ sub
            scale = np.maximum(1.0, np.abs(grid) @ np.abs(sub))
            hits = grid[np.abs(sums) <= tol * scale]
            for row in hits:
                k = [int(v) for v in row]
                if math.gcd(*k) == 1:
                    witnesses.append({
                        "condition": 1,
                        "half_plane": theta,
                        "relation": {f"lambda_{idx[j] + 1}": k[j] for j in range(len(idx))},
                    })

        # (2) distinct directions of the reachable exponents
        points = []
        for i in idx:
            for k in product(range(bound + 1), repeat=len(idx)):
                if sum(k) > bound:
                    continue
                z = lambdas[i] - complex(np.dot(k, sub))
                if _in_half_plane(z, theta, margin=tol * max(1.0, abs(z))):
                    points.append(z)
        points = _dedupe(points, tol)
        for a_pos in range(len(points)):
            for b_pos in range(a_pos + 1, len(points)):
                a, b = points[a_pos], points[b_pos]
                if abs(_wrap(cmath.phase(a) - cmath.phase(b))) <= tol:
                    witnesses.append({
                        "condition": 2,
                        "half_plane": theta,
                        "collinear": [_pair(a), _pair(b)],
                    })

    passed = not witnesses
    logger.debug("nonresonance check on %s: %s", lambdas, "pass" if passed else "fail")
    return CheckReport("nonresonance", passed, witnesses,
                       {"half_planes": planes, "bound": bound, "tolerance": tol})


def check_prepared(spec: EquationSpec, xi: Optional[float] = None) -> CheckReport:
    """
    Normalization conditions of a prepared equation.

    Flags |lambda_i| < 1 or lambda_1 != 1, and Re(beta_j) >= 0. Given a
    direction xi, also lists which lambda_i satisfy xi + arg(lambda_i) in
    (-pi/2, pi/2), i.e. whose exponentials decay along xi.

    Args:
        spec: Equation spec
        xi: Direction for the proper-transseries selection

    Returns:
        CheckReport; ``details["n6"]["selected"]`` holds the selected indices
    """
    witnesses = []
    tol = 1e-12
    for i, lam in enumerate(spec.lambdas):
        if abs(lam) < 1 - tol:
            witnesses.append({"condition": "n3", "index": i, "reason": f"|lambda_{i + 1}| = {abs(lam):.6g} < 1"})
    if abs(spec.lambdas[0] - 1) > tol:
        witnesses.append({"condition": "n3", "index": 0, "reason": f"lambda_1 = {spec.lambdas[0]} != 1"})
    for j, beta in enumerate(spec.betas):
        re = beta.real if isinstance(beta, complex) else beta
        if re >= 0:
            witnesses.append({"condition": "n4", "index": j, "reason": f"Re(beta_{j + 1}) = {float(re):.6g} >= 0"})

    details: Dict = {
        "n3": not any(w["condition"] == "n3" for w in witnesses),
        "n4": not any(w["condition"] == "n4" for w in witnesses),
    }
    if xi is not None:
        selected, excluded = [], []
        for i, lam in enumerate(spec.lambdas):
            angle = _wrap(xi + cmath.phase(lam))
            (selected if -math.pi / 2 < angle < math.pi / 2 else excluded).append(i)
        details["n6"] = {"xi": xi, "selected": selected, "excluded": excluded}
    return CheckReport("prepared", not witnesses, witnesses, details)


def check_ode_residual(spec: EquationSpec, n_terms: int = RESIDUAL_TERMS) -> CheckReport:
    """
    Substitute the first ``n_terms`` series terms into the equation's ODE.

    In exact rational arithmetic the residual may contain only powers
    x^(-(n_terms + offset)) and beyond.

    Returns:
        CheckReport with the leading surviving power in ``details``
    """
    if spec.ode_residual is None:
        return CheckReport("ode_residual", False, [{"reason": f"{spec.name} carries no residual operator"}])
    table = generate_coefficients(spec, max(n_terms - 1, 2), exact=True)
    x = sympy.Symbol("x", positive=True)
    offset = sympy.Rational(Fraction(spec.series_offset).numerator, Fraction(spec.series_offset).denominator)
    series = sum(sympy.Rational(table[k].numerator, table[k].denominator) * x ** (-(k + offset))
                 for k in range(n_terms))
    residual = sympy.expand(sympy.powsimp(spec.ode_residual(series, x) * x ** (n_terms + offset)))

    witnesses = []
    leading = None
    for term in sympy.Add.make_args(residual):
        if term == 0:
            continue
        _, exponent = term.as_coeff_exponent(x)
        if leading is None or exponent > leading:
            leading = exponent
        if exponent > 0:
            witnesses.append({"term": str(term / x ** (n_terms + offset))})
    details = {
        "n_terms": n_terms,
        "leading_power": None if leading is None else str(leading - n_terms - offset),
    }
    return CheckReport("ode_residual", not witnesses, witnesses, details)


# Utility functions

def _dedupe(points: List[complex], tol: float) -> List[complex]:
    out: List[complex] = []
    for z in points:
        if all(abs(z - w) > tol * max(1.0, abs(z)) for w in out):
            out.append(z)
    return out


def _pair(z: complex) -> List[float]:
    return [z.real, z.imag]
