"""
Equation Catalog

Prepared equations addressable by name plus a parameter object, and custom
equations read from a JSON recurrence description.

Catalog entries:
    toy        f' + f = 1/x, series sum k! x^(-k-1)
    airy       growing-mode factor of the normalized Airy equation
    painleve1  normalized Painleve I tritronquee series (series only)
    resonant   y'' + 2y' + (1 + m^2/x) y = 1/x, series sum a_k x^(-k)
"""

import logging
import math
from fractions import Fraction
from typing import Dict, List, Optional

import sympy

from .equation_spec import (
    EquationSpec, SingularPoint, LinearRecurrence, CallableRecurrence, to_exact
)
from .oracles import (
    toy_exact, toy_borel, airy_balanced, airy_stokes_constant, airy_borel,
    ResonantOracle, resonant_borel
)
from ...utils.exceptions import UnknownEquationError, ConfigValidationError

logger = logging.getLogger(__name__)

CATALOG_NAMES = ("toy", "airy", "painleve1", "resonant")
CUSTOM_NAME = "custom"

# Parameters a run must name explicitly (catalog listings use the builder defaults)
REQUIRED_PARAMS = {"resonant": ("m",)}

P1_FORCING = Fraction(392, 1875)


# Residual operators: (y, x) -> L[y] - rhs as sympy expressions

def toy_residual(y, x):
    return sympy.diff(y, x) + y - 1 / x


def airy_residual(y, t):
    return sympy.diff(y, t, 2) + 2 * sympy.diff(y, t) + (sympy.diff(y, t) + y) / (3 * t)


def painleve1_residual(h, t):
    return (sympy.diff(h, t, 2) + sympy.diff(h, t) / t - h
            - sympy.Rational(3, 2) * h ** 2 - _rational(P1_FORCING) / t ** 4)


def resonant_residual(m):
    m2 = _rational(Fraction(m) ** 2)

    def residual(y, x):
        return sympy.diff(y, x, 2) + 2 * sympy.diff(y, x) + (1 + m2 / x) * y - 1 / x
    return residual


# Catalog builders

def _toy(params: Dict) -> EquationSpec:
    return EquationSpec(
        name="toy",
        lambdas=[1],
        betas=[-1],
        recurrence=LinearRecurrence({0: [1, 1]}, text="a_{k+1} = (k+1) a_k"),
        seeds=[1],
        series_offset=1,
        singular_points=[SingularPoint(location=1, beta_prime=Fraction(0), stokes_constant=2j * math.pi)],
        params=params,
        exact_oracle=toy_exact,
        borel_closed_form=toy_borel,
        ode_residual=toy_residual,
        description="f' + f = 1/x; principal-value solution e^(-x) Ei(x)"
    )


def _airy(params: Dict) -> EquationSpec:
    return EquationSpec(
        name="airy",
        lambdas=[1, -1],
        betas=[Fraction(-5, 6), Fraction(-5, 6)],
        recurrence=LinearRecurrence(
            {0: [5, 36, 36]}, denominator=[72, 72],
            text="u_{k+1} = (6k+1)(6k+5) u_k / (72(k+1))"
        ),
        seeds=[1],
        series_offset=Fraction(1, 6),
        singular_points=[SingularPoint(location=2, beta_prime=Fraction(1, 6), stokes_constant=1j)],
        params=params,
        exact_oracle=airy_balanced,
        stokes_oracle=airy_stokes_constant,
        borel_closed_form=airy_borel,
        ode_residual=airy_residual,
        description="G'' + 2G' + (G' + G)/(3t) = 0, G ~ t^(-1/6) sum u_k t^(-k)"
    )


def _painleve1_step(k: int, values) -> Fraction:
    n = k + 1
    total = (n - 2) ** 2 * values[n - 2] if n >= 2 else Fraction(0)
    quadratic = sum((values[i] * values[n - i] for i in range(1, n)), Fraction(0))
    total -= Fraction(3, 2) * quadratic
    if n == 4:
        total -= P1_FORCING
    return total


def _painleve1(params: Dict) -> EquationSpec:
    return EquationSpec(
        name="painleve1",
        lambdas=[1, -1],
        betas=[Fraction(-1, 2), Fraction(-1, 2)],
        recurrence=CallableRecurrence(
            _painleve1_step,
            text="d_k = (k-2)^2 d_{k-2} - (3/2) sum_{i+j=k} d_i d_j - (392/1875) delta_{k,4}"
        ),
        seeds=[0],
        series_offset=0,
        singular_points=[SingularPoint(location=1, beta_prime=Fraction(1, 2), pair=True)],
        params=params,
        ode_residual=painleve1_residual,
        parity=2,
        description="h'' + h'/t - h - (3/2) h^2 = 392/(1875 t^4); series only"
    )


def _resonant(params: Dict) -> EquationSpec:
    raw = params.get("m", 1)
    if isinstance(raw, (bool, complex)) or not isinstance(raw, (int, float, str, Fraction)):
        raise ConfigValidationError(f"resonant requires a real parameter m, got {raw!r}", field="m")
    try:
        m = Fraction(str(raw)) if not isinstance(raw, Fraction) else raw
    except ValueError as exc:
        raise ConfigValidationError(f"resonant requires a real parameter m, got {raw!r}", field="m") from exc
    m2 = m ** 2
    return EquationSpec(
        name="resonant",
        lambdas=[1, 1],
        betas=[Fraction(-1, 4), Fraction(-1, 4)],
        recurrence=LinearRecurrence(
            {0: [-m2, 2], 1: [0, 1, -1]}, inhomogeneous={0: 1},
            text="a_{k+1} = (2k - m^2) a_k - k(k-1) a_{k-1} + delta_{k,0}"
        ),
        seeds=[0, 1],
        series_offset=0,
        singular_points=[SingularPoint(location=1, beta_prime=Fraction(-1, 4), nominal=True)],
        params={"m": m},
        exact_oracle=ResonantOracle(m),
        borel_closed_form=resonant_borel(m),
        ode_residual=resonant_residual(m),
        description=f"y'' + 2y' + (1 + m^2/x) y = 1/x with m = {m}"
    )


BUILDERS = {
    "toy": _toy,
    "airy": _airy,
    "painleve1": _painleve1,
    "resonant": _resonant,
}


def build_catalog_equation(name: str, params: Optional[Dict] = None) -> EquationSpec:
    """
    Build a catalog equation.

    Args:
        name: One of CATALOG_NAMES, or "custom" with params["definition"]
        params: Entry parameters (resonant: {"m": real})

    Returns:
        The prepared equation

    Raises:
        UnknownEquationError: Name not in the catalog
        ConfigValidationError: Invalid parameters
    """
    params = dict(params or {})
    if name == CUSTOM_NAME:
        if "definition" not in params:
            raise ConfigValidationError("custom equations need params.definition", field="params")
        return equation_from_dict(params["definition"])
    if name not in BUILDERS:
        raise UnknownEquationError(f"Unknown equation: {name}", field="equation")
    return BUILDERS[name](params)


def catalog_entries() -> List[Dict]:
    """One summary row per catalog entry (default parameters)."""
    rows = []
    for name in CATALOG_NAMES:
        spec = build_catalog_equation(name)
        rows.append({
            "name": name,
            "lambdas": [_fmt(lam) for lam in spec.lambdas],
            "betas": [str(b) for b in spec.betas],
            "beta_primes": [str(b) for b in spec.beta_primes],
            "series_offset": str(spec.series_offset),
            "recurrence": spec.recurrence.describe(),
            "singular_points": [
                {"location": _fmt(sp.location), "beta_prime": str(sp.beta_prime),
                 "pair": sp.pair, "nominal": sp.nominal}
                for sp in spec.singular_points
            ],
            "oracle": spec.has_oracle(),
            "stokes_oracle": spec.stokes_oracle is not None,
            "params": {k: str(v) for k, v in spec.params.items()},
            "required_params": list(REQUIRED_PARAMS.get(name, ())),
            "description": spec.description,
        })
    return rows


def equation_from_dict(data: Dict) -> EquationSpec:
    """
    Custom equation from a JSON recurrence description.

    Expected keys: name, lambdas, betas, series_offset, seeds,
    recurrence [{"shift": j, "coefficients": [c0, c1, ...]}], optional
    denominator, inhomogeneous {k: q}, singular_points
    [{"location", "beta_prime", "stokes_constant"}]. Numbers may be ints,
    decimal or fraction strings, or [re, im] pairs.

    Raises:
        ConfigValidationError: Missing or malformed fields
    """
    for key in ("lambdas", "betas", "seeds", "recurrence"):
        if key not in data:
            raise ConfigValidationError(f"custom equation is missing '{key}'", field=key)
    try:
        terms = {int(t["shift"]): [_number(c) for c in t["coefficients"]] for t in data["recurrence"]}
        inhomogeneous = {int(k): _number(v) for k, v in data.get("inhomogeneous", {}).items()}
        denominator = [_number(c) for c in data["denominator"]] if "denominator" in data else None
        recurrence = LinearRecurrence(terms, denominator=denominator, inhomogeneous=inhomogeneous,
                                      text=data.get("recurrence_text", ""))
        singular_points = [
            SingularPoint(
                location=complex(_number(sp["location"])),
                beta_prime=_number(sp.get("beta_prime", 0)),
                stokes_constant=complex(_number(sp["stokes_constant"])) if "stokes_constant" in sp else None,
                nominal=bool(sp.get("nominal", False)),
                pair=bool(sp.get("pair", False)),
            )
            for sp in data.get("singular_points", [])
        ]
        spec = EquationSpec(
            name=data.get("name", CUSTOM_NAME),
            lambdas=[complex(_number(v)) for v in data["lambdas"]],
            betas=[_number(v) for v in data["betas"]],
            recurrence=recurrence,
            seeds=[_number(v) for v in data["seeds"]],
            series_offset=_number(data.get("series_offset", 0)),
            singular_points=singular_points,
            parity=int(data.get("parity", 1)),
            description=data.get("description", "custom recurrence"),
        )
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise ConfigValidationError(f"malformed custom equation: {exc}", field="definition") from exc
    logger.info("Loaded custom equation %s: %s", spec.name, recurrence.describe())
    return spec


# Utility functions

def _number(value):
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ValueError(f"complex numbers are [re, im] pairs, got {value!r}")
        re, im = (to_exact(v) for v in value)
        return re if im == 0 else complex(float(re), float(im))
    return to_exact(value)


def _rational(value: Fraction):
    return sympy.Rational(value.numerator, value.denominator)


def _fmt(z: complex) -> str:
    z = complex(z)
    if z.imag == 0:
        return f"{z.real:g}"
    return f"{z.real:g}{z.imag:+g}i" if z.real else f"{z.imag:g}i"
