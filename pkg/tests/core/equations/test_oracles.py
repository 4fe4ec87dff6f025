"""Exact-solution oracles."""

from fractions import Fraction

import pytest

from src.core.equations import (
    build_catalog_equation, exact_solution, generate_coefficients, stokes_reference, resonant_jump, resonant_modes,
    ResonantOracle
)
from src.core.truncation import envelope_least_term_index, truncated_sum
from src.core.equations.oracles import toy_exact
from src.utils.exceptions import OracleUnavailableError, NoReferenceError


def test_toy_principal_value(toy, ctx):
    mp = ctx.mp
    value = exact_solution(toy, 10, ctx)
    assert abs(value - mp.exp(-10) * mp.ei(10)) < ctx.tolerance


def test_toy_continuation_differs_by_half_jump(toy, ctx):
    mp = ctx.mp
    x = 10 * mp.expj(0.4)
    directional = exact_solution(toy, x, ctx)
    continued = exact_solution(toy, x, ctx, method="continued")
    assert abs(abs(continued - directional) - mp.pi * abs(mp.exp(-x))) < 1e-25


def test_toy_rejects_origin_and_unknown_method(toy, ctx):
    with pytest.raises(ValueError):
        toy_exact(toy, 0, ctx)
    with pytest.raises(NoReferenceError):
        exact_solution(toy, 5, ctx, method="recessive")


def test_airy_balanced_solution_follows_its_series(airy, ctx):
    mp = ctx.mp
    t = ctx.mpf(40)
    value = exact_solution(airy, t, ctx) * mp.power(t, ctx.mpf(1) / 6)
    assert abs(value - 1 - ctx.mpf(5) / (72 * t)) < 1e-4


def test_airy_stokes_constant_is_i(airy, ctx):
    S = stokes_reference(airy, ctx)
    assert abs(S - 1j) < 1e-20


def test_no_stokes_oracle_for_toy(toy, ctx):
    assert stokes_reference(toy, ctx) is None


def test_series_only_equation(painleve1, ctx):
    with pytest.raises(OracleUnavailableError):
        exact_solution(painleve1, 5, ctx)


def test_resonant_degenerate_laplace_oracle(ctx):
    # m = 0: Borel function 1/(1-p)^2, so the balanced sum is -1 + x e^{-x} Ei(x)
    mp = ctx.mp
    spec = build_catalog_equation("resonant", {"m": 0})
    y = exact_solution(spec, 8, ctx, method="laplace")
    assert abs(y - (-1 + 8 * mp.exp(-8) * mp.ei(8))) < 1e-15


def test_resonant_jump_degenerate_case(ctx):
    mp = ctx.mp
    jump = resonant_jump(0, 6, ctx)
    assert abs(jump - 2j * mp.pi * mp.exp(-6) * 6) < ctx.tolerance


def test_resonant_modes_need_positive_m(ctx):
    with pytest.raises(ValueError):
        resonant_modes(0, 5, ctx)


def test_resonant_modes_leading_behavior(ctx):
    mp = ctx.mp
    x = ctx.mpf(400)
    (y_plus, _), (y_minus, _) = resonant_modes(Fraction(1), x, ctx)
    normalized = y_plus / (mp.power(x, ctx.mpf(1) / 4) * mp.exp(-x + 2j * mp.sqrt(x)))
    assert abs(normalized - 1) < 0.05
    assert abs(y_minus - mp.conj(y_plus)) < ctx.tolerance * abs(y_plus)


def test_resonant_oracle_repeated_calls_are_cached(ctx):
    oracle = ResonantOracle(Fraction(1), anchor=10)
    spec = build_catalog_equation("resonant", {"m": 1})
    first = oracle(spec, 14, ctx)
    assert oracle(spec, 14, ctx) == first
    assert len(oracle._cache) == 2


def _envelope_least_term(table, x, ctx, half_period=25):
    # |a_k| ~ k^(1/4) Gamma(k) |cos(2 sqrt(k) + phase)|; take the cosine's peak around N
    mp = ctx.mp
    N = envelope_least_term_index(table, x, ctx)
    values = table.in_context(ctx)
    amplitude = max(
        abs(values[k]) / (mp.gamma(k) * mp.power(k, ctx.mpf(1) / 4))
        for k in range(max(1, N - half_period), min(table.K, N + half_period) + 1)
    )
    return N, amplitude * mp.gamma(N) * mp.power(N, ctx.mpf(1) / 4) / mp.power(x, N)


def test_far_anchor_integration_matches_the_continued_oracle(resonant_one, ctx):
    table = generate_coefficients(resonant_one, 120)
    _, least = _envelope_least_term(table, 50, ctx)
    continued = exact_solution(resonant_one, 50, ctx, method="continued")
    far = exact_solution(resonant_one, 50, ctx, method="ode")
    assert abs(far - continued) <= least


def test_resonant_solution_is_within_a_few_least_terms(resonant_one, ctx):
    table = generate_coefficients(resonant_one, 120)
    N, least = _envelope_least_term(table, 50, ctx)
    remainder = exact_solution(resonant_one, 50, ctx) - truncated_sum(table, 50, N, ctx)
    assert abs(remainder) <= 5 * least
