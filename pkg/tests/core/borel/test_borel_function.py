"""Borel transform and continuation."""

from fractions import Fraction

import pytest

from src.core.borel import borel_transform, continue_borel
from src.core.borel.borel_function import BorelFunction, CLOSED_FORM, PADE, TAYLOR
from src.core.equations import equation_from_dict, generate_coefficients
from src.utils.exceptions import AtSingularityError, OutsideTrustRegionError


def test_toy_transform_is_geometric(toy_table, toy, ctx):
    bf = borel_transform(toy_table, toy, ctx)
    assert bf.kind == CLOSED_FORM
    assert bf.single_valued
    assert bf.sigma == 1
    assert bf.taylor[:5] == [1, 1, 1, 1, 1]
    assert abs(bf(0.5, ctx) - 2) < ctx.epsilon


def test_airy_transform_carries_fractional_power(airy_table, airy, ctx):
    mp = ctx.mp
    bf = borel_transform(airy_table, airy, ctx)
    assert bf.sigma == Fraction(1, 6)
    assert not bf.single_valued
    # g(0) = 1/Gamma(1/6) = Gamma(5/6)/(2 pi)
    assert abs(bf.taylor[0] - mp.rgamma(ctx.mpf(1) / 6)) < ctx.tolerance
    assert abs(bf.regular_part(0, ctx) - bf.taylor[0]) < ctx.tolerance


@pytest.mark.parametrize("p", [-1.5, 1 + 1j, 0.7j])
def test_pade_continuation_matches_closed_form(airy_table, airy, ctx, p):
    closed = borel_transform(airy_table, airy, ctx)
    approx = borel_transform(airy_table, airy, ctx, use_closed_form=False)
    assert approx.kind == PADE
    assert len(approx.approximants) == 2
    value = continue_borel(approx, p, "above", ctx)
    assert abs(value - closed(p, ctx)) < 1e-12 * abs(closed(p, ctx))


def test_pade_trust_radius(airy_table, airy, ctx):
    approx = borel_transform(airy_table, airy, ctx, use_closed_form=False)
    assert approx.trust_radius == pytest.approx(6.0)
    with pytest.raises(OutsideTrustRegionError):
        continue_borel(approx, 7, "above", ctx)


def test_entire_series_uses_taylor(ctx):
    # a_k = 1/k!: entire Borel function
    spec = equation_from_dict({
        "lambdas": [1],
        "betas": [-1],
        "seeds": [1],
        "series_offset": 1,
        "recurrence": [{"shift": 0, "coefficients": [1]}],
        "denominator": [1, 1],
    })
    table = generate_coefficients(spec, 30)
    bf = borel_transform(table, None, ctx)
    assert bf.kind == TAYLOR
    assert bf.radius == float("inf")
    assert table[3] == Fraction(1, 6)


def test_closed_form_jump_across_branch_cut(airy_table, airy, ctx):
    bf = borel_transform(airy_table, airy, ctx)
    above = continue_borel(bf, 3, "above", ctx)
    below = continue_borel(bf, 3, "below", ctx)
    assert abs(above - below) > 0.01
    assert abs(above - ctx.mp.conj(below)) < ctx.tolerance


def test_pole_has_no_jump(toy_table, toy, ctx):
    bf = borel_transform(toy_table, toy, ctx)
    assert abs(continue_borel(bf, 2, "above", ctx) - continue_borel(bf, 2, "below", ctx)) < ctx.tolerance


def test_continuation_guards(toy_table, toy, ctx):
    bf = borel_transform(toy_table, toy, ctx)
    with pytest.raises(AtSingularityError):
        continue_borel(bf, 1, "above", ctx)
    with pytest.raises(ValueError):
        continue_borel(bf, 2, "sideways", ctx)


def test_estimated_radius(toy_table, toy, ctx):
    bf = borel_transform(toy_table, toy, ctx)
    assert bf.estimated_radius() == pytest.approx(1.0)
    assert bf.rays() == [0.0]
    assert bf.singularities_on_ray(0.0) == [1]
    assert bf.singularities_on_ray(0.5) == []


def test_taylor_kind_outside_disc(ctx):
    bf = BorelFunction([1, 1, 1], singularities=[1])
    with pytest.raises(OutsideTrustRegionError):
        bf.regular_part(2, ctx)
