"""Stokes-constant extraction from late coefficients."""

import math

import pytest

from src.core.equations import SingularPoint, build_catalog_equation, generate_coefficients
from src.core.stokes import (
    StokesEstimate, check_oscillation, extract_stokes, stokes_sequence, late_term_factor, regenerate_coefficients,
    inversion_constant
)
from src.core.numerics import richardson_extrapolate
from src.utils.exceptions import InsufficientDataError, ModelUnavailableError, OscillationDetectedError


def test_toy_inversion_is_exact(toy_table, toy, ctx):
    mp = ctx.mp
    raw = stokes_sequence(toy_table, toy, 1, range(10, 20), ctx)
    assert all(abs(v - 2j * mp.pi) < ctx.tolerance for v in raw)
    estimate = extract_stokes(toy_table, toy, 1, (20, 60), 4, ctx)
    assert abs(estimate.value - 2j * mp.pi) < 1e-30
    assert estimate.indices[0] == 20
    assert estimate.indices[-1] == 60


def test_airy_stokes_constant(airy, ctx):
    table = generate_coefficients(airy, 200)
    estimate = extract_stokes(table, airy, 1, (100, 200), 4, ctx)
    assert abs(estimate.value - 1j) < 1e-5
    assert estimate.sanity_band_ok
    summary = estimate.to_dict()
    assert summary["window"] == [100, 200]
    assert summary["richardson_order"] == 4


def test_resonant_sequence_oscillates(ctx):
    spec = build_catalog_equation("resonant", {"m": 1})
    table = generate_coefficients(spec, 200)
    with pytest.raises(OscillationDetectedError) as info:
        extract_stokes(table, spec, 1, (150, 200), 4, ctx)
    assert len(info.value.raw_sequence) >= 40


def test_window_validation(toy_table, toy, ctx):
    with pytest.raises(ValueError):
        extract_stokes(toy_table, toy, 1, (40, 30), 4, ctx)
    with pytest.raises(InsufficientDataError):
        extract_stokes(toy_table, toy, 1, (50, 100), 4, ctx)
    with pytest.raises(InsufficientDataError):
        extract_stokes(toy_table, toy, 1, (50, 53), 4, ctx)


def test_pair_doubles_the_late_term_factor(painleve1, ctx):
    point = painleve1.dominant_singularity(1)
    single = late_term_factor(SingularPoint(location=1, beta_prime=point.beta_prime), 20, ctx)
    assert abs(late_term_factor(point, 20, ctx) - 2 * single) < ctx.tolerance * abs(single)


def test_regenerated_coefficients(toy_table, toy, ctx):
    estimate = extract_stokes(toy_table, toy, 1, (20, 60), 4, ctx)
    (a30,) = regenerate_coefficients(estimate, toy, [30], ctx)
    assert abs(a30 - toy_table[30]) < 1e-25 * toy_table[30]
    assert inversion_constant(estimate, toy_table, toy, ctx) < 1e-20


def test_nominal_point_has_no_late_term_model(ctx):
    spec = build_catalog_equation("resonant", {"m": 1})
    table = generate_coefficients(spec, 40)
    raw = stokes_sequence(table, spec, 1, [20, 21], ctx)
    estimate = StokesEstimate(spec.name, 1, 1j, raw, [20, 21], 1, 0)
    with pytest.raises(ModelUnavailableError):
        regenerate_coefficients(estimate, spec, [20], ctx)


def test_toy_error_estimates_stay_at_roundoff(toy_table, toy, ctx):
    for order in (1, 2, 3):
        estimate = extract_stokes(toy_table, toy, 1, (20, 60), order, ctx)
        assert estimate.error_estimate < 1e-30


def test_airy_error_estimate_shrinks_with_the_order(airy, ctx):
    table = generate_coefficients(airy, 200)
    errors = [extract_stokes(table, airy, 1, (100, 200), order, ctx).error_estimate for order in (1, 2, 3)]
    assert errors[0] > errors[1] > errors[2]


def test_spread_beyond_the_error_estimate_is_rejected(ctx):
    # monotone moduli, but the tail is exponential rather than a power of 1/k
    indices = list(range(100, 141))
    raw = [2j * math.pi * (1 + 0.1 * math.exp(-k / 5)) for k in indices]
    _, error = richardson_extrapolate(raw, 2, indices=indices, ctx=ctx)
    with pytest.raises(OscillationDetectedError) as info:
        check_oscillation("synthetic", raw, indices, 2, error, ctx)
    assert "spread" in str(info.value)
    assert len(info.value.raw_sequence) == 41


def test_power_tail_passes_the_spread_rule(ctx):
    indices = list(range(100, 141))
    raw = [2j * ctx.mp.pi * (1 + ctx.mpf(1) / k + ctx.mpf(3) / k ** 2) for k in indices]
    _, error = richardson_extrapolate(raw, 2, indices=indices, ctx=ctx)
    check_oscillation("synthetic", raw, indices, 2, error, ctx)


def test_turning_moduli_are_rejected(ctx):
    indices = list(range(100, 141))
    raw = [2j * ctx.mp.pi * (1 + ctx.mpf(1) / k + ctx.mpf(k - 120) ** 2 / 10 ** 4) for k in indices]
    with pytest.raises(OscillationDetectedError) as info:
        check_oscillation("synthetic", raw, indices, 0, ctx.mpf(1), ctx)
    assert "direction" in str(info.value)


def test_painleve1_stokes_constant_from_its_even_terms(painleve1, ctx):
    table = generate_coefficients(painleve1, 200)
    early = extract_stokes(table, painleve1, 1, (100, 160), 4, ctx)
    late = extract_stokes(table, painleve1, 1, (140, 200), 4, ctx)
    assert all(k % 2 == 0 for k in late.indices)
    assert abs(ctx.mp.re(late.value)) < 1e-20 * abs(late.value)
    assert abs(late.value - early.value) < 1e-6 * abs(late.value)
    assert late.sanity_band_ok
