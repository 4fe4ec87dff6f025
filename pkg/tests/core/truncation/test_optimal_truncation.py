"""Least-term truncation."""

import math
import random

import pytest

from src.core.equations import generate_coefficients
from src.core.truncation import (
    TruncationReport, least_term_index, envelope_least_term_index, truncated_sum, truncated_derivative,
    least_term_magnitude, truncation_error, truncation_scan, table_length, working_context, series_terms
)
from src.utils.exceptions import NoReferenceError, TableTooShortError


def test_least_term_ties_go_to_smaller_index(toy_table, ctx):
    # 9!/10^10 == 10!/10^11
    assert least_term_index(toy_table, 10, ctx) == 9
    assert least_term_index(toy_table, 20, ctx) == 19


def test_least_term_depends_on_modulus_only(toy_table, ctx):
    assert least_term_index(toy_table, 10j, ctx) == 9


def test_least_term_magnitude(toy_table, ctx):
    expected = ctx.mpf(math.factorial(9)) / ctx.mpf(10) ** 10
    assert abs(least_term_magnitude(toy_table, 10, ctx) - expected) < ctx.tolerance * expected


def test_table_must_reach_past_least_term(toy_table, ctx):
    with pytest.raises(TableTooShortError):
        least_term_index(toy_table, 75, ctx)
    with pytest.raises(ValueError):
        least_term_index(toy_table, 0, ctx)


def test_envelope_index_for_factorial_growth(toy_table, ctx):
    assert envelope_least_term_index(toy_table, 10, ctx) in (9, 10)


def test_partial_sums(toy_table, ctx):
    # 1/2 + 1/4 + 2/8
    assert abs(truncated_sum(toy_table, 2, 2, ctx) - 1) < ctx.epsilon
    # -(1/4 + 2/8)
    assert abs(truncated_derivative(toy_table, 2, 1, ctx) + ctx.mpf(0.5)) < ctx.epsilon
    with pytest.raises(TableTooShortError):
        truncated_sum(toy_table, 2, toy_table.K + 1, ctx)


@pytest.mark.parametrize("x", [10, 20, 30])
def test_toy_remainder_is_of_least_term_size(toy, ctx, x):
    report = truncation_error(toy, x, ctx=ctx)
    assert report.N == x - 1
    assert 0.1 < report.ratio < 5.0


def test_off_axis_remainder(toy, ctx):
    x = 20 * ctx.mp.expj(0.8)
    report = truncation_error(toy, x, ctx=ctx)
    assert report.ratio < 5.0


def test_homogeneous_shift_moves_remainder(toy, ctx):
    mp = ctx.mp
    plain = truncation_error(toy, 10, ctx=ctx)
    shifted = truncation_error(toy, 10, ctx=ctx, homogeneous_shift=3)
    assert abs(shifted.remainder - plain.remainder - 3 * mp.exp(-10)) < ctx.tolerance


def test_balanced_sum_reference_matches_oracle(toy, ctx):
    oracle = truncation_error(toy, 10, "exact_oracle", ctx)
    balanced = truncation_error(toy, 10, "balanced_sum", ctx)
    assert abs(oracle.remainder - balanced.remainder) < 1e-18


def test_missing_references(toy, painleve1, ctx):
    with pytest.raises(NoReferenceError):
        truncation_error(toy, 10, "divination", ctx)
    with pytest.raises(NoReferenceError):
        truncation_error(painleve1, 10, "exact_oracle", ctx)


def test_scan_shares_one_table(toy, ctx):
    reports = truncation_scan(toy, [10, 20], ctx=ctx)
    assert [r.N for r in reports] == [9, 19]
    assert truncation_scan(toy, [], ctx=ctx) == []


def test_report_without_reference():
    report = TruncationReport(10, 9, 0, 1)
    assert report.ratio is None
    assert "n/a" in repr(report)


def test_working_context_raises_precision(toy, ctx):
    assert working_context(toy, 10, ctx) is ctx
    assert working_context(toy, 100, ctx).bits == 209
    assert table_length(toy, 10) == 50


def test_float_table_gives_the_same_index(toy, ctx):
    table = generate_coefficients(toy, 40, ctx, exact=False)
    assert least_term_index(table, 10, ctx) == 9


def test_accumulation_order_does_not_matter(toy_table, ctx):
    mp = ctx.mp
    terms = series_terms(toy_table, 20, 19, ctx)
    reference = truncated_sum(toy_table, 20, 19, ctx)
    for seed in range(3):
        shuffled = list(terms)
        random.Random(seed).shuffle(shuffled)
        total = ctx.mpc(0)
        for term in shuffled:
            total += term
        assert abs(total - reference) <= mp.ldexp(1, -ctx.guard_bits) * abs(reference)


def test_nonzero_connection_constant_outgrows_the_least_term(toy, ctx):
    near = truncation_error(toy, 100, ctx=ctx, homogeneous_shift=1)
    far = truncation_error(toy, 400, ctx=ctx, homogeneous_shift=1)
    assert far.ratio > 5
    assert far.ratio > near.ratio
