"""Coefficient generation."""

from fractions import Fraction
import math

import pytest

from src.core.equations import build_catalog_equation, generate_coefficients, scaled_coefficients
from src.utils.exceptions import InsufficientDataError

P1_FORCING = Fraction(392, 1875)


def test_toy_coefficients_are_factorials(toy_table):
    assert toy_table.exact
    assert all(toy_table[k] == math.factorial(k) for k in range(toy_table.K + 1))


def test_airy_recurrence(airy_table):
    assert airy_table[0] == 1
    assert airy_table[1] == Fraction(5, 72)
    for k in range(1, 10):
        ratio = Fraction((6 * k + 1) * (6 * k + 5), 72 * (k + 1))
        assert airy_table[k + 1] == ratio * airy_table[k]


def test_painleve1_even_series(painleve1):
    table = generate_coefficients(painleve1, 12)
    assert all(table[k] == 0 for k in range(1, 13, 2))
    assert table[4] == -P1_FORCING
    assert table[6] == 16 * table[4]
    assert table.parity == 2


def test_resonant_coefficients():
    table = generate_coefficients(build_catalog_equation("resonant", {"m": 1}), 6)
    assert list(table.values[:4]) == [0, 1, 1, 1]


def test_degenerate_resonant_case_is_factorial():
    table = generate_coefficients(build_catalog_equation("resonant", {"m": 0}), 30)
    assert all(table[k] == math.factorial(k) for k in range(1, 31))


def test_scaled_coefficients_recurrence():
    m = Fraction(3, 2)
    table = generate_coefficients(build_catalog_equation("resonant", {"m": m}), 60)
    b = scaled_coefficients(table)
    assert b[1] == 1
    for k in range(2, 60):
        assert b[k + 1] == (2 - m ** 2 / k) * b[k] - b[k - 1]


def test_float_table_matches_exact(toy, ctx):
    table = generate_coefficients(toy, 25, ctx, exact=False)
    assert not table.exact
    assert table.precision_metadata() == {"exact": False, "bits": 128, "guard_bits": 64}
    assert table[25] == math.factorial(25)


def test_argument_validation(toy, ctx):
    with pytest.raises(InsufficientDataError):
        generate_coefficients(toy, 1)
    with pytest.raises(ValueError):
        generate_coefficients(toy, 10, exact=False)


def test_terms(toy_table, ctx):
    assert abs(toy_table.term(3, 2, ctx) - ctx.mpf(6) / 16) < ctx.epsilon
    assert abs(toy_table.abs_term(3, 2j, ctx) - ctx.mpf(6) / 16) < ctx.epsilon
    assert toy_table.power(3) == 4
    assert len(toy_table.in_context(ctx)) == toy_table.K + 1
    assert abs(toy_table.term(toy_table.K, 10, ctx)) > 0
