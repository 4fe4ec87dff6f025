"""Validity checks."""

import pytest

from src.core.equations import (
    build_catalog_equation, check_nonresonance, check_prepared, check_ode_residual, equation_from_dict
)
from src.core.equations.checks import half_planes

GEOMETRIC = {
    "lambdas": [1],
    "betas": ["1/2"],
    "seeds": [1],
    "recurrence": [{"shift": 0, "coefficients": [1]}],
}


def test_opposite_eigenvalues_are_nonresonant(ctx):
    report = check_nonresonance([1, -1], 6, ctx)
    assert report.passed
    assert len(report.details["half_planes"]) == 2


def test_repeated_eigenvalue_is_resonant(ctx):
    report = check_nonresonance([1, 1], 4, ctx)
    assert not report
    relations = [w["relation"] for w in report.witnesses if w["condition"] == 1]
    assert {"lambda_1": 1, "lambda_2": -1} in relations


def test_integer_multiple_breaks_both_conditions(ctx):
    report = check_nonresonance([1, 2], 3, ctx)
    conditions = {w["condition"] for w in report.witnesses}
    assert conditions == {1, 2}


def test_bound_must_be_positive(ctx):
    with pytest.raises(ValueError):
        check_nonresonance([1], 0, ctx)


def test_half_planes_cover_each_subset():
    assert len(half_planes([1, 1j])) == 3


def test_catalog_equations_are_prepared(toy, airy):
    assert check_prepared(toy).passed
    report = check_prepared(airy, xi=0.0)
    assert report.passed
    assert report.details["n6"]["selected"] == [0]
    assert report.details["n6"]["excluded"] == [1]


def test_positive_exponent_fails_normalization():
    report = check_prepared(equation_from_dict(GEOMETRIC))
    assert not report.passed
    assert report.details["n4"] is False
    assert report.details["n3"] is True


def test_ode_residual_of_toy(toy):
    report = check_ode_residual(toy)
    assert report.passed
    assert report.details["leading_power"] == "-9"


@pytest.mark.parametrize("name", ["airy", "painleve1"])
def test_ode_residual_of_catalog(name):
    assert check_ode_residual(build_catalog_equation(name)).passed


def test_ode_residual_without_operator():
    report = check_ode_residual(equation_from_dict(GEOMETRIC))
    assert not report.passed
    assert "no residual operator" in report.witnesses[0]["reason"]
