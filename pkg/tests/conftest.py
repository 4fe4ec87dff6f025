"""Shared fixtures: precision contexts, catalog equations and coefficient tables."""

import pytest

from src.core.numerics import PrecisionContext
from src.core.equations import build_catalog_equation, generate_coefficients


@pytest.fixture
def ctx():
    return PrecisionContext(bits=128, guard_bits=64)


@pytest.fixture
def ctx256():
    return PrecisionContext(bits=256, guard_bits=64)


@pytest.fixture
def toy():
    return build_catalog_equation("toy")


@pytest.fixture
def airy():
    return build_catalog_equation("airy")


@pytest.fixture
def painleve1():
    return build_catalog_equation("painleve1")


@pytest.fixture
def resonant_one():
    return build_catalog_equation("resonant", {"m": 1})


@pytest.fixture
def toy_table(toy):
    return generate_coefficients(toy, 80)


@pytest.fixture
def airy_table(airy):
    return generate_coefficients(airy, 80)
