"""Laplace contour quadrature."""

import cmath

import pytest

from src.core.numerics import Contour, ray_contour, indented_contour, lateral_contour, quad_laplace
from src.utils.exceptions import NonDecayingRayError


def test_contour_validation():
    with pytest.raises(ValueError):
        Contour([])
    with pytest.raises(ValueError):
        Contour([0])
    with pytest.raises(ValueError):
        Contour([1, 0.5])
    with pytest.raises(ValueError):
        Contour([0, 1], side_tags=["sideways"])


def test_indented_contour_geometry():
    contour = indented_contour([1.0], 0.0, "above")
    assert contour.vertices == [0j, 0.5, 1 + 0.5j, 1.5]
    assert contour.side_tags == ["on", "above", "above", "on"]
    assert contour.ray == 0.0


def test_indented_contour_rejects_bad_points():
    with pytest.raises(ValueError):
        indented_contour([1.0, 0.5], 0.0, "above")
    with pytest.raises(ValueError):
        indented_contour([1.0], 0.0, "left")
    with pytest.raises(ValueError):
        indented_contour([1.0], 0.0, "above", rho=1.5)


def test_lateral_contour_runs_parallel():
    contour = lateral_contour(2.0, 0.0, "below")
    assert contour.vertices == [0j, 1.0, 2 - 1j]
    assert contour.side_tags == ["on", "below", "below"]


def test_exponential_integral(ctx):
    value = quad_laplace(lambda p: ctx.mpc(1), ray_contour(), 2, ctx)
    assert abs(value - ctx.mpf(0.5)) < ctx.tolerance


def test_origin_power_mapping(ctx):
    mp = ctx.mp
    value = quad_laplace(lambda p: ctx.mpc(1), ray_contour(), 3, ctx, origin_power=0.5)
    assert abs(value - mp.sqrt(mp.pi / 3)) < ctx.tolerance


def test_rotated_ray(ctx):
    x = 4 * cmath.exp(-0.6j)
    value = quad_laplace(lambda p: ctx.mpc(1), ray_contour(0.6), x, ctx)
    assert abs(value - 1 / ctx.mpc(x)) < ctx.tolerance


def test_lateral_difference_is_the_residue(ctx):
    mp = ctx.mp

    def f(p):
        return 1 / (1 - p)

    x = 5
    above = quad_laplace(f, indented_contour([1.0], 0.0, "above"), x, ctx)
    below = quad_laplace(f, indented_contour([1.0], 0.0, "below"), x, ctx)
    expected = 2j * mp.pi * mp.exp(-x)
    assert abs(above - below - expected) < ctx.tolerance


def test_principal_value_is_the_half_sum(ctx):
    mp = ctx.mp

    def f(p):
        return 1 / (1 - p)

    x = 10
    above = quad_laplace(f, indented_contour([1.0], 0.0, "above"), x, ctx)
    below = quad_laplace(f, indented_contour([1.0], 0.0, "below"), x, ctx)
    assert abs((above + below) / 2 - mp.exp(-x) * mp.ei(x)) < ctx.tolerance


def test_non_decaying_ray(ctx):
    with pytest.raises(NonDecayingRayError):
        quad_laplace(lambda p: ctx.mpc(1), ray_contour(), -1, ctx)


def test_error_estimate_returned(ctx):
    value, err = quad_laplace(lambda p: ctx.mpc(1), ray_contour(), 2, ctx, error=True)
    assert err < ctx.tolerance
    assert abs(value - 0.5) < ctx.tolerance


@pytest.mark.parametrize("side, angle", [("above", 0.3), ("below", -0.3)])
def test_homotopic_contours_agree(ctx, side, angle):
    def f(p):
        return 1 / (1 - p)

    x = 5
    indented = quad_laplace(f, indented_contour([1.0], 0.0, side), x, ctx)
    lateral = quad_laplace(f, lateral_contour(1.0, 0.0, side), x, ctx)
    rotated = quad_laplace(f, ray_contour(angle), x, ctx)
    assert abs(indented - lateral) < 10 * ctx.tolerance
    assert abs(indented - rotated) < 10 * ctx.tolerance
