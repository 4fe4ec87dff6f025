"""Taylor-method ODE integration."""

import pytest

from src.core.numerics import LinearODE, taylor_step, integrate_path
from src.utils.exceptions import IntegrationNonConvergenceError


def test_exponential_decay(ctx):
    ode = LinearODE([[1], [1]])
    (y,) = integrate_path(ode, [0, 3], [1], ctx)
    assert abs(y - ctx.mp.exp(-3)) < ctx.tolerance


def test_oscillator_is_path_independent(ctx):
    mp = ctx.mp
    ode = LinearODE([[1], [0], [1]])
    direct = integrate_path(ode, [0, 2], [0, 1], ctx)
    detour = integrate_path(ode, [0, 1 + 1j, 2], [0, 1], ctx)
    assert abs(direct[0] - mp.sin(2)) < ctx.tolerance
    assert abs(direct[1] - mp.cos(2)) < ctx.tolerance
    assert abs(detour[0] - direct[0]) < ctx.tolerance


def test_inhomogeneous_equation(ctx):
    # y' = 1 with y(0) = 0
    ode = LinearODE([[0], [1]], rhs=[1])
    (y,) = integrate_path(ode, [0, 2.5], [0], ctx)
    assert abs(y - 2.5) < ctx.tolerance


def test_single_step_matches_path(ctx):
    ode = LinearODE([[1], [1]])
    (y,) = taylor_step(ode, 0, [1], 0.5, ctx)
    assert abs(y - ctx.mp.exp(-0.5)) < ctx.tolerance


def test_singularities_of_leading_coefficient():
    ode = LinearODE([[1], [0, 1]])
    assert ode.order == 1
    assert ode.distance_to_singularity(3) == pytest.approx(3)


def test_step_from_singular_point(ctx):
    ode = LinearODE([[1], [0, 1]])
    with pytest.raises(IntegrationNonConvergenceError):
        taylor_step(ode, 0, [1], 0.1, ctx)


def test_operator_validation():
    with pytest.raises(ValueError):
        LinearODE([[1]])
    with pytest.raises(ValueError):
        LinearODE([[1], [0]])
