"""Complex Gamma and erf."""

import pytest

from src.core.numerics import gamma_complex, reciprocal_gamma, log_gamma_complex, erf_complex
from src.utils.exceptions import GammaPoleError


def test_gamma_at_integers(ctx):
    assert gamma_complex(5, ctx) == 24
    assert gamma_complex(1, ctx) == 1


def test_gamma_half_squared_is_pi(ctx):
    value = gamma_complex(0.5, ctx) ** 2
    assert abs(value - ctx.mp.pi) < ctx.tolerance


def test_gamma_reflection_off_axis(ctx):
    mp = ctx.mp
    z = ctx.mpc(0.3 + 2.5j)
    lhs = gamma_complex(z, ctx) * gamma_complex(1 - z, ctx)
    rhs = mp.pi / mp.sin(mp.pi * z)
    assert abs(lhs - rhs) < ctx.tolerance * abs(rhs)


@pytest.mark.parametrize("z", [0, -1, -7])
def test_gamma_poles_raise(ctx, z):
    with pytest.raises(GammaPoleError):
        gamma_complex(z, ctx)
    with pytest.raises(GammaPoleError):
        log_gamma_complex(z, ctx)


def test_reciprocal_gamma_vanishes_at_poles(ctx):
    assert reciprocal_gamma(-3, ctx) == 0
    assert abs(reciprocal_gamma(4, ctx) - ctx.mpf(1) / 6) < ctx.epsilon


def test_log_gamma_of_large_argument(ctx):
    mp = ctx.mp
    value = log_gamma_complex(400, ctx)
    assert abs(value - mp.log(mp.factorial(399))) < ctx.tolerance * abs(value)


def test_erf_is_odd_and_tends_to_one(ctx):
    z = ctx.mpc(1.2 + 0.7j)
    assert abs(erf_complex(-z, ctx) + erf_complex(z, ctx)) < ctx.tolerance
    assert erf_complex(0, ctx) == 0
    assert abs(erf_complex(6, ctx) - 1) < 1e-15


@pytest.mark.parametrize("radius", [3.9, 4.1])
def test_erf_continuous_across_switchover(ctx, radius):
    mp = ctx.mp
    z = ctx.mpf(radius)
    reference = 1 - mp.erfc(z)
    assert abs(erf_complex(z, ctx) - reference) < ctx.tolerance
