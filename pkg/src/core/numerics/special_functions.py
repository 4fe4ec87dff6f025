"""
Special Functions

Complex Gamma and error function at the precision of a PrecisionContext.
Late-term inversion evaluates Gamma(r - beta' + 1) for r up to several
hundred, and Berry scans evaluate erf on |Omega| <= 4.
"""

from .precision import PrecisionContext, Number
from ...utils.exceptions import GammaPoleError

ERF_SWITCHOVER_RADIUS = 4


def _is_nonpositive_integer(ctx: PrecisionContext, z) -> bool:
    if ctx.mp.im(z) != 0:
        return False
    re = ctx.mp.re(z)
    return re <= 0 and ctx.mp.isint(re)


def gamma_complex(z: Number, ctx: PrecisionContext):
    """
    Gamma function of a complex argument.

    Args:
        z: Argument (not a nonpositive integer)
        ctx: Precision context

    Returns:
        Gamma(z) as a context number

    Raises:
        GammaPoleError: At z = 0, -1, -2, ...
    """
    z = ctx.convert(z)
    if _is_nonpositive_integer(ctx, z):
        raise GammaPoleError(f"Gamma has a pole at z = {ctx.mp.nstr(z, 8)}")
    return ctx.mp.gamma(z)


def reciprocal_gamma(z: Number, ctx: PrecisionContext):
    """1/Gamma(z); entire, zero at the poles of Gamma."""
    return ctx.mp.rgamma(ctx.convert(z))


def log_gamma_complex(z: Number, ctx: PrecisionContext):
    """Principal log-Gamma, used where Gamma itself would overflow a float grid."""
    z = ctx.convert(z)
    if _is_nonpositive_integer(ctx, z):
        raise GammaPoleError(f"log-Gamma has a pole at z = {ctx.mp.nstr(z, 8)}")
    return ctx.mp.loggamma(z)


def erf_complex(z: Number, ctx: PrecisionContext):
    """
    Error function erf(z) = 2/sqrt(pi) * integral_0^z exp(-t^2) dt.

    mpmath sums the Maclaurin series inside ERF_SWITCHOVER_RADIUS and
    switches to its continued-fraction / asymptotic forms beyond.

    Args:
        z: Complex argument
        ctx: Precision context

    Returns:
        erf(z)
    """
    return ctx.mp.erf(ctx.convert(z))
