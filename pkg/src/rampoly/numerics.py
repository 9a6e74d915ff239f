"""Arbitrary-precision real and complex arithmetic.

Everything numeric in the package runs through a :class:`PrecisionContext`.
Values are plain ``mpmath.mpf`` / ``mpmath.mpc`` objects; the context decides
at what precision they are produced.

Error budget: every primitive below runs at ``bits + GUARD_BITS`` binary
digits, so a result returned by one call has relative error at most
``2**(-bits)`` for short operation chains (up to roughly 2**16 chained
roundings).  Code that performs long chains (series, products) must either
stay inside :meth:`PrecisionContext.workprec` for the whole chain or add its
own extra bits, as the modular-function evaluators do.

Note that mpmath arithmetic performed *outside* a ``workprec`` block rounds to
the global default (53 bits).  Keep chains inside the context.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
from mpmath import mpc, mpf

from .errors import DomainError, ResidualError

GUARD_BITS = 16
MIN_BITS = 64

ApproxReal = mpf
ApproxComplex = mpc


@dataclass(frozen=True)
class PrecisionContext:
    """Working precision in bits; results carry ``GUARD_BITS`` extra bits."""

    bits: int

    def __post_init__(self):
        if not isinstance(self.bits, int) or self.bits < MIN_BITS:
            raise ValueError(f"precision must be an integer >= {MIN_BITS} bits, got {self.bits!r}")

    @classmethod
    def from_digits(cls, digits: int) -> "PrecisionContext":
        return cls(max(MIN_BITS, math.ceil(digits * math.log2(10))))

    @property
    def digits(self) -> int:
        return int(self.bits * math.log10(2))

    @property
    def eps(self) -> mpf:
        with self.workprec():
            return mpmath.ldexp(mpf(1), -self.bits)

    def workprec(self, extra: int = 0):
        return mpmath.workprec(self.bits + GUARD_BITS + extra)

    def doubled(self) -> "PrecisionContext":
        return PrecisionContext(2 * self.bits)


def const_pi(ctx: PrecisionContext) -> mpf:
    with ctx.workprec():
        return +mpmath.pi


def to_real(x, ctx: PrecisionContext) -> mpf:
    """Convert an int, Fraction, str or mpf to an ``mpf`` at context precision."""
    with ctx.workprec():
        if hasattr(x, "numerator") and not isinstance(x, int):
            return mpf(x.numerator) / x.denominator
        return mpf(x)


def to_complex(re, im, ctx: PrecisionContext) -> mpc:
    with ctx.workprec():
        return mpc(re, im)


def add(x, y, ctx):
    with ctx.workprec():
        return x + y


def sub(x, y, ctx):
    with ctx.workprec():
        return x - y


def mul(x, y, ctx):
    with ctx.workprec():
        return x * y


def div(x, y, ctx):
    if y == 0:
        raise ZeroDivisionError("division by zero")
    with ctx.workprec():
        return x / y


def powi(x, k: int, ctx):
    with ctx.workprec():
        return x ** int(k)


def exp_real(x, ctx: PrecisionContext) -> mpf:
    with ctx.workprec():
        return mpmath.exp(mpf(x))


def exp_complex(z, ctx: PrecisionContext) -> mpc:
    with ctx.workprec():
        return mpmath.exp(mpc(z))


def log_pos(x, ctx: PrecisionContext) -> mpf:
    if x <= 0:
        raise DomainError(f"log of non-positive value {x}")
    with ctx.workprec():
        return mpmath.log(mpf(x))


def sqrt_pos(x, ctx: PrecisionContext) -> mpf:
    if x < 0:
        raise DomainError(f"sqrt_pos of negative value {mpmath.nstr(x, 10)}")
    with ctx.workprec():
        return mpmath.sqrt(mpf(x))


def pow_pos(x, e, ctx: PrecisionContext) -> mpf:
    """``x**e`` for positive real ``x``, via exp/log so no branch is involved."""
    if x <= 0:
        raise DomainError("pow_pos needs a positive base")
    with ctx.workprec():
        return mpmath.exp(mpf(e) * mpmath.log(mpf(x)))


def re(z) -> mpf:
    return mpmath.re(z)


def im(z) -> mpf:
    return mpmath.im(z)


def conj(z):
    return mpmath.conj(z)


def absval(z, ctx: PrecisionContext) -> mpf:
    with ctx.workprec():
        return abs(z)


def round_to_integer(x, tol) -> int:
    """Return the integer nearest to ``x``.

    Raises :class:`ResidualError` when ``|x - m| > tol`` so callers can retry
    at higher precision.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    x = mpmath.mpmathify(x)
    if isinstance(x, mpc):
        x = x.real
    if not mpmath.isfinite(x):
        raise ResidualError(f"cannot round non-finite value {x}")
    # int() truncates exactly; mpmath.nint would round to the global precision
    m = int(x)
    frac = mpmath.fsub(x, m, exact=True)
    if frac > 0.5:
        m += 1
    elif frac < -0.5:
        m -= 1
    residual = abs(mpmath.fsub(x, m, exact=True))
    if residual > tol:
        raise ResidualError(
            f"value is {mpmath.nstr(residual, 5)} away from the nearest integer {m} (tol {mpmath.nstr(mpf(tol), 5)})",
            residual=residual,
        )
    return m
