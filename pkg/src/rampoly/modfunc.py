"""q-series evaluation of the j-invariant and of Ramanujan's t_n."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath
from mpmath import mpc, mpf

from .errors import DomainError
from .numerics import GUARD_BITS, PrecisionContext
from .quadform import check_n


@dataclass(frozen=True)
class SeriesBudget:
    """Truncation length for a q-series so the dropped tail is below 2**-bits."""

    terms: int
    ctx: PrecisionContext

    def __post_init__(self):
        if self.terms < 1:
            raise ValueError("series needs at least one term")

    @classmethod
    def for_modulus(cls, abs_q, ctx: PrecisionContext, extra_bits: int = 0) -> "SeriesBudget":
        """Smallest N with |q|**N < 2**-(bits + 16 + extra_bits)."""
        if not 0 < abs_q < 1:
            raise DomainError(f"|q| must lie in (0, 1), got {mpmath.nstr(abs_q, 8)}")
        with mpmath.workprec(64):
            per_term = -float(mpmath.log(abs_q, 2))
        target = ctx.bits + GUARD_BITS + extra_bits
        return cls(terms=max(1, math.ceil(target / per_term) + 1), ctx=ctx)


def ramanujan_f(y, ctx: PrecisionContext):
    """``f(y) = prod_{k>=1} (1 - (-y)**k)`` for 0 < y < 1.

    This is Ramanujan's f with ``f(-q) = prod (1 - q**k)``.
    """
    if not 0 < y < 1:
        raise DomainError(f"ramanujan_f needs 0 < y < 1, got {mpmath.nstr(y, 8)}")
    budget = SeriesBudget.for_modulus(y, ctx, extra_bits=8)
    with ctx.workprec(8):
        neg = -mpf(y)
        term = mpf(1)
        prod = mpf(1)
        for _ in range(budget.terms):
            term *= neg
            prod *= 1 - term
    with ctx.workprec():
        return +prod


def t_value(n: int, ctx: PrecisionContext):
    """t_n = sqrt(3) q^(1/18) f(q^(1/3)) f(q^3) / f(q)^2 with q = exp(-pi sqrt(n))."""
    check_n(n)
    # q_n is tiny (~exp(-pi*sqrt(n))), so work in relative precision throughout
    with ctx.workprec(16):
        log_q = -mpmath.pi * mpmath.sqrt(n)
        q = mpmath.exp(log_q)
        q_cube_root = mpmath.exp(log_q / 3)
        q_cubed = mpmath.exp(3 * log_q)
        inner = PrecisionContext(ctx.bits + 16)
        t = (
            mpmath.sqrt(3)
            * mpmath.exp(log_q / 18)
            * ramanujan_f(q_cube_root, inner)
            * ramanujan_f(q_cubed, inner)
            / ramanujan_f(q, inner) ** 2
        )
    with ctx.workprec():
        return +t


@lru_cache(maxsize=8)
def _divisor_power_sums(terms: int) -> tuple[list[int], list[int]]:
    sigma3 = [0] * (terms + 1)
    sigma5 = [0] * (terms + 1)
    for d in range(1, terms + 1):
        d3, d5 = d**3, d**5
        for m in range(d, terms + 1, d):
            sigma3[m] += d3
            sigma5[m] += d5
    return sigma3, sigma5


def eisenstein_e4_e6(q, terms: int) -> tuple:
    """E4 and E6 from their divisor-sum q-expansions, at the current precision."""
    sigma3, sigma5 = _divisor_power_sums(terms)
    # Horner from the top
    s4 = mpc(0)
    s6 = mpc(0)
    for k in range(terms, 0, -1):
        s4 = (s4 + sigma3[k]) * q
        s6 = (s6 + sigma5[k]) * q
    return 1 + 240 * s4, 1 - 504 * s6


def j_invariant(tau, ctx: PrecisionContext):
    """j(tau) = 1728 E4^3 / (E4^3 - E6^2), with q = exp(2 pi i tau)."""
    tau = mpmath.mpmathify(tau)
    if mpmath.im(tau) <= 0:
        raise DomainError("j_invariant needs tau in the upper half-plane")
    # E4^3 - E6^2 = 1728 q + ..., so the subtraction cancels about
    # log2(1/|q|) bits; carry them as extra precision.
    with mpmath.workprec(64):
        lost = math.ceil(float(2 * mpmath.pi * mpmath.im(tau) / mpmath.log(2)))
    extra = lost + 16
    with ctx.workprec(extra):
        q = mpmath.exp(2j * mpmath.pi * mpc(tau))
        budget = SeriesBudget.for_modulus(abs(q), ctx, extra_bits=extra)
        e4, e6 = eisenstein_e4_e6(q, budget.terms)
        e4_cubed = e4**3
        j = 1728 * e4_cubed / (e4_cubed - e6**2)
    with ctx.workprec():
        return +j


def transform_t_to_j(t, ctx: PrecisionContext | None = None):
    """(t^6 - 27 t^-6 - 6)^3: maps a root of P_n to a root of H_n.

    Exact for ints and Fractions; for mpmath values it runs at ``ctx``.
    """
    if t == 0:
        raise ZeroDivisionError("transform_t_to_j is undefined at t = 0")
    if isinstance(t, (mpf, mpc)):
        if ctx is None:
            raise ValueError("a precision context is needed for approximate t")
        with ctx.workprec(16):
            t6 = t**6
            val = (t6 - 27 / t6 - 6) ** 3
        with ctx.workprec():
            return +val
    t6 = Fraction(t) ** 6
    val = (t6 - 27 / t6 - 6) ** 3
    return int(val) if val.denominator == 1 else val
