"""Construction of H_n from CM values and of P_n from t_n.

H_n is assembled as a product of linear factors ``x - j(tau_Q)`` over the
reduced forms Q and rounded to integers.  P_n is recovered from a
high-precision value of t_n by integer-relation search and then certified
against H_n through the map ``t -> (t^6 - 27 t^-6 - 6)^3``.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache

import mpmath

from . import modfunc
from .errors import (
    InconsistencyError,
    NeedsMorePrecisionError,
    PrecisionExhaustedError,
    ResidualError,
    VerificationFailure,
)
from .lattice import algdep
from .numerics import PrecisionContext, round_to_integer
from .polyz import IntPolynomial
from .quadform import check_n, class_group, cm_point

log = logging.getLogger(__name__)

HILBERT = "hilbert"
RAMANUJAN = "ramanujan"
MAX_BITS = 2**16
ROUNDING_TOL = 0.25


@dataclass(frozen=True)
class ClassPolynomialResult:
    n: int
    kind: str
    polynomial: IntPolynomial
    bits: int
    verified: bool
    residuals: dict = field(default_factory=dict, compare=False)

    @property
    def degree(self) -> int:
        return self.polynomial.degree


def estimate_bits_hilbert(n: int) -> int:
    """Precision for H_n: size of its largest coefficient plus slack."""
    forms = class_group(n).elements
    total = sum(1.0 / f.a for f in forms)
    return math.ceil(math.pi * math.sqrt(n) * total / math.log(2)) + 32 * len(forms) + 128


def initial_bits_ramanujan(n: int) -> int:
    h = class_group(n).h
    return max(192, math.ceil(10 * h * math.log2(10)))


def _poly_product(factors: list[list]) -> list:
    """Balanced product tree over coefficient lists (ascending powers)."""
    while len(factors) > 1:
        nxt = []
        for i in range(0, len(factors) - 1, 2):
            a, b = factors[i], factors[i + 1]
            out = [0] * (len(a) + len(b) - 1)
            for x, ca in enumerate(a):
                for y, cb in enumerate(b):
                    out[x + y] += ca * cb
            nxt.append(out)
        if len(factors) % 2:
            nxt.append(factors[-1])
        factors = nxt
    return factors[0]


def cm_j_values(n: int, ctx: PrecisionContext) -> list:
    """j(tau_Q) for every reduced form Q, in (a, b) order."""
    group = class_group(n)
    return [modfunc.j_invariant(cm_point(f, ctx).tau, ctx) for f in group.elements]


def hilbert_at_precision(n: int, ctx: PrecisionContext) -> ClassPolynomialResult:
    check_n(n)
    roots = cm_j_values(n, ctx)
    with ctx.workprec():
        coeffs = _poly_product([[-r, mpmath.mpf(1)] for r in roots])
    ints, worst_re, worst_im = [], 0.0, 0.0
    for c in coeffs:
        c = mpmath.mpmathify(c)
        ints.append(round_to_integer(mpmath.re(c), ROUNDING_TOL))
        worst_re = max(worst_re, float(abs(mpmath.re(c) - ints[-1])))
        worst_im = max(worst_im, float(abs(mpmath.im(c))))
    if worst_im > ROUNDING_TOL:
        raise NeedsMorePrecisionError(f"H_{n}: imaginary residual {worst_im:.3g}", residual=worst_im)
    poly = IntPolynomial(ints)
    if poly.degree != len(roots) or not poly.is_monic():
        raise InconsistencyError(f"H_{n} has degree {poly.degree}, expected monic of degree {len(roots)}")
    return ClassPolynomialResult(
        n=n,
        kind=HILBERT,
        polynomial=poly,
        bits=ctx.bits,
        verified=True,
        residuals={"rounding": worst_re, "imaginary": worst_im},
    )


_preloaded: dict[tuple[str, int], ClassPolynomialResult] = {}


def preload(result: ClassPolynomialResult) -> None:
    """Serve ``result`` for auto-precision requests (used by the on-disk cache)."""
    _preloaded[(result.kind, result.n)] = result


def fresh_result(kind: str, n: int) -> ClassPolynomialResult:
    """Auto-precision computation that ignores preloaded results."""
    return _hilbert_auto(n) if kind == HILBERT else _ramanujan_auto(n)


def clear_caches() -> None:
    _preloaded.clear()
    _hilbert_auto.cache_clear()
    _ramanujan_auto.cache_clear()


@lru_cache(maxsize=None)
def _hilbert_auto(n: int) -> ClassPolynomialResult:
    bits = estimate_bits_hilbert(n)
    while bits <= MAX_BITS:
        try:
            return hilbert_at_precision(n, PrecisionContext(bits))
        except ResidualError as exc:
            log.info("H_%d at %d bits: %s; doubling", n, bits, exc)
            bits *= 2
    raise PrecisionExhaustedError(f"H_{n}: no clean rounding below {MAX_BITS} bits")


def hilbert_class_poly(n: int, ctx: PrecisionContext | None = None) -> ClassPolynomialResult:
    """H_n; with ``ctx=None`` the precision is chosen and raised automatically."""
    check_n(n)
    if ctx is None:
        return _preloaded.get((HILBERT, n)) or _hilbert_auto(n)
    return hilbert_at_precision(n, ctx)


@dataclass(frozen=True)
class RamanujanCheck:
    """Outcome of the four certificate clauses for a candidate P_n."""

    degree_ok: bool
    constant_ok: bool
    roots_map_ok: bool
    t_root_ok: bool
    worst_root_residual: float
    t_residual: float

    @property
    def failed(self) -> list[str]:
        names = ("degree", "constant term", "root transform", "t_n root")
        flags = (self.degree_ok, self.constant_ok, self.roots_map_ok, self.t_root_ok)
        return [name for name, ok in zip(names, flags) if not ok]

    @property
    def passed(self) -> bool:
        return not self.failed


def _relative_residual(poly: IntPolynomial, z, ctx: PrecisionContext):
    with ctx.workprec():
        value = mpmath.mpf(0)
        scale = mpmath.mpf(0)
        az = abs(z)
        for c in reversed(poly.coeffs):
            value = value * z + c
            scale = scale * az + abs(c)
        return abs(value) / scale


def verify_ramanujan_poly(
    poly: IntPolynomial,
    n: int,
    ctx: PrecisionContext,
    hilbert: IntPolynomial | None = None,
    *,
    raise_on_failure: bool = True,
) -> RamanujanCheck:
    """Certify a candidate P_n against H_n and t_n.

    Clauses: degree equals h_n; constant term is +-1; every complex root r of
    the candidate maps under (r^6 - 27 r^-6 - 6)^3 to a root of H_n; t_n is a
    root.
    """
    check_n(n)
    h = class_group(n).h
    if hilbert is None:
        hilbert = hilbert_class_poly(n).polynomial
    degree_ok = poly.degree == h
    constant_ok = abs(poly[0]) == 1

    # H_n coefficients reach ~|j|^h; give the transformed roots enough headroom
    big = max(abs(c) for c in hilbert.coeffs).bit_length()
    wide = PrecisionContext(ctx.bits + big)
    tol_roots = mpmath.mpf(10) ** (-(ctx.bits // 4))
    worst = mpmath.mpf(0)
    roots_ok = poly.degree >= 1
    if roots_ok:
        for r in poly.roots(wide):
            if r == 0:
                roots_ok = False
                continue
            image = modfunc.transform_t_to_j(r, wide)
            res = _relative_residual(hilbert, image, wide)
            worst = max(worst, res)
        roots_ok = roots_ok and worst < tol_roots

    t = modfunc.t_value(n, ctx)
    with ctx.workprec():
        t_res = _relative_residual(poly, t, ctx) if poly.degree >= 0 else mpmath.mpf(1)
        t_ok = t_res < mpmath.ldexp(mpmath.mpf(1), -(ctx.bits // 2))
    check = RamanujanCheck(
        degree_ok=degree_ok,
        constant_ok=constant_ok,
        roots_map_ok=bool(roots_ok),
        t_root_ok=bool(t_ok),
        worst_root_residual=float(worst),
        t_residual=float(t_res),
    )
    if raise_on_failure and not check.passed:
        raise VerificationFailure(
            f"candidate {poly} for P_{n} fails: {', '.join(check.failed)}", failed=check.failed
        )
    return check


def ramanujan_at_precision(n: int, ctx: PrecisionContext) -> ClassPolynomialResult:
    check_n(n)
    h = class_group(n).h
    t = modfunc.t_value(n, ctx)
    # searching from degree h-1 doubles as the minimality guard
    poly = algdep(t, h, ctx, min_degree=max(1, h - 1))
    if poly.degree != h:
        # a short vector can be a coincidence at low precision; a real relation survives doubling
        wide = ctx.doubled()
        t_wide = modfunc.t_value(n, wide)
        if _relative_residual(poly, t_wide, wide) >= mpmath.ldexp(mpmath.mpf(1), -ctx.bits):
            raise NeedsMorePrecisionError(f"degree-{poly.degree} relation for t_{n} vanishes at {wide.bits} bits")
        raise InconsistencyError(f"t_{n} satisfies a relation of degree {poly.degree} < h_n = {h}")
    if not poly.is_monic():
        raise NeedsMorePrecisionError(f"relation for t_{n} is not monic: {poly}")
    check = verify_ramanujan_poly(poly, n, ctx)
    return ClassPolynomialResult(
        n=n,
        kind=RAMANUJAN,
        polynomial=poly,
        bits=ctx.bits,
        verified=True,
        residuals={"root_transform": check.worst_root_residual, "t_root": check.t_residual},
    )


@lru_cache(maxsize=None)
def _ramanujan_auto(n: int) -> ClassPolynomialResult:
    bits = initial_bits_ramanujan(n)
    while bits <= MAX_BITS:
        try:
            return ramanujan_at_precision(n, PrecisionContext(bits))
        except NeedsMorePrecisionError as exc:
            log.info("P_%d at %d bits: %s; doubling", n, bits, exc)
            bits *= 2
    raise PrecisionExhaustedError(f"P_{n}: no verified relation below {MAX_BITS} bits")


def ramanujan_poly(n: int, ctx: PrecisionContext | None = None) -> ClassPolynomialResult:
    """P_n, the minimal polynomial of t_n, recovered and certified."""
    check_n(n)
    if ctx is None:
        return _preloaded.get((RAMANUJAN, n)) or _ramanujan_auto(n)
    return ramanujan_at_precision(n, ctx)
