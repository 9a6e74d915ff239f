"""Exact LLL reduction and integer-relation (algdep) search.

The reduction is the all-integer variant of LLL (Cohen, Algorithm 2.6.7): the
Gram-Schmidt data are kept as integer numerators over the leading principal
Gram minors, so no rounding ever happens.  Dimensions here stay below ~20.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath

from .errors import NeedsMorePrecisionError, RankError
from .numerics import GUARD_BITS, PrecisionContext
from .polyz import IntPolynomial

DEFAULT_DELTA = Fraction(99, 100)


def _dot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(u, v))


@dataclass(frozen=True)
class IntegerLattice:
    """Row basis plus the unimodular matrix taking the input basis to it."""

    basis: tuple[tuple[int, ...], ...]
    transform: tuple[tuple[int, ...], ...] = field(default=(), compare=False)

    @classmethod
    def from_rows(cls, rows) -> "IntegerLattice":
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if rows and len({len(r) for r in rows}) != 1:
            raise ValueError("lattice rows must have equal length")
        eye = tuple(tuple(int(i == j) for j in range(len(rows))) for i in range(len(rows)))
        return cls(rows, eye)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def gram_determinant(self) -> int:
        return gram_schmidt(self.basis)[1][-1] if self.basis else 1


def gram_schmidt(rows) -> tuple[list[list[Fraction]], list[int]]:
    """Exact Gram-Schmidt data: ``mu`` coefficients and the Gram minors ``d_i``.

    ``d[i]`` is the determinant of the Gram matrix of the first i+1 rows, so
    the squared Gram-Schmidt norms are ``d[i] / d[i-1]``.
    """
    k = len(rows)
    gram = [[Fraction(_dot(rows[i], rows[j])) for j in range(k)] for i in range(k)]
    mu = [[Fraction(0)] * k for _ in range(k)]
    bstar = [Fraction(0)] * k
    for i in range(k):
        for j in range(i):
            s = gram[i][j] - sum(mu[j][m] * mu[i][m] * bstar[m] for m in range(j))
            mu[i][j] = s / bstar[j]
        bstar[i] = gram[i][i] - sum(mu[i][m] ** 2 * bstar[m] for m in range(i))
        if bstar[i] == 0:
            raise RankError("lattice rows are linearly dependent")
    d, acc = [], Fraction(1)
    for b in bstar:
        acc *= b
        d.append(int(acc))
    return mu, d


def is_lll_reduced(rows, delta: Fraction = DEFAULT_DELTA) -> bool:
    """Size reduction and the Lovász condition, checked from exact GS data."""
    mu, d = gram_schmidt(rows)
    bstar = [Fraction(d[0])] + [Fraction(d[i], d[i - 1]) for i in range(1, len(d))]
    for i in range(len(rows)):
        for j in range(i):
            if abs(mu[i][j]) > Fraction(1, 2):
                return False
    for k in range(1, len(rows)):
        if bstar[k] < (delta - mu[k][k - 1] ** 2) * bstar[k - 1]:
            return False
    return True


def _round_div(a: int, b: int) -> int:
    """Nearest integer to a/b for b > 0, ties away from zero."""
    q, r = divmod(2 * a + b, 2 * b)
    return q


def lll_reduce(lattice, delta: Fraction | float = DEFAULT_DELTA) -> IntegerLattice:
    """LLL-reduce a basis of linearly independent integer rows."""
    if not isinstance(lattice, IntegerLattice):
        lattice = IntegerLattice.from_rows(lattice)
    delta = Fraction(delta).limit_denominator(10**6)
    if not Fraction(1, 4) < delta < 1:
        raise ValueError("delta must lie strictly between 1/4 and 1")
    p, q = delta.numerator, delta.denominator

    n = lattice.rank
    b = [None] + [list(r) for r in lattice.basis]
    H = [None] + [list(r) for r in lattice.transform]
    if n == 0:
        return lattice
    d = [0] * (n + 1)
    d[0] = 1
    lam = [[0] * (n + 1) for _ in range(n + 1)]

    def redi(k, l):
        if 2 * abs(lam[k][l]) > d[l]:
            r = _round_div(lam[k][l], d[l])
            bl, Hl = b[l], H[l]
            b[k] = [x - r * y for x, y in zip(b[k], bl)]
            H[k] = [x - r * y for x, y in zip(H[k], Hl)]
            lam[k][l] -= r * d[l]
            for i in range(1, l):
                lam[k][i] -= r * lam[l][i]

    def swapi(k, kmax):
        b[k], b[k - 1] = b[k - 1], b[k]
        H[k], H[k - 1] = H[k - 1], H[k]
        for j in range(1, k - 1):
            lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
        lk = lam[k][k - 1]
        B = (d[k - 2] * d[k] + lk * lk) // d[k - 1]
        for i in range(k + 1, kmax + 1):
            t = lam[i][k]
            lam[i][k] = (d[k] * lam[i][k - 1] - lk * t) // d[k - 1]
            lam[i][k - 1] = (B * t + lk * lam[i][k]) // d[k]
        d[k - 1] = B

    d[1] = _dot(b[1], b[1])
    if d[1] == 0:
        raise RankError("lattice rows are linearly dependent")
    k, kmax = 2, 1
    while k <= n:
        if k > kmax:
            kmax = k
            for j in range(1, k + 1):
                u = _dot(b[k], b[j])
                for i in range(1, j):
                    u = (d[i] * u - lam[k][i] * lam[j][i]) // d[i - 1]
                if j < k:
                    lam[k][j] = u
                else:
                    d[k] = u
            if d[k] == 0:
                raise RankError("lattice rows are linearly dependent")
        while True:
            redi(k, k - 1)
            lk = lam[k][k - 1]
            if q * d[k] * d[k - 2] < p * d[k - 1] * d[k - 1] - q * lk * lk:
                swapi(k, kmax)
                k = max(2, k - 1)
            else:
                for l in range(k - 2, 0, -1):
                    redi(k, l)
                k += 1
                break
    return IntegerLattice(tuple(tuple(r) for r in b[1:]), tuple(tuple(r) for r in H[1:]))


def _relation_at_degree(x, degree: int, ctx: PrecisionContext) -> IntPolynomial:
    scale_bits = ctx.bits - GUARD_BITS
    with ctx.workprec():
        xm = mpmath.mpf(x)
        scale = mpmath.ldexp(mpmath.mpf(1), scale_bits)
        powers, acc = [], mpmath.mpf(1)
        for _ in range(degree + 1):
            powers.append(int(mpmath.nint(scale * acc)))
            acc *= xm
    rows = []
    for i in range(degree + 1):
        row = [0] * (degree + 2)
        row[i] = 1
        row[-1] = powers[i]
        rows.append(row)
    reduced = lll_reduce(rows)
    vec = reduced.basis[0]
    poly = IntPolynomial(vec[:-1])
    if poly.degree < 1:
        raise NeedsMorePrecisionError(f"no relation of degree {degree} at {ctx.bits} bits")
    # a genuine relation is far shorter than a generic lattice vector (~2**(scale_bits/(degree+1)))
    norm_bits = 0.5 * math.log2(max(1, _dot(vec, vec)))
    if norm_bits > scale_bits / (2 * (degree + 1)):
        raise NeedsMorePrecisionError(
            f"no small relation of degree {degree} at {ctx.bits} bits (vector has {norm_bits:.1f} bits)"
        )
    poly = poly.primitive_part()
    residual = abs(poly.evaluate_approx(xm, ctx))
    with ctx.workprec():
        if residual >= mpmath.ldexp(mpmath.mpf(1), -(ctx.bits // 2)):
            raise NeedsMorePrecisionError(f"relation residual {mpmath.nstr(residual, 5)} too large")
    return poly


def algdep(x, degree: int, ctx: PrecisionContext, *, min_degree: int = 1) -> IntPolynomial:
    """Smallest-degree integer polynomial (degree in [min_degree, degree]) vanishing at ``x``.

    The result is primitive with positive leading coefficient.  Raises
    :class:`NeedsMorePrecisionError` when no convincing relation exists at
    this precision; the caller should double ``ctx.bits`` and retry.
    """
    if degree < 1:
        raise ValueError("degree must be at least 1")
    for k in range(max(1, min_degree), degree + 1):
        try:
            return _relation_at_degree(x, k, ctx)
        except NeedsMorePrecisionError:
            continue
    raise NeedsMorePrecisionError(
        f"no integer relation of degree {min_degree}..{degree} found at {ctx.bits} bits"
    )
