"""Exact univariate polynomials over the integers.

Coefficients are stored in ascending order of powers as Python ints, so
nothing here ever loses precision.  Resultants use the subresultant
polynomial remainder sequence; real roots are counted with Sturm sequences.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce as _fold
from typing import Iterable, Sequence

import mpmath

from .errors import DomainError
from .numerics import PrecisionContext


class IntPolynomial:
    """Immutable integer polynomial ``c[0] + c[1] z + ... + c[d] z^d``."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self._c = tuple(c)

    @classmethod
    def from_roots(cls, roots: Sequence[int]) -> "IntPolynomial":
        p = cls([1])
        for r in roots:
            p = p * cls([-r, 1])
        return p

    @classmethod
    def monomial(cls, k: int, coeff: int = 1) -> "IntPolynomial":
        return cls([0] * k + [coeff])

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self._c

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self._c) - 1

    @property
    def lc(self) -> int:
        return self._c[-1] if self._c else 0

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def __len__(self):
        return len(self._c)

    def __getitem__(self, k: int) -> int:
        return self._c[k] if 0 <= k < len(self._c) else 0

    def __eq__(self, other):
        if isinstance(other, IntPolynomial):
            return self._c == other._c
        if isinstance(other, int):
            return self._c == IntPolynomial([other])._c
        return NotImplemented

    def __hash__(self):
        return hash(self._c)

    def __repr__(self):
        return f"IntPolynomial({list(self._c)})"

    def __str__(self):
        return self.pretty()

    def pretty(self, var: str = "z") -> str:
        if not self._c:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self._c[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                mono = var if k == 1 else f"{var}^{k}"
                body = mono if mag == 1 else f"{mag}{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __neg__(self):
        return IntPolynomial(-x for x in self._c)

    def __add__(self, other):
        other = _coerce(other)
        n = max(len(self._c), len(other._c))
        return IntPolynomial(self[k] + other[k] for k in range(n))

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        if not self._c or not other._c:
            return IntPolynomial()
        out = [0] * (len(self._c) + len(other._c) - 1)
        for i, a in enumerate(self._c):
            if a:
                for j, b in enumerate(other._c):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = IntPolynomial([1])
        for _ in range(k):
            result = result * self
        return result

    def __call__(self, x):
        return self.evaluate_exact(x)

    def scale(self, k: int) -> "IntPolynomial":
        return IntPolynomial(k * x for x in self._c)

    def exact_div_scalar(self, k: int) -> "IntPolynomial":
        if any(x % k for x in self._c):
            raise ArithmeticError(f"{k} does not divide every coefficient")
        return IntPolynomial(x // k for x in self._c)

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(k * self._c[k] for k in range(1, len(self._c)))

    def evaluate_exact(self, x):
        """Horner evaluation; exact for int and Fraction arguments."""
        acc = 0
        for c in reversed(self._c):
            acc = acc * x + c
        return acc

    def evaluate_approx(self, z, ctx: PrecisionContext):
        with ctx.workprec():
            z = mpmath.mpmathify(z)
            acc = mpmath.mpf(0)
            for c in reversed(self._c):
                acc = acc * z + c
            return acc

    def content(self) -> int:
        return _fold(math.gcd, self._c, 0)

    def primitive_part(self) -> "IntPolynomial":
        g = self.content()
        if g == 0:
            return self
        if self.lc < 0:
            g = -g
        return IntPolynomial(x // g for x in self._c)

    def is_monic(self) -> bool:
        return self.lc == 1

    def reversed(self) -> "IntPolynomial":
        return IntPolynomial(reversed(self._c))

    def roots(self, ctx: PrecisionContext) -> list:
        """All complex roots at context precision, repeated by multiplicity."""
        if self.degree < 1:
            return []
        g = poly_gcd(self, self.derivative())
        if g.degree > 0:
            # p = (p/g) * g with p/g squarefree; polyroots stalls on repeated roots
            return exact_quotient(self, g).roots(ctx) + g.roots(ctx)
        with ctx.workprec():
            return mpmath.polyroots(
                list(reversed(self._c)),
                maxsteps=200 + 20 * self.degree,
                extraprec=2 * ctx.bits + 64,
            )


def _coerce(x) -> IntPolynomial:
    if isinstance(x, IntPolynomial):
        return x
    if isinstance(x, int):
        return IntPolynomial([x])
    raise TypeError(f"cannot use {type(x).__name__} as IntPolynomial")


def derivative(p: IntPolynomial) -> IntPolynomial:
    return p.derivative()


def evaluate_exact(p: IntPolynomial, x):
    return p.evaluate_exact(x)


def evaluate_approx(p: IntPolynomial, z, ctx: PrecisionContext):
    return p.evaluate_approx(z, ctx)


def pseudo_remainder(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """``lc(b)**(deg a - deg b + 1) * a`` reduced modulo ``b``."""
    if b.is_zero():
        raise ZeroDivisionError("pseudo-remainder by zero polynomial")
    r = list(a.coeffs)
    db, lb = b.degree, b.lc
    e = a.degree - db + 1
    if e <= 0:
        return a
    bc = b.coeffs
    for k in range(len(r) - 1, db - 1, -1):
        top = r[k]
        r = [x * lb for x in r]
        if top:
            shift = k - db
            for j in range(db + 1):
                r[shift + j] -= top * bc[j]
        e -= 1
        r.pop()
    if e:
        mult = lb**e
        r = [x * mult for x in r]
    return IntPolynomial(r)


def resultant(p: IntPolynomial, q: IntPolynomial) -> int:
    """Exact resultant via the subresultant PRS (Cohen, Algorithm 3.3.7)."""
    if p.is_zero() or q.is_zero():
        raise DomainError("resultant of the zero polynomial is undefined")
    a_cont, b_cont = p.content(), q.content()
    A = p.exact_div_scalar(a_cont)
    B = q.exact_div_scalar(b_cont)
    t = a_cont**q.degree * b_cont**p.degree
    s = 1
    if A.degree < B.degree:
        A, B = B, A
        if A.degree * B.degree % 2:
            s = -1
    g = h = 1
    while B.degree > 0:
        delta = A.degree - B.degree
        if A.degree % 2 and B.degree % 2:
            s = -s
        R = pseudo_remainder(A, B)
        if R.is_zero():
            return 0
        A = B
        B = R.exact_div_scalar(g * h**delta)
        g = A.lc
        if delta:
            h = g**delta // h ** (delta - 1)
    d = A.degree
    h = B.lc**d // h ** (d - 1) if d >= 1 else 1
    return s * t * h


def discriminant(p: IntPolynomial) -> int:
    """(-1)**(d(d-1)/2) * Res(p, p') / lc(p); defined as 1 for degree <= 1."""
    if p.is_zero():
        raise DomainError("discriminant of the zero polynomial is undefined")
    d = p.degree
    if d <= 1:
        return 1
    r = resultant(p, p.derivative())
    q, rem = divmod(r, p.lc)
    assert rem == 0
    return -q if (d * (d - 1) // 2) % 2 else q


def exact_quotient(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """a / b for b dividing a over Q, rescaled to a primitive integer polynomial."""
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    rem = [Fraction(c) for c in a.coeffs]
    quot = [Fraction(0)] * max(0, a.degree - b.degree + 1)
    for k in range(len(quot) - 1, -1, -1):
        q = rem[k + b.degree] / b.lc
        quot[k] = q
        for i, c in enumerate(b.coeffs):
            rem[k + i] -= q * c
    if any(rem):
        raise ValueError(f"{b} does not divide {a}")
    return _primitive_from_fractions(quot)


def _primitive_from_fractions(coeffs) -> IntPolynomial:
    den = math.lcm(*(c.denominator for c in coeffs)) if coeffs else 1
    return IntPolynomial(int(c * den) for c in coeffs).primitive_part()


def poly_gcd(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """Primitive gcd over Q, with positive leading coefficient."""
    while not b.is_zero():
        a, b = b, pseudo_remainder(a, b)
        if not b.is_zero():
            b = b.primitive_part()
    return a.primitive_part() if not a.is_zero() else a


def integer_sqrt(m: int) -> tuple[int, bool]:
    """Floor square root and whether it is exact."""
    if m < 0:
        raise DomainError(f"integer_sqrt of negative value {m}")
    r = math.isqrt(m)
    return r, r * r == m


def sturm_sequence(p: IntPolynomial) -> list[IntPolynomial]:
    """Sturm chain with every remainder scaled by a positive constant."""
    seq = [p, p.derivative()]
    while seq[-1].degree > 0:
        a, b = seq[-2], seq[-1]
        r = pseudo_remainder(a, b)
        # prem multiplies by lc(b)**k; undo a negative sign factor
        k = a.degree - b.degree + 1
        if b.lc < 0 and k % 2:
            r = -r
        if r.is_zero():
            break
        r = -r
        g = r.content()
        seq.append(IntPolynomial(x // g for x in r.coeffs))
    return seq


def _sign_changes(values) -> int:
    signs = [v for v in values if v != 0]
    return sum(1 for x, y in zip(signs, signs[1:]) if (x > 0) != (y > 0))


def count_real_roots(p: IntPolynomial) -> int:
    """Number of distinct real roots, by a Sturm sequence over the integers."""
    if p.degree < 1:
        return 0
    seq = sturm_sequence(p)
    at_neg_inf = [q.lc * (-1) ** q.degree for q in seq]
    at_pos_inf = [q.lc for q in seq]
    return _sign_changes(at_neg_inf) - _sign_changes(at_pos_inf)
