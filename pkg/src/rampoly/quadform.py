"""Binary quadratic forms of discriminant -n and the class group they form."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

from . import numerics
from .errors import InvalidFormError, UnsupportedDiscriminantError
from .numerics import PrecisionContext


def check_n(n) -> int:
    """Validate that ``n`` is a positive integer with n = 11 (mod 24)."""
    if isinstance(n, bool) or not isinstance(n, int) or n <= 0 or n % 24 != 11:
        raise UnsupportedDiscriminantError(f"n must be ≡ 11 (mod 24), got {n!r}")
    return n


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``a*x + b*y == g == gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


@dataclass(frozen=True, order=True)
class QuadForm:
    a: int
    b: int
    c: int

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    @property
    def is_primitive(self) -> bool:
        return math.gcd(self.a, self.b, self.c) == 1

    @property
    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        if not (abs(b) <= a <= c):
            return False
        if (abs(b) == a or a == c) and b < 0:
            return False
        return True

    @property
    def is_ambiguous(self) -> bool:
        """Reduced forms equal to their own inverse: b = 0, b = a, or a = c."""
        return self.b == 0 or self.b == self.a or self.a == self.c

    def inverse(self) -> "QuadForm":
        return reduce(QuadForm(self.a, -self.b, self.c))

    def __mul__(self, other: "QuadForm") -> "QuadForm":
        return compose(self, other)

    def __pow__(self, k: int) -> "QuadForm":
        if k < 0:
            return self.inverse() ** (-k)
        result = identity_form(self.discriminant)
        base = self
        while k:
            if k & 1:
                result = compose(result, base)
            base = compose(base, base)
            k >>= 1
        return result

    def __str__(self):
        return f"({self.a}, {self.b}, {self.c})"


def identity_form(disc: int) -> QuadForm:
    if disc % 4 == 0:
        return QuadForm(1, 0, -disc // 4)
    return QuadForm(1, 1, (1 - disc) // 4)


def _validate(f: QuadForm) -> None:
    if f.a <= 0 or f.discriminant >= 0:
        raise InvalidFormError(f"{f} is not positive definite")
    if not f.is_primitive:
        raise InvalidFormError(f"{f} is not primitive")


def reduce(f: QuadForm) -> QuadForm:
    """Return the unique reduced form properly equivalent to ``f``."""
    _validate(f)
    a, b, c = f.a, f.b, f.c
    while True:
        # normalize: -a < b <= a
        if not (-a < b <= a):
            r = (a - b) // (2 * a)
            b, c = b + 2 * r * a, a * r * r + b * r + c
        if a > c:
            a, b, c = c, -b, a
            continue
        if a == c and b < 0:
            b = -b
        return QuadForm(a, b, c)


def compose(f: QuadForm, g: QuadForm) -> QuadForm:
    """Gauss composition of two primitive forms, returned reduced."""
    _validate(f)
    _validate(g)
    disc = f.discriminant
    if g.discriminant != disc:
        raise InvalidFormError(f"discriminant mismatch: {disc} vs {g.discriminant}")
    a1, b1, _ = f.a, f.b, f.c
    a2, b2, c2 = g.a, g.b, g.c
    s = (b1 + b2) // 2
    d1, u1, v1 = xgcd(a1, a2)
    d, x, w = xgcd(d1, s)
    v = x * v1
    a3 = a1 * a2 // (d * d)
    b3 = (b2 + 2 * (a2 // d) * (v * (s - b2) - w * c2)) % (2 * a3)
    c3 = (b3 * b3 - disc) // (4 * a3)
    return reduce(QuadForm(a3, b3, c3))


def enumerate_reduced(n: int, *, check: bool = True) -> list[QuadForm]:
    """All primitive reduced forms of discriminant -n, sorted by (a, b).

    ``check=False`` relaxes the n = 11 (mod 24) restriction for debugging;
    other discriminants are not a supported use.
    """
    if check:
        check_n(n)
    elif n <= 0 or n % 4 not in (0, 3):
        raise UnsupportedDiscriminantError(f"-{n} is not a negative discriminant")
    forms = []
    a = 1
    while 3 * a * a <= n:
        for b in range(-a + 1, a + 1):
            if (b * b + n) % (4 * a):
                continue
            c = (b * b + n) // (4 * a)
            f = QuadForm(a, b, c)
            if c >= a and f.is_reduced and f.is_primitive:
                forms.append(f)
        a += 1
    forms.sort(key=lambda q: (q.a, q.b))
    return forms


def form_order(f: QuadForm) -> int:
    e = identity_form(f.discriminant)
    k, g = 1, f
    while g != e:
        g = compose(g, f)
        k += 1
    return k


def _subgroup_closure(gens, elements, e) -> frozenset:
    group = {e}
    frontier = [e]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = compose(x, g)
            if y not in group:
                group.add(y)
                frontier.append(y)
    return frozenset(group)


def _invariant_factors(elements: list[QuadForm], e: QuadForm) -> tuple[int, ...]:
    # repeatedly split off a cyclic subgroup of maximal order in the quotient
    h = len(elements)
    if h == 1:
        return (1,)
    sub = frozenset([e])
    gens: list[QuadForm] = []
    factors = []
    while len(sub) < h:
        best, best_order = None, 0
        for x in elements:
            k, y = 1, x
            while y not in sub:
                y = compose(y, x)
                k += 1
            if k > best_order:
                best, best_order = x, k
        factors.append(best_order)
        gens.append(best)
        sub = _subgroup_closure(gens, elements, e)
    return tuple(sorted(factors))


@dataclass(frozen=True)
class ClassGroup:
    n: int
    elements: tuple[QuadForm, ...]
    identity: QuadForm
    invariant_factors: tuple[int, ...]
    orders: dict = field(compare=False, hash=False, repr=False)

    @property
    def discriminant(self) -> int:
        return -self.n

    @property
    def h(self) -> int:
        return len(self.elements)

    @property
    def is_cyclic(self) -> bool:
        return len(self.invariant_factors) == 1

    def order(self, f: QuadForm) -> int:
        return self.orders[reduce(f)]

    def structure(self) -> str:
        return " x ".join(f"Z/{d}" for d in reversed(self.invariant_factors))


@lru_cache(maxsize=None)
def class_group(n: int, *, check: bool = True) -> ClassGroup:
    elements = enumerate_reduced(n, check=check)
    e = identity_form(-n)
    orders = {f: form_order(f) for f in elements}
    return ClassGroup(
        n=n,
        elements=tuple(elements),
        identity=e,
        invariant_factors=_invariant_factors(elements, e),
        orders=orders,
    )


def two_torsion_count(group: ClassGroup) -> int:
    """Number of classes g with g*g equal to the identity, by direct squaring."""
    return sum(1 for f in group.elements if compose(f, f) == group.identity)


def distinct_prime_factors(n: int) -> list[int]:
    primes, p, m = [], 2, n
    while p * p <= m:
        if m % p == 0:
            primes.append(p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        primes.append(m)
    return primes


def is_squarefree(n: int) -> bool:
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        p += 1
    return True


def genus_two_torsion(n: int) -> int:
    """Ambiguous class count 2**(t-1), t = number of distinct primes of n."""
    check_n(n)
    if not is_squarefree(n):
        raise UnsupportedDiscriminantError(f"genus count only supported for squarefree n, got {n}")
    return 2 ** (len(distinct_prime_factors(n)) - 1)


@dataclass(frozen=True)
class CMPoint:
    tau: numerics.ApproxComplex
    form: QuadForm


def cm_point(f: QuadForm, ctx: PrecisionContext) -> CMPoint:
    """tau = (-b + i*sqrt(n)) / (2a) for a reduced form of discriminant -n."""
    if not f.is_reduced:
        raise InvalidFormError(f"{f} is not reduced")
    n = -f.discriminant
    with ctx.workprec():
        root = numerics.sqrt_pos(numerics.mpf(n), ctx)
        tau = numerics.mpc(numerics.mpf(-f.b), root) / (2 * f.a)
    return CMPoint(tau=tau, form=f)
