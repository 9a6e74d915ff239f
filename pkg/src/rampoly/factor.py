"""Integer factorization for discriminants: trial division, then Pollard-Brent."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache

# Miller-Rabin with these bases is deterministic below 3.3e24
_DETERMINISTIC_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_RANDOM_ROUNDS = 40
_SEED = 0x5EED


def _strong_probable_prime(m: int, a: int, d: int, s: int) -> bool:
    x = pow(a, d, m)
    if x in (1, m - 1):
        return True
    for _ in range(s - 1):
        x = x * x % m
        if x == m - 1:
            return True
    return False


def is_prime(m: int) -> bool:
    """Deterministic below 2**64; 40 seeded random Miller-Rabin bases above."""
    if m < 0:
        raise ValueError("is_prime expects a nonnegative integer")
    if m < 2:
        return False
    for p in _DETERMINISTIC_BASES:
        if m % p == 0:
            return m == p
    d, s = m - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if m < 1 << 64:
        return all(_strong_probable_prime(m, a, d, s) for a in _DETERMINISTIC_BASES)
    rng = random.Random(_SEED ^ m.bit_length())
    bases = list(_DETERMINISTIC_BASES) + [rng.randrange(2, m - 1) for _ in range(_RANDOM_ROUNDS)]
    return all(_strong_probable_prime(m, a, d, s) for a in bases)


@lru_cache(maxsize=32)
def primes_up_to(bound: int) -> tuple[int, ...]:
    if bound < 2:
        return ()
    sieve = bytearray([1]) * (bound + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(bound) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(range(p * p, bound + 1, p)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


def pollard_brent(m: int, seed: int = _SEED, max_iterations: int = 1 << 20) -> int | None:
    """A nontrivial factor of composite ``m``, or None if the budget runs out."""
    if m % 2 == 0:
        return 2
    rng = random.Random(seed)
    for _ in range(8):
        y, c, batch = rng.randrange(1, m), rng.randrange(1, m), 128
        g = r = q = 1
        x = ys = y
        steps = 0
        while g == 1 and steps < max_iterations:
            x = y
            for _ in range(r):
                y = (y * y + c) % m
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(batch, r - k)):
                    y = (y * y + c) % m
                    q = q * abs(x - y) % m
                g = math.gcd(q, m)
                k += batch
            r *= 2
            steps += r
        if g == m:
            # batch overshot; walk back one step at a time
            g = 1
            while g == 1:
                ys = (ys * ys + c) % m
                g = math.gcd(abs(x - ys), m)
        if 1 < g < m:
            return g
    return None


@dataclass(frozen=True)
class FactoredInteger:
    sign: int
    factors: tuple[tuple[int, int], ...] = ()
    cofactor: int = 1

    @property
    def value(self) -> int:
        out = self.sign * self.cofactor
        for p, e in self.factors:
            out *= p**e
        return out

    @property
    def complete(self) -> bool:
        return self.cofactor == 1

    def exponent(self, p: int) -> int:
        return dict(self.factors).get(p, 0)

    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def format(self, times: str = "·", with_sign: bool = False) -> str:
        parts = [f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors]
        if self.cofactor != 1:
            parts.append(f"[{self.cofactor}]")
        body = times.join(parts) if parts else "1"
        if with_sign:
            return ("+" if self.sign >= 0 else "-") + body
        return body

    def __str__(self):
        return self.format(with_sign=True)


def factorize(m: int, trial_bound: int = 1000, *, seed: int = _SEED) -> FactoredInteger:
    """Factor ``m``: trial division up to ``trial_bound``, then Pollard-Brent.

    Whatever cannot be split is left in ``cofactor``; it is never dropped.
    """
    if m == 0:
        raise ValueError("cannot factor zero")
    if trial_bound < 2:
        raise ValueError("trial_bound must be at least 2")
    sign = 1 if m > 0 else -1
    rest = abs(m)
    found: dict[int, int] = {}
    for p in primes_up_to(trial_bound):
        if p * p > rest:
            break
        if rest % p == 0:
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            found[p] = e
    leftover = 1
    stack = [rest] if rest > 1 else []
    while stack:
        x = stack.pop()
        if is_prime(x):
            found[x] = found.get(x, 0) + 1
            continue
        r = math.isqrt(x)
        if r * r == x:
            stack.extend([r, r])
            continue
        d = pollard_brent(x, seed=seed)
        if d is None:
            leftover *= x
        else:
            stack.extend([d, x // d])
    return FactoredInteger(sign=sign, factors=tuple(sorted(found.items())), cofactor=leftover)


def kronecker_minus_n_mod3(n: int) -> str:
    """Splitting type of 3 in Q(sqrt(-n)): 'split', 'inert' or 'ramified'."""
    if n <= 0:
        raise ValueError("n must be positive")
    if n % 3 == 0:
        return "ramified"
    return "split" if (-n) % 3 == 1 else "inert"
