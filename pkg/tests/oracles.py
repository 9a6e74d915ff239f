"""Independent reference computations used only by the tests.

None of these share code paths with the package: they are brute force,
textbook formulas, or a different library routine.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import mpmath

PI_50 = "3.14159265358979323846264338327950288419716939937510"

_GENERATORS = ((1, 1, 0, 1), (1, -1, 0, 1), (0, -1, 1, 0), (0, 1, -1, 0))


def act(form, m):
    """Transform (a, b, c) by the SL2(Z) matrix m = (p, q, r, s)."""
    a, b, c = form
    p, q, r, s = m
    return (
        a * p * p + b * p * r + c * r * r,
        2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s,
        a * q * q + b * q * s + c * s * s,
    )


def brute_force_reduced(form, max_len=4):
    """Search SL2(Z) words of length <= max_len for a reduced equivalent."""
    seen = {tuple(form)}
    frontier = [tuple(form)]
    for _ in range(max_len + 1):
        for f in frontier:
            a, b, c = f
            if abs(b) <= a <= c and not ((abs(b) == a or a == c) and b < 0):
                return f
        nxt = []
        for f in frontier:
            for g in _GENERATORS:
                h = act(f, g)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return None


def sylvester_resultant(p, q):
    """Resultant as the Sylvester determinant, by fraction-free Gaussian elimination."""
    a = list(reversed(p))
    b = list(reversed(q))
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    rows = []
    for i in range(n):
        rows.append([0] * i + a + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + b + [0] * (size - n - 1 - i))
    mat = [[Fraction(x) for x in r] for r in rows]
    det = Fraction(1)
    for col in range(size):
        pivot = next((r for r in range(col, size) if mat[r][col] != 0), None)
        if pivot is None:
            return 0
        if pivot != col:
            mat[col], mat[pivot] = mat[pivot], mat[col]
            det = -det
        det *= mat[col][col]
        for r in range(col + 1, size):
            f = mat[r][col] / mat[col][col]
            if f:
                for k in range(col, size):
                    mat[r][k] -= f * mat[col][k]
    return int(det)


def root_product_discriminant(coeffs, digits=60):
    """lc^(2d-2) * prod_{i<j} (r_i - r_j)^2 from numerical roots, rounded."""
    d = len(coeffs) - 1
    if d <= 1:
        return 1
    with mpmath.workdps(digits):
        roots = mpmath.polyroots(list(reversed(coeffs)), maxsteps=500, extraprec=200)
        prod = mpmath.mpf(coeffs[-1]) ** (2 * d - 2)
        for ri, rj in itertools.combinations(roots, 2):
            prod *= (ri - rj) ** 2
        value = mpmath.re(prod)
        return int(mpmath.nint(value))


def shortest_vector_brute(basis, bound=50):
    best, best_len = None, None
    for coeffs in itertools.product(range(-bound, bound + 1), repeat=len(basis)):
        if not any(coeffs):
            continue
        v = [sum(c * row[k] for c, row in zip(coeffs, basis)) for k in range(len(basis[0]))]
        length = sum(x * x for x in v)
        if best_len is None or length < best_len:
            best, best_len = v, length
    return best, best_len


def integer_det(mat):
    return sylvester_free_det([[Fraction(x) for x in r] for r in mat])


def sylvester_free_det(mat):
    size = len(mat)
    mat = [row[:] for row in mat]
    det = Fraction(1)
    for col in range(size):
        pivot = next((r for r in range(col, size) if mat[r][col] != 0), None)
        if pivot is None:
            return 0
        if pivot != col:
            mat[col], mat[pivot] = mat[pivot], mat[col]
            det = -det
        det *= mat[col][col]
        for r in range(col + 1, size):
            f = mat[r][col] / mat[col][col]
            for k in range(col, size):
                mat[r][k] -= f * mat[col][k]
    return int(det)


def newton_real_root(coeffs, x0, digits=50, steps=200):
    """Newton iteration for an ascending-coefficient integer polynomial."""
    with mpmath.workdps(digits + 10):
        x = mpmath.mpf(x0)
        for _ in range(steps):
            f = sum(c * x**k for k, c in enumerate(coeffs))
            df = sum(k * c * x ** (k - 1) for k, c in enumerate(coeffs) if k)
            x -= f / df
        return +x


def klein_j(tau, digits=60):
    """j(tau) through mpmath's theta-function implementation of Klein's J."""
    with mpmath.workdps(digits):
        return 1728 * mpmath.kleinj(tau)


def is_prime_trial(m):
    if m < 2:
        return False
    return all(m % p for p in range(2, math.isqrt(m) + 1))
