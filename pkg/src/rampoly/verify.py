"""Theorem checks on concrete n, and comparison against the shipped dataset.

Every check works from exact integers: the discriminants of H_n and P_n are
computed by subresultants, factored, and compared.  Checks that find a
violation raise :class:`TheoremViolation`; comparisons with the expected
dataset raise :class:`TableMismatch` naming the field.
"""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from functools import lru_cache

from .construct import hilbert_class_poly, ramanujan_poly
from .errors import TableMismatch, TheoremViolation, UnsupportedDiscriminantError
from .factor import FactoredInteger, factorize, kronecker_minus_n_mod3
from .polyz import count_real_roots, discriminant, integer_sqrt
from .quadform import (
    check_n,
    class_group,
    distinct_prime_factors,
    genus_two_torsion,
    is_squarefree,
    two_torsion_count,
)


def _sign(x: int) -> str:
    return "+" if x > 0 else "-"


@lru_cache(maxsize=None)
def discriminants(n: int) -> tuple[int, int]:
    """(Δ(P_n), Δ(H_n)) as exact integers."""
    check_n(n)
    return (
        discriminant(ramanujan_poly(n).polynomial),
        discriminant(hilbert_class_poly(n).polynomial),
    )


def reset_caches() -> None:
    """Drop every memoized polynomial and discriminant."""
    from .construct import clear_caches

    clear_caches()
    discriminants.cache_clear()


def square_quotient(disc_small: int, disc_big: int) -> tuple[int, int]:
    """Quotient ``disc_big / disc_small`` and its square root, or raise."""
    if disc_small == 0 or disc_big % disc_small:
        raise TheoremViolation(f"{disc_small} does not divide {disc_big}")
    quotient = disc_big // disc_small
    if quotient < 0:
        raise TheoremViolation(f"discriminants {disc_small} and {disc_big} differ in sign")
    root, exact = integer_sqrt(quotient)
    if not exact:
        raise TheoremViolation(f"quotient {quotient} is not a perfect square")
    return quotient, root


def check_square_quotient(n: int) -> tuple[int, int]:
    """Δ(H_n) = Δ(P_n) * index**2; returns (quotient, index)."""
    disc_p, disc_h = discriminants(n)
    if (disc_p > 0) != (disc_h > 0):
        raise TheoremViolation(f"n={n}: Δ(H_n) and Δ(P_n) have different signs")
    return square_quotient(disc_p, disc_h)


def predict_sign(n: int) -> str:
    """'+' iff h_n ≡ |Cl(n)[2]| (mod 4)."""
    group = class_group(n)
    return "+" if (group.h - two_torsion_count(group)) % 4 == 0 else "-"


def check_sign(n: int) -> bool:
    """Compare the predicted sign with Δ(P_n), including its squarefree and cyclic specializations."""
    group = class_group(n)
    predicted = predict_sign(n)
    actual = _sign(discriminants(n)[0])
    if predicted != actual:
        raise TheoremViolation(f"n={n}: predicted sign {predicted}, Δ(P_n) has sign {actual}")
    if is_squarefree(n):
        genus = genus_two_torsion(n)
        if genus != two_torsion_count(group):
            raise TheoremViolation(f"n={n}: genus count {genus} != 2-torsion count")
        if ("+" if (group.h - genus) % 4 == 0 else "-") != actual:
            raise TheoremViolation(f"n={n}: squarefree sign rule disagrees")
    if group.is_cyclic:
        cyclic = "+" if group.h % 4 in (1, 2) else "-"
        if cyclic != actual:
            raise TheoremViolation(f"n={n}: cyclic sign rule disagrees")
    return True


def dorman_split(n: int) -> tuple[int, int]:
    """n = D0 * D1 with D1 the unique prime ≡ 3 (mod 4) dividing n, else 1."""
    primes3 = [p for p in distinct_prime_factors(n) if p % 4 == 3]
    d1 = primes3[0] if len(primes3) == 1 else 1
    return n // d1, d1


def dorman_field_discriminant(n: int) -> int:
    """Signed discriminant of Q(j_n) for squarefree n.

    Magnitude D0^(h/2) * D1^((h - 2^(t-1))/2); the sign is (-1)^r2 with r2 the
    number of complex places, (h - |Cl(n)[2]|)/2.
    """
    check_n(n)
    if not is_squarefree(n):
        raise UnsupportedDiscriminantError(f"field discriminant formula needs squarefree n, got {n}")
    group = class_group(n)
    h, t = group.h, len(distinct_prime_factors(n))
    d0, d1 = dorman_split(n)
    if d0 > 1 and h % 2:
        raise UnsupportedDiscriminantError(f"n={n}: D0={d0} > 1 with odd h={h} gives a fractional exponent")
    e1 = h - 2 ** (t - 1)
    if e1 % 2:
        raise UnsupportedDiscriminantError(f"n={n}: odd exponent numerator for D1")
    magnitude = d0 ** (h // 2) * d1 ** (e1 // 2)
    complex_places = (h - two_torsion_count(group)) // 2
    return -magnitude if complex_places % 2 else magnitude


def check_field_discriminant(n: int) -> tuple[int, int]:
    """Δ(P_n) = [O : Z[t_n]]^2 * D(Q(j_n)); returns (field disc, index)."""
    field_disc = dorman_field_discriminant(n)
    _, index = square_quotient(field_disc, discriminants(n)[0])
    return field_disc, index


def three_divides(disc: int) -> bool:
    return disc % 3 == 0


def check_three(n: int) -> bool:
    """3 ∤ Δ(P_n), and 3 splits in Q(sqrt(-n)) without dividing n."""
    if kronecker_minus_n_mod3(n) != "split" or n % 3 == 0:
        raise TheoremViolation(f"n={n}: 3 does not split in Q(sqrt(-{n}))")
    if three_divides(discriminants(n)[0]):
        raise TheoremViolation(f"n={n}: 3 divides Δ(P_n)")
    return True


def literal_square_probe(n: int) -> bool:
    """Whether Δ(P_n) is itself a perfect square (diagnostic only)."""
    disc_p = discriminants(n)[0]
    return disc_p > 0 and integer_sqrt(disc_p)[1]


@dataclass
class VerificationReport:
    n: int
    h: int
    invariant_factors: tuple[int, ...]
    two_torsion: int
    disc_ramanujan: FactoredInteger
    disc_hilbert: FactoredInteger
    quotient: int
    index: int | None
    predicted_sign: str
    actual_sign: str
    field_discriminant: int | None
    field_index: int | None
    three_divides: bool
    three_splits: bool
    real_roots_hilbert: int
    real_roots_ramanujan: int
    literal_square: bool
    checks: dict = field(default_factory=dict)
    table_match: dict | None = None
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        ok = all(self.checks.values())
        if self.table_match is not None:
            ok = ok and all(self.table_match.values())
        return ok

    def to_dict(self) -> dict:
        d = asdict(self)
        for key in ("disc_ramanujan", "disc_hilbert"):
            fi = getattr(self, key)
            d[key] = {
                "sign": fi.sign,
                "factors": [[str(p), str(e)] for p, e in fi.factors],
                "cofactor": str(fi.cofactor),
            }
        for key in ("quotient", "index", "field_discriminant", "field_index"):
            if d[key] is not None:
                d[key] = str(d[key])
        d["invariant_factors"] = list(self.invariant_factors)
        d["passed"] = self.passed
        return d


def _run_check(fn, n):
    try:
        return fn(n), True
    except TheoremViolation:
        return None, False


def build_report(n: int) -> VerificationReport:
    """Run every theorem check for n; violations are recorded, not raised."""
    start = time.perf_counter()
    check_n(n)
    group = class_group(n)
    disc_p, disc_h = discriminants(n)
    checks = {}
    sq, checks["square_quotient"] = _run_check(check_square_quotient, n)
    _, checks["sign"] = _run_check(check_sign, n)
    _, checks["three"] = _run_check(check_three, n)
    field_disc = field_index = None
    if is_squarefree(n):
        try:
            fd, checks["field_discriminant"] = _run_check(check_field_discriminant, n)
            if fd is not None:
                field_disc, field_index = fd
        except UnsupportedDiscriminantError:
            pass
    two = two_torsion_count(group)
    rr_h = count_real_roots(hilbert_class_poly(n).polynomial)
    rr_p = count_real_roots(ramanujan_poly(n).polynomial)
    checks["real_roots"] = rr_h == rr_p == two
    quotient, index = sq if sq is not None else (disc_h // disc_p if disc_p else 0, None)
    return VerificationReport(
        n=n,
        h=group.h,
        invariant_factors=group.invariant_factors,
        two_torsion=two,
        disc_ramanujan=factorize(disc_p, max(n, 2)),
        disc_hilbert=factorize(disc_h, max(n, 2)),
        quotient=quotient,
        index=index,
        predicted_sign=predict_sign(n),
        actual_sign=_sign(disc_p),
        field_discriminant=field_disc,
        field_index=field_index,
        three_divides=three_divides(disc_p),
        three_splits=kronecker_minus_n_mod3(n) == "split",
        real_roots_hilbert=rr_h,
        real_roots_ramanujan=rr_p,
        literal_square=literal_square_probe(n),
        checks=checks,
        seconds=time.perf_counter() - start,
    )


def compare_with_expected(report: VerificationReport, row: dict) -> dict:
    """Field-by-field comparison with one expected table row."""
    expected_disc = row["discriminant"]
    got = report.disc_ramanujan
    return {
        "h": report.h == int(row["h"]),
        "sign": report.actual_sign == row["sign"],
        "factorization": (
            got.complete
            and [[str(p), str(e)] for p, e in got.factors] == [[str(p), str(e)] for p, e in expected_disc["factors"]]
            and str(got.cofactor) == str(expected_disc.get("cofactor", "1"))
        ),
        "invariant_factors": list(report.invariant_factors) == [int(x) for x in row["invariant_factors"]],
    }


def verify_table_row(n: int, expected: dict | None = None, *, strict: bool = True) -> VerificationReport:
    """Full report for n, matched against the expected dataset when n is listed.

    With ``strict`` a table mismatch raises :class:`TableMismatch`.
    """
    from .dataset import load_expected, table2_row

    if expected is None:
        expected = load_expected()
    report = build_report(n)
    row = table2_row(expected, n)
    if row is not None:
        report.table_match = compare_with_expected(report, row)
        bad = [k for k, ok in report.table_match.items() if not ok]
        if bad and strict:
            raise TableMismatch(f"n={n}: computed {', '.join(bad)} differ from the expected table", field=bad[0])
    return report
