import mpmath
import pytest

from rampoly import construct
from rampoly.construct import (
    estimate_bits_hilbert,
    hilbert_class_poly,
    ramanujan_poly,
    verify_ramanujan_poly,
)
from rampoly.dataset import load_expected
from rampoly.errors import NeedsMorePrecisionError, UnsupportedDiscriminantError, VerificationFailure
from rampoly.numerics import PrecisionContext
from rampoly.polyz import IntPolynomial, count_real_roots
from rampoly.quadform import class_group, two_torsion_count

from oracles import klein_j
from rampoly.quadform import cm_point

H227 = [int(c) for c in load_expected()["example_227"]["hilbert"]["coefficients"]]


def test_bit_estimate_for_11():
    # pi*sqrt(11)/ln 2 = 15.03..., so ceil gives 16; plus 32*1 + 128
    assert estimate_bits_hilbert(11) == 176


def test_h11():
    assert hilbert_class_poly(11).polynomial == IntPolynomial([32768, 1])


def test_h35_is_quadratic_with_oracle_roots():
    poly = hilbert_class_poly(35).polynomial
    assert poly.degree == 2 and poly.is_monic()
    ctx = PrecisionContext(200)
    for f in class_group(35).elements:
        j = klein_j(cm_point(f, ctx).tau, 80)
        with mpmath.workdps(80):
            assert abs(poly.evaluate_approx(j, PrecisionContext(260))) < mpmath.mpf(10) ** -20 * abs(j) ** 2


def test_h227_matches_printed_coefficients():
    assert list(hilbert_class_poly(227).polynomial.coeffs) == H227
    assert H227[0] == 5085472193216544027705344000000000000000 and H227[-1] == 1


@pytest.mark.parametrize(
    "n, coeffs",
    [
        (11, [-1, 1]),
        (35, [-1, 1, 1]),
        (59, [-1, 2, 0, 1]),
        (83, [-1, 2, 2, 1]),
        (107, [-1, 4, -2, 1]),
        (227, [-1, 9, -9, 9, -5, 1]),
    ],
)
def test_ramanujan_polynomials(n, coeffs):
    result = ramanujan_poly(n)
    assert list(result.polynomial.coeffs) == coeffs
    assert result.verified


def test_constant_term_and_degree_over_sweep():
    for n in range(11, 600, 24):
        p = ramanujan_poly(n).polynomial
        assert p.degree == class_group(n).h
        assert abs(p[0]) == 1


def test_real_root_counts_small_rows():
    for n in (35, 155, 299, 731, 1235 - 24 * 10):
        group = class_group(n)
        assert count_real_roots(hilbert_class_poly(n).polynomial) == two_torsion_count(group)
        assert count_real_roots(ramanujan_poly(n).polynomial) == two_torsion_count(group)


def test_wrong_candidate_fails_transform_and_root_clauses():
    ctx = PrecisionContext(256)
    check = verify_ramanujan_poly(IntPolynomial([1, 1, 1]), 35, ctx, raise_on_failure=False)
    assert check.degree_ok and check.constant_ok
    assert not check.roots_map_ok and not check.t_root_ok
    assert check.failed == ["root transform", "t_n root"]
    with pytest.raises(VerificationFailure) as info:
        verify_ramanujan_poly(IntPolynomial([1, 1, 1]), 35, ctx)
    assert list(info.value.failed) == ["root transform", "t_n root"]


def test_wrong_degree_and_constant_fail():
    check = verify_ramanujan_poly(IntPolynomial([-3, 1, 1]), 59, PrecisionContext(256), raise_on_failure=False)
    assert not check.degree_ok and not check.constant_ok


def test_true_polynomial_passes_certificate():
    check = verify_ramanujan_poly(IntPolynomial([-1, 9, -9, 9, -5, 1]), 227, PrecisionContext(256))
    assert check.passed
    assert check.worst_root_residual < 1e-20


def test_low_precision_asks_for_more():
    with pytest.raises(NeedsMorePrecisionError):
        ramanujan_poly(971, PrecisionContext(64))


@pytest.mark.parametrize("n", [59, 227, 299])
def test_doubling_precision_changes_nothing(n):
    base_p = ramanujan_poly(n)
    base_h = hilbert_class_poly(n)
    assert ramanujan_poly(n, PrecisionContext(2 * base_p.bits)).polynomial == base_p.polynomial
    assert hilbert_class_poly(n, PrecisionContext(2 * base_h.bits)).polynomial == base_h.polynomial


def test_fresh_result_ignores_preload():
    construct.preload(construct.ClassPolynomialResult(35, construct.RAMANUJAN, IntPolynomial([1, 1, 1]), 64, False))
    try:
        assert ramanujan_poly(35).polynomial == IntPolynomial([1, 1, 1])
        assert construct.fresh_result(construct.RAMANUJAN, 35).polynomial == IntPolynomial([-1, 1, 1])
    finally:
        construct.clear_caches()
    assert ramanujan_poly(35).polynomial == IntPolynomial([-1, 1, 1])


def test_rejects_unsupported_n():
    with pytest.raises(UnsupportedDiscriminantError):
        ramanujan_poly(13)
    with pytest.raises(UnsupportedDiscriminantError):
        hilbert_class_poly(23)


def test_genuine_lower_degree_relation_is_inconsistent(monkeypatch):
    from types import SimpleNamespace

    from rampoly.errors import InconsistencyError

    # pretend h_35 = 3; the true quadratic relation then trips the minimality guard
    monkeypatch.setattr(construct, "class_group", lambda n: SimpleNamespace(h=3))
    with pytest.raises(InconsistencyError):
        construct.ramanujan_at_precision(35, PrecisionContext(256))
