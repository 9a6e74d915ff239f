from fractions import Fraction

import mpmath
import pytest

from rampoly.errors import DomainError, UnsupportedDiscriminantError
from rampoly.modfunc import SeriesBudget, j_invariant, ramanujan_f, t_value, transform_t_to_j
from rampoly.numerics import PrecisionContext
from rampoly.quadform import class_group, cm_point, identity_form, two_torsion_count

from oracles import klein_j, newton_real_root

CTX = PrecisionContext(160)


def _close(a, b, digits):
    with mpmath.workdps(digits + 20):
        return abs(mpmath.mpmathify(a) - mpmath.mpmathify(b)) <= mpmath.mpf(10) ** -digits * max(1, abs(b))


def test_j_at_i_is_1728():
    assert _close(j_invariant(mpmath.mpc(0, 1), CTX), 1728, 40)


def test_j_at_cube_root_of_unity_vanishes():
    with mpmath.workprec(200):
        rho = mpmath.mpc(-0.5, mpmath.sqrt(3) / 2)
    assert abs(j_invariant(rho, CTX)) < mpmath.mpf(10) ** -35


def test_j_at_n11_cm_point():
    tau = cm_point(identity_form(-11), CTX).tau
    assert _close(j_invariant(tau, CTX), -32768, 40)


@pytest.mark.parametrize("n", [35, 227, 299])
def test_j_matches_theta_oracle(n):
    for f in class_group(n).elements:
        tau = cm_point(f, CTX).tau
        assert _close(j_invariant(tau, CTX), klein_j(tau, 80), 30)


def test_j_conjugation_under_b_negation():
    f = class_group(227).elements[1]
    g = type(f)(f.a, -f.b, f.c)
    with mpmath.workprec(300):
        ja = j_invariant(cm_point(f, CTX).tau, CTX)
        jb = j_invariant(cm_point(g, CTX).tau, CTX)
        assert abs(ja - mpmath.conj(jb)) < mpmath.mpf(10) ** -30 * abs(ja)


def test_j_rejects_lower_half_plane():
    with pytest.raises(DomainError):
        j_invariant(mpmath.mpc(0, -1), CTX)


def test_series_budget():
    b = SeriesBudget.for_modulus(mpmath.mpf("0.5"), PrecisionContext(64))
    assert b.terms >= 64 + 16
    with pytest.raises(DomainError):
        SeriesBudget.for_modulus(mpmath.mpf(1), CTX)


def test_ramanujan_f_against_mpmath_qp():
    y = mpmath.mpf(3) / 10
    with mpmath.workdps(60):
        # prod(1 - (-y)^k) is the q-Pochhammer symbol (-y; -y)_inf
        expected = mpmath.qp(-y, -y)
    assert _close(ramanujan_f(y, CTX), expected, 40)
    with pytest.raises(DomainError):
        ramanujan_f(mpmath.mpf(1), CTX)


def test_t11_is_one():
    assert _close(t_value(11, CTX), 1, 40)


@pytest.mark.parametrize(
    "n, coeffs",
    [(35, [-1, 1, 1]), (59, [-1, 2, 0, 1]), (83, [-1, 2, 2, 1]), (107, [-1, 4, -2, 1]), (227, [-1, 9, -9, 9, -5, 1])],
)
def test_t_value_against_newton_root(n, coeffs):
    t = t_value(n, CTX)
    root = newton_real_root(coeffs, float(t))
    assert _close(t, root, 40)


def test_t35_is_golden_ratio_conjugate():
    with mpmath.workdps(60):
        phi = (mpmath.sqrt(5) - 1) / 2
    assert _close(t_value(35, CTX), phi, 40)


def test_t_value_rejects_bad_n():
    with pytest.raises(UnsupportedDiscriminantError):
        t_value(13, CTX)


def test_transform_exact():
    assert transform_t_to_j(1) == -32768
    assert transform_t_to_j(Fraction(1)) == -32768
    with pytest.raises(ZeroDivisionError):
        transform_t_to_j(0)


def test_transform_approx_requires_context():
    with pytest.raises(ValueError):
        transform_t_to_j(mpmath.mpf(1))


@pytest.mark.parametrize("n", [35, 59, 227])
def test_transform_maps_t_to_real_j(n):
    t = t_value(n, CTX)
    j = j_invariant(cm_point(identity_form(-n), CTX).tau, CTX)
    assert _close(transform_t_to_j(t, CTX), mpmath.re(j), 30)


@pytest.mark.parametrize("n", [35, 227, 1235])
def test_reality_follows_two_torsion(n):
    group = class_group(n)
    digits = 40
    threshold = mpmath.mpf(10) ** (-digits // 2)
    real = 0
    for f in group.elements:
        j = j_invariant(cm_point(f, PrecisionContext.from_digits(digits)).tau, PrecisionContext.from_digits(digits))
        is_real = abs(mpmath.im(j)) < threshold * max(1, abs(j))
        assert is_real == (f * f == group.identity)
        real += is_real
    assert real == two_torsion_count(group)
