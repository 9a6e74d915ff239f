import pytest

from rampoly import verify
from rampoly.dataset import load_expected
from rampoly.errors import TableMismatch, TheoremViolation, UnsupportedDiscriminantError
from rampoly.polyz import IntPolynomial, discriminant

EXPECTED = load_expected()


def test_discriminants_of_small_rows():
    assert verify.discriminants(11) == (1, 1)
    assert verify.discriminants(35)[0] == 5
    assert verify.discriminants(59)[0] == -59


def test_square_quotient_227():
    quotient, index = verify.check_square_quotient(227)
    assert quotient == index**2
    assert verify.discriminants(227)[0] == 2**4 * 227**2


@pytest.mark.parametrize("n, sign", [(11, "+"), (35, "+"), (59, "-"), (227, "+"), (299, "-"), (347, "+"), (731, "-")])
def test_predicted_sign(n, sign):
    row = next(r for r in EXPECTED["table2"] if r["n"] == n)
    assert verify.predict_sign(n) == sign == row["sign"]
    assert verify.check_sign(n)


@pytest.mark.parametrize("n, value", [(227, 227**2), (35, 5), (59, -59)])
def test_dorman_field_discriminant(n, value):
    assert verify.dorman_field_discriminant(n) == value
    field_disc, index = verify.check_field_discriminant(n)
    assert verify.discriminants(n)[0] == field_disc * index**2


def test_dorman_split():
    assert verify.dorman_split(35) == (5, 7)
    assert verify.dorman_split(227) == (1, 227)


def test_field_discriminant_needs_squarefree():
    with pytest.raises(UnsupportedDiscriminantError):
        verify.dorman_field_discriminant(875)


def test_three_never_divides():
    for n in (11, 35, 59, 227, 875):
        assert verify.check_three(n)


def test_negative_control_square_quotient():
    d = discriminant(IntPolynomial([-3, 0, 1]))
    assert d == 12
    with pytest.raises(TheoremViolation):
        verify.square_quotient(d, 12 * 5)
    with pytest.raises(TheoremViolation):
        verify.square_quotient(d, 7)
    with pytest.raises(TheoremViolation):
        verify.square_quotient(d, -12)
    assert verify.square_quotient(d, 12 * 49) == (49, 7)


def test_literal_square_is_only_a_diagnostic():
    assert verify.literal_square_probe(11)
    assert not verify.literal_square_probe(35)
    report = verify.build_report(35)
    assert report.passed and not report.literal_square


@pytest.mark.parametrize("n", [11, 35, 59, 227, 299, 347, 731, 875])
def test_report_matches_table(n):
    report = verify.verify_table_row(n, EXPECTED)
    assert report.passed
    assert all(report.table_match.values())
    d = report.to_dict()
    assert d["passed"] and isinstance(d["disc_ramanujan"]["cofactor"], str)


def test_nonsquarefree_row_skips_field_check():
    report = verify.build_report(875)
    assert "field_discriminant" not in report.checks
    assert report.field_discriminant is None


def test_perturbed_row_mismatch():
    bad = {"table2": [dict(r) for r in EXPECTED["table2"]]}
    row = next(r for r in bad["table2"] if r["n"] == 59)
    row["h"] = 4
    with pytest.raises(TableMismatch) as info:
        verify.verify_table_row(59, bad)
    assert info.value.field == "h"
    report = verify.verify_table_row(59, bad, strict=False)
    assert not report.passed
