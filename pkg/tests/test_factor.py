import random

import pytest
from hypothesis import given, settings, strategies as st

from rampoly.factor import FactoredInteger, factorize, is_prime, kronecker_minus_n_mod3, pollard_brent, primes_up_to

from oracles import is_prime_trial


def test_small_primes_against_trial_division():
    assert all(is_prime(m) == is_prime_trial(m) for m in range(0, 5000))
    assert primes_up_to(30) == (2, 3, 5, 7, 11, 13, 17, 19, 23, 29)


def test_carmichael_and_strong_pseudoprimes():
    for m in (561, 1105, 3215031751, 3825123056546413051):
        assert not is_prime(m)


def test_large_primes():
    assert is_prime(2**127 - 1)
    assert is_prime(2**61 - 1)
    assert not is_prime((2**61 - 1) * (2**31 - 1))


def test_pollard_brent_splits_semiprime():
    m = 1000003 * 998244353
    d = pollard_brent(m)
    assert d in (1000003, 998244353)


@pytest.mark.parametrize(
    "m, expected",
    [
        (-107, "-107"),
        (5, "+5"),
        (1, "+1"),
        (-2**4 * 227**2, "-2^4·227^2"),
        (2**10 * 3 * 1000003**2, "+2^10·3·1000003^2"),
    ],
)
def test_factorize_examples(m, expected):
    assert str(factorize(m)) == expected


@settings(max_examples=200)
@given(st.integers(min_value=-(10**18), max_value=10**18).filter(lambda x: x != 0))
def test_factorization_reassembles(m):
    fi = factorize(m)
    assert fi.value == m
    assert fi.complete
    assert all(is_prime(p) for p in fi.primes())


def test_factorize_rejects_zero():
    with pytest.raises(ValueError):
        factorize(0)


def test_cofactor_is_kept():
    fi = FactoredInteger(1, ((2, 3),), 91)
    assert fi.value == 728 and not fi.complete
    assert fi.format() == "2^3·[91]"


def test_random_products_of_known_primes():
    rng = random.Random(7)
    primes = [p for p in primes_up_to(5000) if p > 1000]
    for _ in range(50):
        chosen = rng.sample(primes, 3)
        m = chosen[0] ** 2 * chosen[1] * chosen[2] ** 3
        fi = factorize(m)
        assert dict(fi.factors) == {chosen[0]: 2, chosen[1]: 1, chosen[2]: 3}


def test_kronecker_three():
    assert kronecker_minus_n_mod3(11) == "split"
    assert kronecker_minus_n_mod3(12) == "ramified"
    assert kronecker_minus_n_mod3(13) == "inert"
