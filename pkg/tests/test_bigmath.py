import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eiscong.bigmath import (
    Factorization,
    binomial,
    divisors,
    factorize,
    factorize_rational,
    is_prime,
)
from oracles import pascal_row, smallest_prime_factors, trial_factor


@pytest.mark.parametrize("n,k,expected", [(0, 0, 1), (12, 1, 12), (12, 5, 792), (3, 7, 0)])
def test_binomial_examples(n, k, expected):
    assert binomial(n, k) == expected


def test_binomial_matches_pascal():
    for n in range(40):
        assert [binomial(n, k) for k in range(n + 1)] == pascal_row(n)


def test_binomial_rejects_negative():
    with pytest.raises(ValueError):
        binomial(-1, 0)


@pytest.mark.parametrize("n,expected", [(691, True), (1, False), (146919925663969, True), (0, False)])
def test_is_prime_examples(n, expected):
    assert is_prime(n) is expected


def test_is_prime_matches_sieve():
    spf = smallest_prime_factors(200_000)
    assert [n for n in range(2, 200_001) if is_prime(n)] == [n for n in range(2, 200_001) if spf[n] == n]


@pytest.mark.parametrize(
    "n",
    [
        561, 41041, 825265, 321197185,  # Carmichael numbers
        3215031751,  # strong pseudoprime to bases 2, 3, 5, 7
        3825123056546413051,  # strong pseudoprime to bases 2..23
        318665857834031151167461,  # strong pseudoprime to bases 2..37
        3317044064679887385961981,  # strong pseudoprime to bases 2..37, sent through BPSW
    ],
)
def test_pseudoprimes_rejected(n):
    assert not is_prime(n)


@pytest.mark.parametrize("e", [61, 89, 107, 127, 521])
def test_mersenne_primes(e):
    assert is_prime(2**e - 1)


def test_large_semiprimes_rejected():
    p, q = 2**89 - 1, 2**107 - 1
    assert not is_prime(p * q)
    assert not is_prime(p * p)


@pytest.mark.parametrize(
    "n,sign,factors",
    [
        (804, 1, ((2, 2), (3, 1), (67, 1))),
        (-1, -1, ()),
        (1651004, 1, ((2, 2), (191, 1), (2161, 1))),
        (-28880, -1, ((2, 4), (5, 1), (19, 2))),
        (468896302250604, 1, ((2, 2), (3, 2), (41, 1), (317680421579, 1))),
    ],
)
def test_factorize_examples(n, sign, factors):
    assert factorize(n) == Factorization(sign, factors)


def test_factorize_zero_rejected():
    with pytest.raises(ValueError):
        factorize(0)


def test_factorize_agrees_with_sieve_up_to_a_million():
    limit = 10**6
    spf = smallest_prime_factors(limit)
    for n in range(2, limit + 1):
        m, expected = n, {}
        while m > 1:
            expected[spf[m]] = expected.get(spf[m], 0) + 1
            m //= spf[m]
        assert dict(factorize(n).factors) == expected


@settings(max_examples=300, deadline=None)
@given(st.integers(min_value=2, max_value=10**15))
def test_factorize_reconstructs(n):
    fac = factorize(n)
    assert fac.value == n
    assert all(is_prime(p) for p in fac.primes)


def test_factorize_hard_semiprime():
    p, q = 1000003, 998244353
    assert factorize(p * q) == Factorization(1, ((p, 1), (q, 1)))


def test_factorize_matches_trial_division_on_random_inputs():
    rng = random.Random(20261018)
    for _ in range(200):
        n = rng.randrange(2, 10**10)
        assert list(factorize(n).factors) == trial_factor(n)


def test_rational_factorization_and_render():
    fac = factorize_rational(Fraction(4489, 25))
    assert fac.factors == ((5, -2), (67, 2))
    assert fac.render() == "5^-2·67^2"
    assert factorize(-40).render() == "-1·2^3·5"
    assert factorize(-40).render("*") == "-1*2^3*5"
    assert factorize(1).render() == "1"


def test_divisors():
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    for n in range(1, 300):
        assert divisors(n) == [d for d in range(1, n + 1) if n % d == 0]


def test_factorization_validates():
    with pytest.raises(ValueError):
        Factorization(1, ((3, 1), (2, 1)))
    with pytest.raises(ValueError):
        Factorization(0, ())
