import itertools
from math import comb

import pytest

from binorder.identity import search
from binorder.nonexistence import (
    factorize,
    prime_power_check,
    prop8_check,
    signed_sum_bound,
    verdict,
)

PRIME_POWERS_TO_64 = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32, 37, 41, 43, 47, 49, 53, 59, 61, 64]


def is_prime(p):
    return p > 1 and all(p % d for d in range(2, int(p**0.5) + 1))


def test_prime_power_examples():
    v = prime_power_check(16)
    assert v.none_exists and v.reason == "prime_power" and v.witness == (2, 4)
    assert not prime_power_check(15).none_exists
    v = prime_power_check(1)
    assert v.none_exists and v.reason == "degenerate_n1"


def test_prime_power_set():
    hits = [n for n in range(1, 65) if prime_power_check(n).none_exists]
    assert hits == [1] + PRIME_POWERS_TO_64


def test_prop8_examples():
    v = prop8_check(14)
    assert v.none_exists and v.reason == "prop_pq" and v.witness == (7, 1, 2, 1)
    assert prop8_check(22).witness == (11, 1, 2, 1)
    # 5 < 2**3 and 3 < 2**5
    assert not prop8_check(15).none_exists
    assert 5 < 2**3 and 3 < 2**5


def test_verdict_examples():
    v = verdict(10, "wsb")
    assert v.none_exists and v.reason == "prop_pq" and v.witness == (5, 1, 2, 1)
    assert not verdict(15, "wsb").none_exists
    assert search(15, "wsb")
    assert not verdict(10, "fundamental").none_exists


@pytest.mark.parametrize("n", range(1, 65))
def test_witnesses_are_valid(n):
    v = prop8_check(n)
    if v.reason == "prime_power":
        p, alpha = v.witness
        assert is_prime(p) and alpha >= 1 and p**alpha == n
    elif v.reason == "prop_pq":
        p, k, q, m = v.witness
        assert is_prime(p) and is_prime(q) and p != q
        assert k >= 1 and m >= 1 and p**k * q**m == n
        assert p >= 2 ** (q**m)
        assert signed_sum_bound(q, m) == 2 ** (q**m) - 2 <= p - 2


@pytest.mark.parametrize("qm", [2, 3, 4, 5, 7, 8])
def test_signed_sum_bound_by_enumeration(qm):
    coeffs = [comb(qm, i) for i in range(1, qm)]
    best = max(abs(sum(e * c for e, c in zip(eps, coeffs))) for eps in itertools.product((-1, 0, 1), repeat=len(coeffs)))
    q, m = factorize(qm)[0]
    assert best == signed_sum_bound(q, m) == 2**qm - 2


@pytest.mark.parametrize("n", range(1, 25))
def test_soundness_against_search(n):
    if verdict(n, "wsb").none_exists:
        assert search(n, "wsb") == []
    if verdict(n, "fundamental").none_exists:
        assert search(n, "fundamental") == []


def test_factorize():
    assert factorize(60) == [(2, 2), (3, 1), (5, 1)]
    assert factorize(64) == [(2, 6)]
