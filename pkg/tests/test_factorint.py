import random
from math import prod

import pytest

from lowmult.factorint import factorize, is_probable_prime


def test_small_examples():
    assert factorize(7) == [(7, 1)]
    assert factorize(15) == [(3, 1), (5, 1)]
    assert factorize(2**10 - 1) == [(3, 1), (11, 1), (31, 1)]
    assert factorize(2**21 - 1) == [(7, 2), (127, 1), (337, 1)]


def test_mersenne_53():
    factors = factorize(2**53 - 1)
    assert factors == [(6361, 1), (69431, 1), (20394401, 1)]
    assert prod(p**e for p, e in factors) == 2**53 - 1


def test_mersenne_primes():
    assert factorize(2**31 - 1) == [(2147483647, 1)]
    assert factorize(2**19 - 1) == [(524287, 1)]


def test_large_semiprime_needs_rho():
    # both factors exceed the trial-division bound
    p, q = 1000003, 1000033
    assert factorize(p * q) == [(p, 1), (q, 1)]


def test_prime_powers():
    assert factorize(3**12) == [(3, 12)]
    assert factorize(2**62 - 1) == [(3, 1), (715827883, 1), (2147483647, 1)]


def test_random_roundtrip():
    rng = random.Random(3)
    for _ in range(50):
        m = rng.randrange(2, 2**48)
        factors = factorize(m)
        assert prod(p**e for p, e in factors) == m
        assert all(is_probable_prime(p) for p, _ in factors)
        assert [p for p, _ in factors] == sorted({p for p, _ in factors})


def test_guards():
    with pytest.raises(ValueError):
        factorize(1)
    with pytest.raises(ValueError):
        factorize(2**63)


def test_is_probable_prime():
    known = {2, 3, 5, 7, 524287, 2147483647, 20394401}
    for p in known:
        assert is_probable_prime(p)
    for c in (1, 9, 91, 6361 * 69431, 2**53 - 1):
        assert not is_probable_prime(c)
