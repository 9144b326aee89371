import math

import pytest

from poissonchain import pseudolattice as pl


def test_prime_power_seq_known_values():
    assert pl.prime_power_seq(1).value == 2
    assert pl.prime_power_seq(2).value == 3
    assert pl.prime_power_seq(3).value == 4
    assert pl.prime_power_seq(3).base == 2
    assert pl.prime_power_seq(3).exponent == 2
    assert pl.prime_power_seq(10).value == 16
    # the paper's opening run: 2, 3, 4, 5, 7, 8, 9, 11, 13, 16
    got = [pl.prime_power_seq(k).value for k in range(1, 11)]
    assert got == [2, 3, 4, 5, 7, 8, 9, 11, 13, 16]


def test_prime_power_seq_rejects_zero():
    with pytest.raises(ValueError):
        pl.prime_power_seq(0)


def test_prime_power_fields_consistent():
    for k in range(1, 500):
        q = pl.prime_power_seq(k)
        assert q.base ** q.exponent == q.value
        assert q.index == k


def test_prime_power_seq_strictly_increasing():
    values = [pl.prime_power_seq(k).value for k in range(1, 2000)]
    assert all(a < b for a, b in zip(values, values[1:]))


def _is_prime(n):
    if n < 2:
        return False
    return all(n % d for d in range(2, int(math.isqrt(n)) + 1))


def test_prime_power_seq_matches_bruteforce():
    oracle = []
    x = 2
    while len(oracle) < 300:
        m, p = x, None
        for d in range(2, x + 1):
            if x % d == 0:
                p = d
                break
        while m % p == 0:
            m //= p
        if m == 1 and _is_prime(p):
            oracle.append(x)
        x += 1
    got = [pl.prime_power_seq(k).value for k in range(1, 301)]
    assert got == oracle


def test_intensity_known_values():
    assert pl.intensity(1).w == 1
    assert pl.intensity(2).w == 3
    assert pl.intensity(12).w == 96
    assert pl.intensity(6).w == 24
    assert pl.intensity(4).w == 12


def test_intensity_rejects_nonpositive():
    with pytest.raises(ValueError):
        pl.intensity(0)


def test_intensity_gcd_counting_oracle():
    # J2(n) counts pairs (a, b) in [0, n)^2 with gcd(a, b, n) = 1
    for n in range(1, 120):
        count = sum(
            1
            for a in range(n)
            for b in range(n)
            if math.gcd(math.gcd(a, b), n) == 1
        )
        assert pl.intensity(n).w == count


def test_partition_known_values():
    assert pl.verify_partition(1)
    assert sum(pl.intensity(d).w for d in (1, 2, 3, 6)) == 36
    assert pl.verify_partition(6)
    assert sum(pl.intensity(d).w for d in (1, 2, 3, 4, 6, 12)) == 144
    assert pl.verify_partition(12)


def test_partition_holds_broadly():
    assert all(pl.verify_partition(n) for n in range(1, 2001))


def test_prime_power_intensity_exceeds_half_square():
    for k in range(1, 400):
        q = pl.prime_power_seq(k)
        w = pl.intensity(q.value).w
        assert w > q.value ** 2 / 2
        assert 1 - 1 / q.base ** 2 >= 0.5


def test_divisors():
    assert pl.divisors(1) == [1]
    assert pl.divisors(12) == [1, 2, 3, 4, 6, 12]
    assert pl.divisors(49) == [1, 7, 49]
