import random
from fractions import Fraction

import pytest

from sepminor.intmath import ceil_log2_mul, ceil_pow, le_log2_mul


def test_ceil_pow_spot_values():
    assert ceil_pow(4, Fraction(1)) == 4
    assert ceil_pow(3, Fraction(1, 2)) == 2
    assert ceil_pow(9, Fraction(1)) == 9
    assert ceil_pow(5, Fraction(0)) == 1
    assert ceil_pow(1, Fraction(7, 3)) == 1
    assert ceil_pow(8, Fraction(2, 3)) == 4
    assert ceil_pow(9, Fraction(1, 2)) == 3  # exact power stays exact


def test_ceil_pow_defining_property_random():
    rng = random.Random(5)
    for _ in range(300):
        m = rng.randint(1, 400)
        e = Fraction(rng.randint(0, 9), rng.randint(1, 9))
        k = ceil_pow(m, e)
        p, q = e.numerator, e.denominator
        assert k**q >= m**p
        if k > 1:
            assert (k - 1) ** q < m**p


def test_ceil_pow_monotone_in_exponent():
    exps = [Fraction(i, 12) for i in range(0, 25)]
    for m in (2, 5, 17):
        values = [ceil_pow(m, e) for e in exps]
        assert values == sorted(values)


def test_ceil_log2_spot():
    assert ceil_log2_mul(2, 1024) == 20
    assert ceil_log2_mul(1, 3) == 2
    assert ceil_log2_mul(0, 99) == 0
    assert ceil_log2_mul(3, 1) == 0


def test_ceil_log2_is_least_integer():
    rng = random.Random(6)
    for _ in range(200):
        c = rng.randint(1, 6)
        n = rng.randint(1, 500)
        d = ceil_log2_mul(c, n)
        assert 2**d >= n**c
        if d > 0:
            assert 2 ** (d - 1) < n**c


def test_le_log2_mul_matches_definition():
    rng = random.Random(8)
    for _ in range(200):
        a = rng.randint(-3, 40)
        c = rng.randint(0, 5)
        n = rng.randint(1, 60)
        assert le_log2_mul(a, c, n) == (2 ** max(a, 0) <= n**c if a > 0 else True)


def test_invalid_arguments():
    with pytest.raises(ValueError):
        ceil_pow(0, Fraction(1))
    with pytest.raises(ValueError):
        ceil_pow(3, Fraction(-1, 2))
    with pytest.raises(ValueError):
        ceil_log2_mul(2, 0)
