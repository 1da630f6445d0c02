import math
import random

import pytest

from qform import (INFINITY, PAdicValue, Prime, SquareClass, is_prime,
                   is_square_in_qp, legendre, mod_inverse, split_unit,
                   square_class, valuation, valuation_rational)

rng = random.Random(0x5eed)

PRIMES = (2, 3, 5, 7, 11, 13)


def test_valuation_examples():
    assert valuation(12, 2) == 2
    assert valuation(12, 3) == 1
    assert valuation(-250, 5) == 3
    assert valuation(7, 5) == 0
    assert valuation(1024, 2) == 10
    assert valuation(0, 3) == INFINITY


def test_valuation_random_reconstruction():
    for _ in range(500):
        p = rng.choice(PRIMES)
        u = rng.randint(1, 10_000)
        while u % p == 0:
            u += 1
        e = rng.randint(0, 12)
        sign = rng.choice((1, -1))
        n = sign * u * p**e
        assert valuation(n, p) == e
        v, unit = split_unit(n, p)
        assert v == e
        assert unit == sign * u
        assert unit * p**v == n


def test_split_unit_rejects_zero():
    with pytest.raises(ValueError):
        split_unit(0, 5)


def test_valuation_multiplicative():
    for _ in range(300):
        p = rng.choice(PRIMES)
        m = rng.randint(-9999, 9999) or 1
        n = rng.randint(-9999, 9999) or 1
        assert valuation(m * n, p) == valuation(m, p) + valuation(n, p)


def test_valuation_ultrametric():
    for _ in range(300):
        p = rng.choice(PRIMES)
        m = rng.randint(-9999, 9999)
        n = rng.randint(-9999, 9999)
        both = min(valuation(m, p), valuation(n, p))
        assert valuation(m + n, p) >= both
        if valuation(m, p) != valuation(n, p):
            assert valuation(m + n, p) == both


def test_valuation_rational():
    assert valuation_rational(12, 8, 2) == -1
    assert valuation_rational(3, 5, 5) == -1
    assert valuation_rational(50, 2, 5) == 2
    assert valuation_rational(0, 7, 3) == INFINITY
    with pytest.raises(ValueError):
        valuation_rational(1, 0, 3)


def test_is_prime_examples():
    assert is_prime(2)
    assert is_prime(3)
    assert is_prime(97)
    assert is_prime(2**31 - 1)
    assert not is_prime(1)
    assert not is_prime(0)
    assert not is_prime(-7)
    assert not is_prime(561)        # Carmichael
    assert not is_prime(1_000_001)
    assert is_prime(1_000_003)


def test_prime_type():
    assert Prime(13) == 13
    assert isinstance(Prime(13), int)
    for bad in (0, 1, 4, 9, 561):
        with pytest.raises(ValueError):
            Prime(bad)


def test_legendre_examples():
    assert legendre(-4, 5) == 1     # -4 = 1 mod 5, a square
    assert legendre(-4, 3) == -1    # -4 = 2 mod 3, not a square
    assert legendre(2, 7) == 1
    assert legendre(10, 5) == 0
    with pytest.raises(ValueError):
        legendre(3, 2)


def test_legendre_matches_bruteforce():
    for p in (3, 5, 7, 11, 13, 17):
        squares = {x * x % p for x in range(1, p)}
        for a in range(-2 * p, 2 * p + 1):
            expected = 0 if a % p == 0 else (1 if a % p in squares else -1)
            assert legendre(a, p) == expected


def test_legendre_multiplicative():
    for _ in range(300):
        p = rng.choice((3, 5, 7, 11, 13))
        a = rng.randint(-500, 500)
        b = rng.randint(-500, 500)
        assert legendre(a * b, p) == legendre(a, p) * legendre(b, p)


def test_mod_inverse():
    for _ in range(200):
        m = rng.randint(2, 10_000)
        a = rng.randint(1, m - 1)
        if math.gcd(a, m) != 1:
            with pytest.raises(ValueError):
                mod_inverse(a, m)
        else:
            assert a * mod_inverse(a, m) % m == 1


def _square_in_qp_bruteforce(num, den, p):
    # num/den is a square iff num*den is: clear the denominator by den**2.
    n = num * den
    if n == 0:
        return True
    v = valuation(n, p)
    m = v + (3 if p == 2 else 1)
    target = n % p**m
    return any(x * x % p**m == target for x in range(p**m))


def test_is_square_in_qp_matches_bruteforce():
    for p in (2, 3, 5, 7):
        for num in range(-40, 41):
            for den in (1, 2, 3, p, p * p, -p):
                if num == 0:
                    assert is_square_in_qp(num, den, p)
                    continue
                assert is_square_in_qp(num, den, p) == \
                    _square_in_qp_bruteforce(num, den, p), (num, den, p)


def test_is_square_in_qp_examples():
    assert is_square_in_qp(4, 1, 5)
    assert is_square_in_qp(-4, 1, 5)
    assert not is_square_in_qp(5, 1, 5)
    assert is_square_in_qp(25, 1, 5)
    assert not is_square_in_qp(2, 1, 2)
    assert is_square_in_qp(17, 1, 2)    # 17 = 1 mod 8
    assert not is_square_in_qp(3, 1, 2)
    assert is_square_in_qp(9, 16, 2)
    assert is_square_in_qp(2, 1, 7)
    assert is_square_in_qp(7, 28, 7)
    assert not is_square_in_qp(1, 3, 7)


def test_square_class_counts():
    # every nonzero value lands in one of finitely many classes:
    # 4 for odd p, 8 for p = 2
    for p in (3, 5, 7):
        classes = {square_class(n, 1, p) for n in range(1, p**4)}
        assert len(classes) == 4
    classes2 = {square_class(n, 1, 2) for n in range(1, 16)}
    assert len(classes2) == 8


def test_square_class_invariants():
    for _ in range(300):
        p = rng.choice(PRIMES)
        n = rng.randint(1, 5000)
        t = rng.randint(1, 60)
        assert square_class(n, 1, p) == square_class(n * t * t, 1, p)
        cls = square_class(n, 1, p)
        assert isinstance(cls, SquareClass)
        assert cls.parity == valuation(n, p) % 2
    with pytest.raises(ValueError):
        square_class(0, 1, 5)
    with pytest.raises(ValueError):
        square_class(3, 0, 5)


def test_square_class_square_detection():
    for p in (2, 3, 5, 7, 11):
        for num in range(1, 60):
            for den in (1, 3, p):
                cls = square_class(num, den, p)
                trivial = cls.parity == 0 and cls.unit_class == 1
                assert trivial == is_square_in_qp(num, den, p)


def test_padic_value():
    x = PAdicValue(250, 3, Prime(5))    # 250/3 = 2 * 5^3 / 3
    assert x.valuation == 3
    assert not x.is_zero()
    assert x.abs_value() == 5.0**-3
    # unit part 2/3 = 2 * inverse(3) mod 25 = 2 * 17 = 34 = 9
    assert x.unit_residue(2) == 9

    z = PAdicValue(0, 1, Prime(5))
    assert z.is_zero()
    assert z.valuation == INFINITY
    assert z.abs_value() == 0.0
