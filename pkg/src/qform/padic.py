"""Exact p-adic arithmetic on integers and rationals.

Valuations, Legendre symbols, unit parts, and the square-class structure of
p-adic numbers. Everything runs on plain Python integers, so there is no
overflow anywhere in the pipeline.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

INFINITY = math.inf

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
# Deterministic Miller-Rabin witness set, valid for every n below this bound.
_MR_LIMIT = 3_317_044_064_679_887_385_961_981


def is_prime(n: int) -> bool:
    """Deterministic primality test (valid for n < 3.3e24)."""
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n % q == 0:
            return n == q
    if n >= _MR_LIMIT:
        raise ValueError(f"{n} is beyond the deterministic primality range")
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Prime(int):
    """An integer certified prime at construction."""

    __slots__ = ()

    def __new__(cls, value: int) -> "Prime":
        if not is_prime(int(value)):
            raise ValueError(f"{value} is not a prime number")
        return super().__new__(cls, value)


def valuation(n: int, p: int) -> int | float:
    """Exponent of the largest power of p dividing n. Zero gets INFINITY."""
    if n == 0:
        return INFINITY
    n = abs(n)
    if p == 2:
        return (n & -n).bit_length() - 1
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def split_unit(n: int, p: int) -> tuple[int, int]:
    """(v, u) with n = p**v * u and p not dividing u. Requires n != 0."""
    if n == 0:
        raise ValueError("zero has no unit part")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


def valuation_rational(num: int, den: int, p: int) -> int | float:
    """Valuation of num/den; INFINITY when num is zero."""
    if den == 0:
        raise ValueError("denominator is zero")
    if num == 0:
        return INFINITY
    return valuation(num, p) - valuation(den, p)


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a|p) for an odd prime p: 1, -1, or 0."""
    if p == 2:
        raise ValueError("Legendre symbol needs an odd prime")
    a %= p
    if a == 0:
        return 0
    t = pow(a, (p - 1) // 2, p)
    return 1 if t == 1 else -1


def mod_inverse(a: int, m: int) -> int:
    """Inverse of a modulo m, in [1, m-1]."""
    if m < 2:
        raise ValueError("modulus must be at least 2")
    try:
        return pow(a, -1, m)
    except ValueError:
        raise ValueError(f"{a} is not invertible modulo {m}") from None


def is_square_in_qp(num: int, den: int, p: int) -> bool:
    """Whether num/den is a square p-adically. Zero counts as a square.

    A nonzero rational is a square exactly when its valuation is even and its
    unit part u satisfies: u a quadratic residue mod p (odd p), or u = 1 mod 8
    (p = 2).
    """
    if den == 0:
        raise ValueError("denominator is zero")
    if num == 0:
        return True
    vn, un = split_unit(num, p)
    vd, ud = split_unit(den, p)
    if (vn - vd) % 2:
        return False
    if p == 2:
        return un * pow(ud, -1, 8) % 8 == 1
    return legendre(un * pow(ud, -1, p), p) == 1


@dataclass(frozen=True, slots=True)
class SquareClass:
    """Square class of a nonzero p-adic number.

    parity is the valuation mod 2. unit_class is the Legendre symbol of the
    unit part for odd p, and the unit part mod 8 for p = 2. Two numbers lie in
    the same class exactly when their quotient is a square.
    """

    prime: int
    parity: int
    unit_class: int


def square_class(num: int, den: int, p: int) -> SquareClass:
    """Square class of the nonzero rational num/den in the p-adic field."""
    if den == 0:
        raise ValueError("denominator is zero")
    if num == 0:
        raise ValueError("zero has no square class")
    vn, un = split_unit(num, p)
    vd, ud = split_unit(den, p)
    parity = (vn - vd) % 2
    if p == 2:
        unit_class = un * pow(ud, -1, 8) % 8
    else:
        unit_class = legendre(un * pow(ud, -1, p), p)
    return SquareClass(int(p), parity, unit_class)


class PAdicValue:
    """A rational viewed p-adically: valuation plus unit residues on demand.

    Zero is carried with infinite valuation and no unit part. Instances are
    never mutated after construction.
    """

    __slots__ = ("prime", "valuation", "_unit_num", "_unit_den")

    def __init__(self, num: int, den: int, prime: int):
        if den == 0:
            raise ValueError("denominator is zero")
        self.prime = prime
        if num == 0:
            self.valuation: int | float = INFINITY
            self._unit_num = 0
            self._unit_den = 1
        else:
            vn, un = split_unit(num, prime)
            vd, ud = split_unit(den, prime)
            self.valuation = vn - vd
            self._unit_num = un
            self._unit_den = ud

    def is_zero(self) -> bool:
        return self.valuation == INFINITY

    def unit_residue(self, r: int) -> int:
        """Unit part modulo prime**r; always coprime to the prime."""
        if r < 1:
            raise ValueError("precision must be at least 1")
        if self.is_zero():
            raise ValueError("zero has no unit part")
        m = self.prime ** r
        return self._unit_num * mod_inverse(self._unit_den, m) % m

    def abs_value(self) -> float:
        """The real number p**(-valuation)."""
        if self.is_zero():
            return 0.0
        return float(self.prime) ** (-self.valuation)

    def __repr__(self) -> str:
        if self.is_zero():
            return f"PAdicValue(0, p={self.prime})"
        return (f"PAdicValue(p={self.prime}, val={self.valuation}, "
                f"unit={self._unit_num}/{self._unit_den})")
