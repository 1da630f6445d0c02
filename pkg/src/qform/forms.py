"""Integral quadratic forms: validation, local predicates, reductions, composition.

Binary forms are a x^2 + b xy + c y^2 with integer coefficients. General forms
of rank r carry the upper-triangular coefficients of sum(a_ij x_i x_j, i <= j).
Every form is validated at construction: coefficients coprime (primitive) and
nonzero discriminant (nonsingular over the rationals).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InternalConsistencyError
from .padic import mod_inverse, split_unit


class InvalidFormError(ValueError):
    """Coefficients violate a structural hypothesis (primitive, nonsingular, shape)."""


@dataclass(frozen=True, slots=True)
class BinaryForm:
    a: int
    b: int
    c: int

    rank = 2

    def __post_init__(self):
        g = math.gcd(self.a, self.b, self.c)
        if g != 1:
            raise InvalidFormError(
                f"form ({self.a},{self.b},{self.c}) is not primitive: "
                f"coefficients share the factor {g if g else 0}")
        if self.b * self.b - 4 * self.a * self.c == 0:
            raise InvalidFormError(
                f"form ({self.a},{self.b},{self.c}) is not nonsingular: "
                "discriminant is zero")

    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def evaluate(self, point) -> int:
        if len(point) != 2:
            raise ValueError(f"binary form evaluated at a {len(point)}-tuple")
        x, y = point
        return self.a * x * x + self.b * x * y + self.c * y * y

    def swapped(self) -> "BinaryForm":
        """The form with outer coefficients exchanged; same values, via (x,y) -> (y,x)."""
        return BinaryForm(self.c, self.b, self.a)

    def __str__(self) -> str:
        return f"{self.a}*x^2 + {self.b}*x*y + {self.c}*y^2"


def _det_bareiss(m: list[list[int]]) -> int:
    """Exact integer determinant by fraction-free elimination."""
    n = len(m)
    m = [row[:] for row in m]
    sign = 1
    prev = 1
    for i in range(n - 1):
        if m[i][i] == 0:
            for j in range(i + 1, n):
                if m[j][i]:
                    m[i], m[j] = m[j], m[i]
                    sign = -sign
                    break
            else:
                return 0
        for j in range(i + 1, n):
            for k in range(i + 1, n):
                m[j][k] = (m[j][k] * m[i][i] - m[j][i] * m[i][k]) // prev
        prev = m[i][i]
    return sign * m[-1][-1]


@dataclass(frozen=True, slots=True)
class GeneralForm:
    """Rank-r integral form, coefficients in upper-triangular row order.

    coeffs lists a_11, a_12, ..., a_1r, a_22, ..., a_2r, ..., a_rr.
    """

    rank: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.rank < 1:
            raise InvalidFormError(f"rank must be positive, got {self.rank}")
        want = self.rank * (self.rank + 1) // 2
        if len(self.coeffs) != want:
            raise InvalidFormError(
                f"rank {self.rank} needs {want} coefficients, got {len(self.coeffs)}")
        object.__setattr__(self, "coeffs", tuple(int(v) for v in self.coeffs))
        if math.gcd(*self.coeffs) != 1:
            raise InvalidFormError("form is not primitive: coefficients share a factor")
        if self.determinant() == 0:
            raise InvalidFormError("form is not nonsingular: matrix determinant is zero")

    def coeff(self, i: int, j: int) -> int:
        """Coefficient of x_i x_j, zero-based, any order of i and j."""
        if i > j:
            i, j = j, i
        base = i * self.rank - i * (i - 1) // 2
        return self.coeffs[base + (j - i)]

    def matrix(self) -> list[list[int]]:
        """Symmetric matrix with doubled diagonal, so Q(x) = x^T A x / 2."""
        r = self.rank
        m = [[0] * r for _ in range(r)]
        for i in range(r):
            m[i][i] = 2 * self.coeff(i, i)
            for j in range(i + 1, r):
                m[i][j] = m[j][i] = self.coeff(i, j)
        return m

    def determinant(self) -> int:
        return _det_bareiss(self.matrix())

    def evaluate(self, point) -> int:
        if len(point) != self.rank:
            raise ValueError(
                f"rank {self.rank} form evaluated at a {len(point)}-tuple")
        total = 0
        idx = 0
        for i in range(self.rank):
            for j in range(i, self.rank):
                total += self.coeffs[idx] * point[i] * point[j]
                idx += 1
        return total

    def to_binary(self) -> BinaryForm:
        if self.rank != 2:
            raise InvalidFormError(f"rank {self.rank} form has no binary equivalent")
        return BinaryForm(self.coeffs[0], self.coeffs[1], self.coeffs[2])


@dataclass(frozen=True, slots=True)
class DiscFactorization:
    """disc = p**k * ell with p not dividing ell."""

    p: int
    k: int
    ell: int
    disc: int

    def __post_init__(self):
        if self.p ** self.k * self.ell != self.disc or self.ell % self.p == 0:
            raise InternalConsistencyError(
                f"bad factorization {self.p}**{self.k} * {self.ell} != {self.disc}")


def factor_discriminant(f: BinaryForm, p: int) -> DiscFactorization:
    """Split the discriminant as p**k * ell with ell coprime to p."""
    d = f.discriminant()
    k, ell = split_unit(d, p)
    return DiscFactorization(p=int(p), k=k, ell=ell, disc=d)


def is_isotropic_mod_p(f: BinaryForm, p: int) -> bool:
    """Whether the form has a nonzero root mod p.

    Deliberately a full scan of F_p x F_p; this is the reference the faster
    Legendre criterion gets checked against, so it stays brute force.
    """
    a, b, c = f.a % p, f.b % p, f.c % p
    for x in range(p):
        base = a * x * x
        bx = b * x
        for y in range(p):
            if (x or y) and (base + bx * y + c * y * y) % p == 0:
                return True
    return False


def is_singular_mod_p(f: BinaryForm, p: int) -> bool:
    return f.discriminant() % p == 0


@dataclass(frozen=True, slots=True)
class OddSingularReduction:
    """Outcome of stripping an even power of an odd p from the discriminant.

    reduced has discriminant ell. pull_back sends a reduced-form point to an
    original-form point whose value is p**k times the reduced value, so value
    quotients are preserved exactly.
    """

    original: BinaryForm
    reduced: BinaryForm
    p: int
    k: int
    u: int
    swapped: bool

    def pull_back(self, point) -> tuple[int, int]:
        x, y = point
        big_x = self.p ** (self.k // 2) * x
        px, py = -big_x - self.u * y, y
        return (py, px) if self.swapped else (px, py)


def odd_singular_reduction(f: BinaryForm, p: int) -> OddSingularReduction:
    """Reduce f at an odd prime whose discriminant valuation k is even, >= 2.

    Translating x by the least nonnegative u with 2au = b mod p**k makes the
    middle and last coefficients divisible by p**(k/2) and p**k; dividing them
    out leaves a form of discriminant ell = disc / p**k.
    """
    if p == 2:
        raise ValueError("reduction requires an odd prime")
    fact = factor_discriminant(f, p)
    k, ell = fact.k, fact.ell
    if k < 2 or k % 2:
        raise ValueError(
            f"discriminant valuation must be even and at least 2, got k={k}")
    a, b, c = f.a, f.b, f.c
    swapped = a % p == 0
    if swapped:
        a, c = c, a
        if a % p == 0:
            raise InternalConsistencyError(
                "p divides both outer coefficients of a primitive form")
    pk = p ** k
    half = p ** (k // 2)
    u = b * mod_inverse(2 * a, pk) % pk
    mid = 2 * u * a - b
    last = u * u * a - u * b + c
    if mid % half or last % pk:
        raise InternalConsistencyError("reduction divisions are not exact")
    reduced = BinaryForm(a, mid // half, last // pk)
    if reduced.discriminant() != ell:
        raise InternalConsistencyError(
            f"reduced discriminant {reduced.discriminant()} != {ell}")
    return OddSingularReduction(f, reduced, int(p), k, u, swapped)


def reduce_odd_singular(f: BinaryForm, p: int, k: int) -> BinaryForm:
    """Reduced form of discriminant ell; k must equal the discriminant valuation."""
    red = odd_singular_reduction(f, p)
    if red.k != k:
        raise ValueError(f"k={k} does not match the discriminant valuation {red.k}")
    return red.reduced


@dataclass(frozen=True, slots=True)
class TwoSingularReduction:
    """Outcome of stripping an even power of 2 when ell = 1 mod 8.

    Same contract as the odd case: pull_back scales values by 2**k and so
    preserves value quotients exactly.
    """

    original: BinaryForm
    reduced: BinaryForm
    k: int
    q: int
    swapped: bool

    def pull_back(self, point) -> tuple[int, int]:
        x, y = point
        big_x = 2 ** (self.k // 2) * x
        px, py = big_x + self.q * y, y
        return (py, px) if self.swapped else (px, py)


def two_singular_reduction(f: BinaryForm) -> TwoSingularReduction:
    """Reduce f at 2 when the discriminant valuation k is even and ell = 1 mod 8.

    b is even as soon as 2 divides the discriminant, and primitivity then makes
    one of a, c odd. Translating x by q = -b/(2a) + 2**(k/2-1) mod 2**k lets
    2**(k/2) and 2**k be divided out of the last two coefficients; ell = 1 mod 8
    is what makes the second division exact.
    """
    fact = factor_discriminant(f, 2)
    k, ell = fact.k, fact.ell
    if k < 2 or k % 2:
        raise ValueError(
            f"discriminant valuation must be even and at least 2, got k={k}")
    if ell % 8 != 1:
        raise ValueError(f"unit cofactor must be 1 mod 8, got {ell % 8}")
    a, b, c = f.a, f.b, f.c
    if b % 2:
        raise InternalConsistencyError("even discriminant forces an even middle coefficient")
    swapped = a % 2 == 0
    if swapped:
        a, c = c, a
        if a % 2 == 0:
            raise InternalConsistencyError(
                "2 divides both outer coefficients of a primitive form")
    pk = 2 ** k
    half = 2 ** (k // 2)
    q = (-(b // 2) * mod_inverse(a, pk) + half // 2) % pk
    mid = 2 * a * q + b
    last = a * q * q + b * q + c
    if mid % half or last % pk:
        raise InternalConsistencyError("reduction divisions are not exact")
    reduced = BinaryForm(a, mid // half, last // pk)
    if reduced.discriminant() != ell:
        raise InternalConsistencyError(
            f"reduced discriminant {reduced.discriminant()} != {ell}")
    return TwoSingularReduction(f, reduced, k, q, swapped)


def reduce_two_singular(f: BinaryForm, k: int) -> BinaryForm:
    """Reduced form of discriminant ell; k must equal the discriminant valuation."""
    red = two_singular_reduction(f)
    if red.k != k:
        raise ValueError(f"k={k} does not match the discriminant valuation {red.k}")
    return red.reduced


def arnold_compose(f: BinaryForm, p1, p2, p3) -> tuple[int, int]:
    """A point where f takes the product of its values at p1, p2, p3.

    f(result) == f(p1) * f(p2) * f(p3), exactly, for every integer input.
    """
    a, b, c = f.a, f.b, f.c
    x1, y1 = p1
    x2, y2 = p2
    x3, y3 = p3
    x = ((a * x1 * x2 - c * y1 * y2) * x3
         + (c * (y1 * x2 + x1 * y2) + b * x1 * x2) * y3)
    y = ((a * (x1 * y2 + x2 * y1) + b * y1 * y2) * x3
         + (-a * x1 * x2 + c * y1 * y2) * y3)
    return x, y


def change_variables(f: BinaryForm, m) -> BinaryForm:
    """The form f(m11 x + m12 y, m21 x + m22 y).

    For unimodular m this keeps the value set and the discriminant.
    """
    (m11, m12), (m21, m22) = m
    a2 = f.evaluate((m11, m21))
    c2 = f.evaluate((m12, m22))
    b2 = (2 * f.a * m11 * m12 + f.b * (m11 * m22 + m12 * m21)
          + 2 * f.c * m21 * m22)
    return BinaryForm(a2, b2, c2)


def parse_form(text: str) -> BinaryForm | GeneralForm:
    """Parse "a,b,c" to a binary form or "r; a11,...,arr" to a general form.

    General coefficients come in upper-triangular row order. Whitespace is
    ignored everywhere.
    """
    s = text.strip()
    try:
        if ";" in s:
            left, right = s.split(";", 1)
            rank = int(left)
            coeffs = tuple(int(tok) for tok in right.split(","))
            return GeneralForm(rank, coeffs)
        parts = [int(tok) for tok in s.split(",")]
    except ValueError as exc:
        if isinstance(exc, InvalidFormError):
            raise
        raise InvalidFormError(f"malformed form text {text!r}") from None
    if len(parts) != 3:
        raise InvalidFormError(
            f"binary form text needs 3 coefficients, got {len(parts)}")
    return BinaryForm(*parts)


def format_form(f: BinaryForm | GeneralForm) -> str:
    """Inverse of parse_form."""
    if isinstance(f, BinaryForm):
        return f"{f.a},{f.b},{f.c}"
    return f"{f.rank}; " + ",".join(str(v) for v in f.coeffs)
