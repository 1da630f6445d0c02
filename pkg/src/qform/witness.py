"""Constructive evidence for density verdicts.

Dense side: a Witness is a pair of lattice points whose value quotient lands
within p**-r of a requested target rational. Preferred route is lifting a
representation of each target component to high precision (after stripping the
discriminant's p-power if needed); bounded lattice enumeration is the fallback.

Not-dense side: an ExclusionCertificate names a target rational and a radius
exponent e such that the open ball of radius p**-e around the target contains
no quotient at all, and verifies that claim by exhaustive search.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import gcd

from .decide import (LEAF_ANISOTROPIC, LEAF_ODD_K_ODD, LEAF_ODD_NONRESIDUE,
                     LEAF_TWO_K_ODD, decide, decide_binary_tree)
from .errors import BudgetExceededError, InternalConsistencyError
from .forms import (BinaryForm, GeneralForm, factor_discriminant,
                    is_isotropic_mod_p, is_singular_mod_p,
                    odd_singular_reduction, two_singular_reduction)
from .padic import INFINITY, legendre, mod_inverse, valuation

DEFAULT_BUDGET = 50


def quotient_error_valuation(num_value: int, den_value: int,
                             target_num: int, target_den: int,
                             p: int) -> int | float:
    """Exact valuation of num_value/den_value - target_num/target_den.

    INFINITY when the quotient hits the target on the nose.
    """
    if den_value == 0 or target_den == 0:
        raise ValueError("denominators must be nonzero")
    delta = num_value * target_den - target_num * den_value
    if delta == 0:
        return INFINITY
    return valuation(delta, p) - valuation(den_value, p) - valuation(target_den, p)


def lift_representation(f: BinaryForm, p: int, n: int, r: int) -> tuple[int, int]:
    """(x, y) with f(x, y) = n mod p**r, for odd p.

    Needs f isotropic and nonsingular mod p; such a form represents every
    residue. The base step scans F_p x F_p for a representative at which some
    partial derivative is a unit; each later step corrects along that
    direction by a multiple of p**s, which never disturbs the unit condition.
    """
    if p == 2:
        raise ValueError("this lift needs an odd prime")
    if r < 1:
        raise ValueError("precision must be at least 1")
    if is_singular_mod_p(f, p) or not is_isotropic_mod_p(f, p):
        raise ValueError("lifting needs a form isotropic and nonsingular mod p")
    a, b, c = f.a, f.b, f.c
    found = None
    for x in range(p):
        for y in range(p):
            if x == 0 and y == 0:
                continue
            if (a * x * x + b * x * y + c * y * y - n) % p:
                continue
            if (2 * a * x + b * y) % p or (b * x + 2 * c * y) % p:
                found = (x, y)
                break
        if found:
            break
    if found is None:
        raise InternalConsistencyError(
            f"no representative of {n} mod {p}; the form should be universal")
    x, y = found
    for s in range(1, r):
        ps = p ** s
        m = (f.evaluate((x, y)) - n) // ps
        # f(x + i p^s, y) = f(x, y) + (2ax + by) i p^s mod p^(s+1), same shape in y
        dx = (2 * a * x + b * y) % p
        if dx:
            x += (-m * mod_inverse(dx, p)) % p * ps
        else:
            dy = (b * x + 2 * c * y) % p
            if not dy:
                raise InternalConsistencyError("both partial derivatives vanished mod p")
            y += (-m * mod_inverse(dy, p)) % p * ps
    if (f.evaluate((x, y)) - n) % p ** r:
        raise InternalConsistencyError("lift lost the target residue")
    return x, y


def lift_representation_two(f: BinaryForm, n: int, r: int) -> tuple[int, int]:
    """(x, y) with f(x, y) = n mod 2**r.

    Needs f isotropic and nonsingular mod 2, i.e. b odd and a or c even. The
    coordinate multiplying the odd outer coefficient stays odd throughout:
    y when a is even, x otherwise (the two cases trade places via (x,y)->(y,x)).
    """
    if r < 1:
        raise ValueError("precision must be at least 1")
    if f.discriminant() % 2 == 0:
        raise ValueError("lifting needs a form nonsingular mod 2")
    if f.a % 2 and f.c % 2:
        raise ValueError("lifting needs a form isotropic mod 2")
    swapped = f.a % 2 == 1
    a, b, c = (f.c, f.b, f.a) if swapped else (f.a, f.b, f.c)
    x, y = (n - c) % 2, 1
    for s in range(1, r):
        ps = 2 ** s
        m = (a * x * x + b * x * y + c * y * y - n) // ps
        # f(x + i 2^s, y) = f(x, y) + b i y 2^s mod 2^(s+1), and b, y are odd
        x += m % 2 * ps
    if swapped:
        x, y = y, x
    if (f.evaluate((x, y)) - n) % 2 ** r:
        raise InternalConsistencyError("lift lost the target residue")
    return x, y


@dataclass(frozen=True, slots=True)
class Witness:
    """A validated approximation of a target rational by a value quotient."""

    num_point: tuple[int, ...]
    den_point: tuple[int, ...]
    target_num: int
    target_den: int
    precision: int
    strategy: str
    achieved_valuation: int | float

    @classmethod
    def build(cls, f, p: int, num_point, den_point, target_num: int,
              target_den: int, r: int, strategy: str) -> "Witness":
        """Construct after revalidating from scratch with exact arithmetic."""
        den_value = f.evaluate(den_point)
        if den_value == 0:
            raise InternalConsistencyError("witness denominator evaluates to zero")
        achieved = quotient_error_valuation(
            f.evaluate(num_point), den_value, target_num, target_den, p)
        if achieved < r:
            raise InternalConsistencyError(
                f"witness reaches valuation {achieved}, needed {r}")
        return cls(tuple(num_point), tuple(den_point), target_num, target_den,
                   r, strategy, achieved)

    # binary accessors: numerator point (x, y), denominator point (z, w)
    @property
    def x(self) -> int:
        return self.num_point[0]

    @property
    def y(self) -> int:
        return self.num_point[1]

    @property
    def z(self) -> int:
        return self.den_point[0]

    @property
    def w(self) -> int:
        return self.den_point[1]

    def to_json_dict(self) -> dict:
        target = f"{self.target_num}/{self.target_den}"
        if len(self.num_point) == 2:
            return {"x": self.x, "y": self.y, "z": self.z, "w": self.w,
                    "target": target, "r": self.precision, "strategy": self.strategy}
        return {"x": list(self.num_point), "z": list(self.den_point),
                "target": target, "r": self.precision, "strategy": self.strategy}


@dataclass(frozen=True, slots=True)
class ExclusionCertificate:
    """A ball no quotient enters: |q - target| < p**-radius_exponent never holds."""

    target_num: int
    target_den: int
    radius_exponent: int
    justification: str

    def to_json_dict(self) -> dict:
        return {"target": f"{self.target_num}/{self.target_den}",
                "radius_exp": self.radius_exponent,
                "justification": self.justification}


def _reduce_target(num: int, den: int) -> tuple[int, int]:
    if den == 0:
        raise ValueError("target denominator is zero")
    if num == 0:
        return 0, 1
    g = gcd(num, den)
    num, den = num // g, den // g
    if den < 0:
        num, den = -num, -den
    return num, den


def approximate_quotient(f, p: int, target_num: int, target_den: int,
                         r: int, budget: int | None = None) -> Witness:
    """Witness that some value quotient lies within p**-r of the target.

    Only meaningful on dense verdicts; raises ValueError otherwise. Binary
    targets go through lifting (stripping the discriminant's p-power first
    when the form is singular mod p); other ranks and any structural surprise
    fall back to bounded lattice enumeration.
    """
    if r < 1:
        raise ValueError("precision must be at least 1")
    tn, td = _reduce_target(target_num, target_den)
    verdict = decide(f, p)
    if not verdict.dense:
        raise ValueError(
            f"quotients are not dense at p={p} ({verdict.theorem_tag}); "
            "no witness exists")
    binary = None
    if isinstance(f, BinaryForm):
        binary = f
    elif f.rank == 2:
        binary = f.to_binary()
    if binary is not None:
        try:
            return _structured_witness(f, binary, p, tn, td, r)
        except (ValueError, InternalConsistencyError):
            pass
    return _enumeration_witness(f, p, tn, td, r, budget)


def _structured_witness(f, binary: BinaryForm, p: int, tn: int, td: int,
                        r: int) -> Witness:
    """Lift both target components to precision r + 2*val(td); quotient follows.

    With N = tn and D = td mod p**M for M = r + 2*val(td), the error
    N*td - tn*D is divisible by p**M while val(D) = val(td), which pushes the
    quotient within p**-r of tn/td.
    """
    precision = r + 2 * int(valuation(td, p))
    fact = factor_discriminant(binary, p)
    if fact.k == 0:
        lift = (lambda m, s: lift_representation_two(binary, m, s)) if p == 2 \
            else (lambda m, s: lift_representation(binary, p, m, s))
        num_point = lift(tn, precision)
        den_point = lift(td, precision)
        return Witness.build(f, p, num_point, den_point, tn, td, r, "lift")
    reduction = two_singular_reduction(binary) if p == 2 \
        else odd_singular_reduction(binary, p)
    reduced = reduction.reduced
    lift = (lambda m, s: lift_representation_two(reduced, m, s)) if p == 2 \
        else (lambda m, s: lift_representation(reduced, p, m, s))
    # pulled-back points scale both values by p**k, so the quotient is unchanged
    num_point = reduction.pull_back(lift(tn, precision))
    den_point = reduction.pull_back(lift(td, precision))
    return Witness.build(f, p, num_point, den_point, tn, td, r, "reduce-lift")


def _box_schedule(limit: int):
    b = 4
    while b < limit:
        yield b
        b *= 2
    yield limit


def _extend_value_points(f, points: dict, lo: int, hi: int) -> None:
    """Record the first lattice point (in scan order) for each new value."""
    for pt in product(range(-hi, hi + 1), repeat=f.rank):
        if max(abs(v) for v in pt) <= lo:
            continue
        val = f.evaluate(pt)
        if val not in points:
            points[val] = pt
    if lo == 0:
        zero = (0,) * f.rank
        points.setdefault(f.evaluate(zero), zero)


def _match_pair(points: dict, p: int, tn: int, td: int, r: int):
    """First value pair (in deterministic order) approximating tn/td to p**-r.

    For a denominator value d with s = val(d), the requirement on a numerator
    value N is the single congruence N*td = tn*d mod p**(r + s + val(td)).
    """
    g = int(valuation(td, p))
    tdu = td // p ** g
    ordered = sorted(points)
    tables: dict[int, dict[int, int]] = {}
    for d in sorted((v for v in points if v != 0), key=lambda v: (abs(v), v)):
        m = p ** (r + int(valuation(d, p)))
        rhs = tn * d
        if rhs:
            if valuation(rhs, p) < g:
                continue
            res = rhs // p ** g % m * mod_inverse(tdu % m, m) % m
        else:
            res = 0
        table = tables.get(m)
        if table is None:
            table = {}
            for v in ordered:
                table.setdefault(v % m, v)
            tables[m] = table
        num = table.get(res)
        if num is not None:
            return points[num], points[d]
    return None


def _enumeration_witness(f, p: int, tn: int, td: int, r: int,
                         budget: int | None) -> Witness:
    limit = DEFAULT_BUDGET if budget is None else budget
    points: dict[int, tuple[int, ...]] = {}
    lo = 0
    for hi in _box_schedule(max(limit, 1)):
        _extend_value_points(f, points, lo, hi)
        lo = hi
        pair = _match_pair(points, p, tn, td, r)
        if pair is not None:
            return Witness.build(f, p, pair[0], pair[1], tn, td, r, "enumeration")
    raise BudgetExceededError(
        f"no witness found with coordinates up to {limit}", limit)


def least_nonresidue(p: int) -> int:
    """Smallest positive quadratic nonresidue modulo an odd prime."""
    n = 2
    while legendre(n, p) != -1:
        n += 1
    return n


def exclusion_certificate(f: BinaryForm, p: int,
                          verify_bound: int = 50) -> ExclusionCertificate:
    """Certificate for a not-dense verdict, checked by exhaustive search.

    The claim is strict: no quotient q satisfies
    val(q - target) > radius_exponent. Verification enumerates every value
    pair with coordinates up to verify_bound and confirms none violates it.
    """
    verdict = decide_binary_tree(f, p)
    if verdict.dense:
        raise ValueError("quotients are dense; no exclusion certificate exists")
    tag = verdict.theorem_tag
    k, ell = verdict.factorization.k, verdict.factorization.ell
    if tag == LEAF_ANISOTROPIC:
        target, radius = p, 1
        why = "every value has even valuation, so no quotient has valuation 1"
    elif tag == LEAF_ODD_NONRESIDUE:
        target, radius = p, 1
        why = ("stripping p**k leaves a form anisotropic mod p, "
               "so quotient valuations stay even")
    elif tag == LEAF_ODD_K_ODD:
        target, radius = least_nonresidue(p), k
        why = (f"odd k forbids quotients within p**-{k} "
               f"of any nonresidue unit")
    elif tag == LEAF_TWO_K_ODD:
        target, radius = 5, k + 2
        why = f"odd k forbids quotients within 2**-{k + 2} of 5"
    elif ell % 8 == 5:
        target, radius = 2, 1
        why = "ell = 5 mod 8 keeps every quotient valuation even"
    else:
        target, radius = 3, 3
        why = "ell = 3 or 7 mod 8 keeps quotients away from 3 mod 16"
    _verify_exclusion(f, p, target, radius, verify_bound)
    return ExclusionCertificate(target, 1, radius, f"{tag}: {why}")


def _verify_exclusion(f: BinaryForm, p: int, target: int, radius: int,
                      bound: int) -> None:
    """Exhaustively confirm no quotient enters the open ball around the target.

    A violating pair would satisfy N = target*D mod p**(s + radius + 1) with
    s = val(D), so it suffices to compare residue tables per valuation class.
    """
    values = set()
    for x in range(-bound, bound + 1):
        for y in range(-bound, bound + 1):
            values.add(f.evaluate((x, y)))
    by_valuation: dict[int, list[int]] = {}
    for v in values:
        if v:
            by_valuation.setdefault(int(valuation(v, p)), []).append(v)
    for s, dens in sorted(by_valuation.items()):
        m = p ** (s + radius + 1)
        residues = {v % m for v in values}
        for d in dens:
            if target * d % m in residues:
                raise InternalConsistencyError(
                    f"exclusion certificate refuted: a quotient approaches "
                    f"{target} closer than p**-{radius} (denominator value {d})")
