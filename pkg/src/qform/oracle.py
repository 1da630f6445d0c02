"""Brute-force oracle: residue coverage of value quotients mod p**r.

Independent of the deciders: it enumerates lattice points, pairs the values
(numerator valuation at least denominator valuation, so the quotient is a
p-adic integer), strips the denominator's p-power from both, and multiplies by
the inverse of the denominator's unit part to get the quotient's residue.
cross_check compares what a verdict promises against what enumeration finds.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable

import numpy as np

from .decide import (LEAF_ANISOTROPIC, LEAF_ODD_K_ODD, LEAF_ODD_NONRESIDUE,
                     LEAF_TWO_K_ODD, LEAF_TWO_UNIT_NONSQUARE, TAG_RANK_ONE,
                     Verdict, decide)
from .forms import BinaryForm, GeneralForm, format_form
from .padic import legendre, mod_inverse, valuation

# beyond this, box values may not fit int64 and enumeration goes pure Python
_INT64_SAFE = 2 ** 62
_INT32_SAFE = 2 ** 31


def _form_coeffs(f) -> tuple[int, ...]:
    if isinstance(f, BinaryForm):
        return f.a, f.b, f.c
    return f.coeffs


def _max_abs_value(f, bound: int) -> int:
    """Upper bound for |Q(x)| over the box, also valid per monomial term."""
    return sum(abs(c) for c in _form_coeffs(f)) * bound * bound


class _ResidueTracker:
    """Running record of quotient residues mod p**r.

    Feeding raw values is equivalent to pairing every value with every value:
    for denominators of valuation s only the residues mod p**r of value/p**s
    matter, so one small set per valuation class is enough. The covered set
    only ever grows, which is what makes early stopping sound.
    """

    def __init__(self, p: int, r: int):
        self.p = int(p)
        self.r = r
        self.modulus = self.p ** r
        self.num_res: dict[int, set[int]] = {}
        self.den_res: dict[int, set[int]] = {}
        self.covered: set[int] = set()
        self.saw_zero = False
        self.saw_denominator = False
        self._inverse = {u: mod_inverse(u, self.modulus)
                         for u in range(1, self.modulus) if u % self.p}

    def full(self) -> bool:
        return len(self.covered) == self.modulus

    def add_batch(self, values) -> None:
        if isinstance(values, np.ndarray):
            self._add_numpy(values)
        else:
            self._add_python(values)

    def _add_numpy(self, values: np.ndarray) -> None:
        if values.size == 0:
            return
        arr = np.unique(values)
        idx = int(np.searchsorted(arr, 0))
        if idx < arr.size and arr[idx] == 0:
            self.saw_zero = True
            arr = np.delete(arr, idx)
        if arr.size == 0:
            self._absorb_zero()
            return
        vals = np.zeros(arr.size, dtype=np.int64)
        cur = np.abs(arr)
        mask = cur % self.p == 0
        while mask.any():
            vals[mask] += 1
            cur[mask] //= self.p
            mask = cur % self.p == 0
        vmax = int(vals.max())
        for s in range(vmax + 1):
            ps = self.p ** s
            ge = arr[vals >= s]
            nums = set((ge // ps % self.modulus).tolist())
            eq = arr[vals == s]
            dens = set((eq // ps % self.modulus).tolist())
            self._merge(s, nums, dens)
        self._absorb_zero()

    def _add_python(self, values: Iterable[int]) -> None:
        nums_by_s: dict[int, set[int]] = {}
        dens_by_s: dict[int, set[int]] = {}
        for v in set(values):
            if v == 0:
                self.saw_zero = True
                continue
            s = int(valuation(v, self.p))
            for j in range(s + 1):
                nums_by_s.setdefault(j, set()).add(v // self.p ** j % self.modulus)
            dens_by_s.setdefault(s, set()).add(v // self.p ** s % self.modulus)
        for s in sorted(set(nums_by_s) | set(dens_by_s)):
            self._merge(s, nums_by_s.get(s, set()), dens_by_s.get(s, set()))
        self._absorb_zero()

    def _merge(self, s: int, nums: set[int], dens: set[int]) -> None:
        known_n = self.num_res.setdefault(s, set())
        known_d = self.den_res.setdefault(s, set())
        new_n = nums - known_n
        new_d = dens - known_d
        inv = self._inverse
        cov = self.covered
        mod = self.modulus
        for d in known_d:
            i = inv[d]
            for n in new_n:
                cov.add(n * i % mod)
        known_n |= new_n
        for d in new_d:
            i = inv[d]
            for n in known_n:
                cov.add(n * i % mod)
        known_d |= new_d
        if known_d:
            self.saw_denominator = True

    def _absorb_zero(self) -> None:
        if self.saw_zero and self.saw_denominator:
            self.covered.add(0)

    def pairs_sampled(self) -> int:
        total = sum(len(nums) * len(self.den_res.get(s, ()))
                    for s, nums in self.num_res.items())
        if self.saw_zero and self.saw_denominator:
            total += 1
        return total


def _expanding_bounds(bound: int):
    b = 4
    while b < bound:
        yield b
        b *= 2
    yield bound


def _shell_batches(f, lo: int, hi: int):
    """Value arrays over lattice points with lo < max|coordinate| <= hi."""
    peak = _max_abs_value(f, hi)
    if peak >= _INT64_SAFE:
        yield from _shell_batches_python(f, lo, hi)
        return
    dtype = np.int32 if peak < _INT32_SAFE else np.int64
    rank = f.rank
    side = np.arange(-hi, hi + 1, dtype=dtype)
    if rank == 1:
        a = _form_coeffs(f)[0]
        vals = a * side * side
        yield vals[np.abs(side) > lo] if lo else vals
        return
    u = side[:, None]
    v = side[None, :]
    uu = u * u
    uv = u * v
    vv = v * v
    inner_new = np.maximum(np.abs(u), np.abs(v)) > lo
    if rank == 2:
        a, b, c = _form_coeffs(f)
        vals = a * uu + b * uv + c * vv
        yield vals[inner_new] if lo else vals.ravel()
        return
    aa = f.coeff(rank - 2, rank - 2)
    bb = f.coeff(rank - 2, rank - 1)
    cc = f.coeff(rank - 1, rank - 1)
    for outer in product(range(-hi, hi + 1), repeat=rank - 2):
        lin_u = sum(f.coeff(i, rank - 2) * outer[i] for i in range(rank - 2))
        lin_v = sum(f.coeff(i, rank - 1) * outer[i] for i in range(rank - 2))
        const = sum(f.coeff(i, j) * outer[i] * outer[j]
                    for i in range(rank - 2) for j in range(i, rank - 2))
        vals = aa * uu + bb * uv + cc * vv + lin_u * u + lin_v * v + const
        if lo and max(abs(t) for t in outer) <= lo:
            yield vals[inner_new]
        else:
            yield vals.ravel()


def _shell_batches_python(f, lo: int, hi: int):
    """Exact fallback for coefficient sizes beyond the int64 comfort zone."""
    batch = []
    for pt in product(range(-hi, hi + 1), repeat=f.rank):
        if max(abs(t) for t in pt) <= lo:
            continue
        batch.append(f.evaluate(pt))
        if len(batch) >= 65536:
            yield batch
            batch = []
    if batch:
        yield batch


@dataclass(frozen=True, slots=True)
class CoverageReport:
    p: int
    r: int
    bound: int
    covered: frozenset[int]
    missing: tuple[int, ...]
    quotients_sampled: int

    def to_json_dict(self) -> dict:
        return {"p": self.p, "r": self.r, "bound": self.bound,
                "covered_count": len(self.covered),
                "missing": list(self.missing),
                "quotients_sampled": self.quotients_sampled}


def coverage(f, p: int, r: int, bound: int) -> CoverageReport:
    """Residues mod p**r reached by integer-valued quotients, coords <= bound.

    Works through expanding boxes and stops as soon as every residue class is
    covered; coverage is monotone in the box, so the early stop changes
    nothing. A miss is only reported after the full box has been enumerated.
    """
    if r < 1:
        raise ValueError("precision must be at least 1")
    if bound < 1:
        raise ValueError("bound must be at least 1")
    tracker = _ResidueTracker(p, r)
    lo = 0
    for hi in _expanding_bounds(bound):
        done = False
        for batch in _shell_batches(f, lo, hi):
            tracker.add_batch(batch)
            if tracker.full():
                done = True
                break
        if done:
            break
        lo = hi
    covered = frozenset(tracker.covered)
    missing = tuple(sorted(set(range(tracker.modulus)) - covered))
    return CoverageReport(int(p), r, bound, covered, missing,
                          tracker.pairs_sampled())


def _odd_valuation_residues(p: int, r: int) -> set[int]:
    out = set()
    for j in range(1, r, 2):
        pj = p ** j
        for unit in range(1, p ** (r - j)):
            if unit % p:
                out.add(pj * unit)
    return out


def excluded_classes(verdict: Verdict, p: int, r: int) -> frozenset[int]:
    """Residues mod p**r that the not-dense verdict forbids quotients to hit.

    Empty when r is too small for the obstruction to be visible; the oracle
    then has nothing to falsify at this precision.
    """
    tag = verdict.theorem_tag
    if tag in (LEAF_ANISOTROPIC, LEAF_ODD_NONRESIDUE):
        return frozenset(_odd_valuation_residues(p, r))
    if tag == LEAF_ODD_K_ODD:
        if r < verdict.factorization.k + 1:
            return frozenset()
        return frozenset(z for z in range(1, p ** r)
                         if z % p and legendre(z, p) == -1)
    if tag == LEAF_TWO_K_ODD:
        if r < verdict.factorization.k + 3:
            return frozenset()
        return frozenset(range(5, 2 ** r, 2 ** (verdict.factorization.k + 3)))
    if tag == LEAF_TWO_UNIT_NONSQUARE:
        if verdict.factorization.ell % 8 == 5:
            return frozenset(_odd_valuation_residues(2, r))
        if r < 4:
            return frozenset()
        return frozenset(range(3, 2 ** r, 16))
    if tag == TAG_RANK_ONE:
        m = p ** r
        squares = {x * x % m for x in range(m)}
        return frozenset(set(range(m)) - squares)
    return frozenset()


@dataclass(frozen=True, slots=True)
class CoverageSchedule:
    """At which (r, bound) full coverage is expected of a dense form."""

    max_r: int = 3
    bound_factor: int = 10

    def sufficient(self, p: int, r: int, bound: int) -> bool:
        return r <= self.max_r and bound >= self.bound_factor * p ** r


DEFAULT_SCHEDULE = CoverageSchedule()


@dataclass(frozen=True, slots=True)
class CrossCheckReport:
    form_text: str
    p: int
    r: int
    bound: int
    dense: bool
    theorem_tag: str
    expectation: str
    passed: bool
    discrepancies: tuple[int, ...]
    coverage: CoverageReport

    def to_json_dict(self) -> dict:
        return {"form": self.form_text, "p": self.p, "r": self.r,
                "bound": self.bound, "dense": self.dense,
                "theorem_tag": self.theorem_tag,
                "expectation": self.expectation, "passed": self.passed,
                "discrepancies": list(self.discrepancies),
                "coverage": self.coverage.to_json_dict()}


def cross_check(f, p: int, r: int, bound: int,
                schedule: CoverageSchedule = DEFAULT_SCHEDULE) -> CrossCheckReport:
    """Confront the decider with enumeration.

    Dense: every residue class mod p**r must be covered once (r, bound) meet
    the schedule. Not dense: the classes the verdict's obstruction excludes
    must stay missing at every bound.
    """
    verdict = decide(f, p)
    report = coverage(f, p, r, bound)
    if verdict.dense:
        if schedule.sufficient(p, r, bound):
            expectation = "full-coverage"
            bad = report.missing
        else:
            expectation = "bound-below-schedule"
            bad = ()
    else:
        expectation = "excluded-classes-missing"
        bad = tuple(sorted(excluded_classes(verdict, p, r) & report.covered))
    return CrossCheckReport(format_form(f), int(p), r, bound, verdict.dense,
                            verdict.theorem_tag, expectation, not bad, bad,
                            report)


def missing_csv(reports: Iterable[CoverageReport]) -> str:
    """CSV dump of missing residue classes, one row per (p, r, bound, class)."""
    lines = ["p,r,bound,missing_class"]
    for rep in reports:
        for cls in rep.missing:
            lines.append(f"{rep.p},{rep.r},{rep.bound},{cls}")
    return "\n".join(lines) + "\n"
