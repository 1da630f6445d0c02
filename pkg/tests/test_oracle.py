import random
from itertools import product
from math import gcd

import pytest

from qform import (BinaryForm, GeneralForm, Prime, coverage, cross_check,
                   decide, excluded_classes, missing_csv, valuation)
from qform.oracle import _ResidueTracker

rng = random.Random(0x0c1e)


def quotient_residues_bruteforce(f, p, r, bound):
    """Reference computation: literally form all pairs and reduce."""
    values = set()
    span = range(-bound, bound + 1)
    for pt in product(span, repeat=f.rank):
        values.add(f.evaluate(pt))
    seen = set()
    m = p**r
    for dv in values:
        if dv == 0:
            continue
        s = valuation(dv, p)
        du = dv // p**s
        inv = pow(du % m, -1, m)
        for nv in values:
            if nv == 0:
                seen.add(0)
            elif valuation(nv, p) >= s:
                seen.add(nv // p**s * inv % m)
    return seen


def test_coverage_matches_bruteforce():
    cases = [
        ((1, 0, 1), 5, 1, 7),
        ((1, 0, 1), 3, 2, 8),
        ((1, 0, 1), 2, 3, 6),
        ((1, 1, -3), 3, 2, 9),
        ((2, 1, 3), 2, 2, 6),
        ((1, 0, -9), 3, 2, 10),
        ((-1, 0, 2), 5, 1, 8),
        ((3, 2, 5), 7, 1, 9),
    ]
    for coeffs, p, r, bound in cases:
        f = BinaryForm(*coeffs)
        rep = coverage(f, Prime(p), r, bound)
        want = quotient_residues_bruteforce(f, p, r, bound)
        assert rep.covered == want, (coeffs, p, r)
        assert rep.missing == tuple(sorted(set(range(p**r)) - want))


def test_coverage_matches_bruteforce_rank3():
    g = GeneralForm(3, (1, 0, 0, 1, 0, 1))
    rep = coverage(g, Prime(2), 3, 3)
    assert rep.covered == quotient_residues_bruteforce(g, 2, 3, 3)


def test_coverage_examples():
    rep = coverage(BinaryForm(1, 0, 1), Prime(5), 1, 50)
    assert rep.missing == ()
    assert len(rep.covered) == 5

    # odd-valuation classes stay missing for a form without 3-adic quotients there
    rep2 = coverage(BinaryForm(1, 0, 1), Prime(3), 2, 90)
    assert rep2.missing == (3, 6)

    rep3 = coverage(BinaryForm(1, 0, 1), Prime(2), 3, 40)
    # units of sums of two squares are 1 mod 4, so mod 8 the quotients miss
    # the units 3, 7 and the doubled nonunit 6, but reach 2 = 2/1
    assert rep3.missing == (3, 6, 7)


def test_coverage_monotone_in_bound():
    f = BinaryForm(1, 1, -3)
    for p, r in ((3, 2), (2, 3), (5, 1)):
        small = coverage(f, Prime(p), r, 6)
        big = coverage(f, Prime(p), r, 14)
        assert small.covered <= big.covered


def test_coverage_precision_consistent():
    # covered residues mod p^2 must map onto covered residues mod p
    f = BinaryForm(1, 1, -3)
    for p in (2, 3, 5):
        fine = coverage(f, Prime(p), 2, 40)
        coarse = coverage(f, Prime(p), 1, 40)
        assert {z % p for z in fine.covered} <= coarse.covered


def test_coverage_report_json():
    rep = coverage(BinaryForm(1, 0, 1), Prime(3), 2, 90)
    d = rep.to_json_dict()
    assert d == {"p": 3, "r": 2, "bound": 90, "covered_count": 7,
                 "missing": [3, 6], "quotients_sampled": rep.quotients_sampled}
    assert d["quotients_sampled"] > 0


def test_coverage_rejects_bad_arguments():
    with pytest.raises(ValueError):
        coverage(BinaryForm(1, 0, 1), Prime(3), 0, 10)
    with pytest.raises(ValueError):
        coverage(BinaryForm(1, 0, 1), Prime(3), 1, 0)


def test_tracker_equivalent_to_pairing():
    # feeding values in arbitrary chunks must equal the all-pairs reference
    f = BinaryForm(2, 1, 3)
    values = sorted({f.evaluate((x, y))
                     for x in range(-7, 8) for y in range(-7, 8)})
    for p, r in ((2, 3), (3, 2), (5, 1)):
        tracker = _ResidueTracker(p, r)
        chunk = []
        for v in values:
            chunk.append(v)
            if len(chunk) == 13:
                tracker.add_batch(chunk)
                chunk = []
        tracker.add_batch(chunk)
        want = quotient_residues_bruteforce(f, p, r, 7)
        assert tracker.covered == want


def test_excluded_classes_examples():
    v = decide(BinaryForm(1, 0, 1), Prime(3))
    assert excluded_classes(v, 3, 2) == frozenset({3, 6})
    assert excluded_classes(v, 3, 1) == frozenset()

    v2 = decide(BinaryForm(1, 0, 1), Prime(2))     # ell = 7 mod 8
    assert excluded_classes(v2, 2, 4) == frozenset({3})
    assert excluded_classes(v2, 2, 3) == frozenset()

    v3 = decide(BinaryForm(1, 0, 3), Prime(2))     # ell = 5 mod 8
    assert excluded_classes(v3, 2, 2) == frozenset({2})

    v4 = decide(BinaryForm(1, 0, -3), Prime(3))    # k = 1 odd
    assert excluded_classes(v4, 3, 2) == frozenset({2, 5, 8})

    v5 = decide(GeneralForm(1, (1,)), Prime(5))
    excl = excluded_classes(v5, 5, 1)
    assert excl == frozenset({2, 3})               # nonsquares mod 5


def test_excluded_classes_never_covered():
    # the obstruction classes must be unreachable no matter the bound
    count = 0
    while count < 25:
        a, b, c = (rng.randint(-8, 8) for _ in range(3))
        if gcd(gcd(a, b), c) != 1 or b * b - 4 * a * c == 0:
            continue
        f = BinaryForm(a, b, c)
        p = Prime(rng.choice((2, 3, 5)))
        v = decide(f, p)
        if v.dense:
            continue
        count += 1
        r = rng.randint(1, 3)
        excl = excluded_classes(v, p, r)
        rep = coverage(f, p, r, 25)
        assert not excl & rep.covered, (f, p, r)


def test_cross_check_dense_pass():
    rep = cross_check(BinaryForm(1, 0, 1), Prime(5), 2, 250)
    assert rep.passed
    assert rep.expectation == "full-coverage"
    assert rep.discrepancies == ()

    rep2 = cross_check(BinaryForm(1, 0, -1), Prime(2), 3, 80)
    assert rep2.passed and rep2.expectation == "full-coverage"


def test_cross_check_not_dense_pass():
    rep = cross_check(BinaryForm(1, 0, 1), Prime(3), 2, 90)
    assert rep.passed
    assert rep.expectation == "excluded-classes-missing"
    assert not rep.dense


def test_cross_check_below_schedule():
    # a bound below the schedule cannot prove a dense form wrong
    rep = cross_check(BinaryForm(1, 0, 1), Prime(5), 2, 30)
    assert rep.passed
    assert rep.expectation == "bound-below-schedule"


def test_cross_check_rank_three():
    rep = cross_check(GeneralForm(3, (1, 0, 0, 2, 0, 3)), Prime(3), 2, 90)
    assert rep.passed and rep.dense


def test_cross_check_json():
    rep = cross_check(BinaryForm(1, 0, 1), Prime(3), 1, 30)
    d = rep.to_json_dict()
    assert d["form"] == "1,0,1"
    assert d["passed"] is True
    assert d["coverage"]["p"] == 3


def test_missing_csv():
    reps = [coverage(BinaryForm(1, 0, 1), Prime(3), 2, 90)]
    text = missing_csv(reps)
    assert text.splitlines() == ["p,r,bound,missing_class", "3,2,90,3",
                                 "3,2,90,6"]
