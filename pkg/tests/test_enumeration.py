import functools
import math
from fractions import Fraction
from math import gcd

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from orbitint.algnum import INF, PlaceSet, height_le, weil_height
from orbitint.enumeration import (
    CountRecord,
    count_points,
    enum_minpolys,
    enum_points,
    enum_polys,
    exponent_fit,
    minpoly_counts_by_lc,
)
from orbitint.zpoly import IntPoly, is_irreducible


def P(*coeffs):
    return IntPoly(coeffs)


def reduced_fractions(N: int) -> int:
    """Independent count of a/b in lowest terms, b > 0, max(|a|, b) <= N."""
    return sum(1 for b in range(1, N + 1) for a in range(-N, N + 1) if gcd(a, b) == 1)


@functools.lru_cache(maxsize=None)
def oracle_minpolys(e: int, B) -> frozenset:
    """Unpruned scan: every primitive irreducible f with naive height <= binom(e, e//2) B^e and M(f) <= B^e.

    Mahler measures come from mpmath roots at 50 digits; ties within 1e-30 count as equal.
    """
    X = Fraction(B) ** e
    H = math.floor(math.comb(e, e // 2) * X)
    out = set()
    with mpmath.workdps(50):
        for f in enum_polys(e, H, primitive=True, irreducible=True):
            rs = mpmath.polyroots(list(reversed(f.coeffs)), maxsteps=200, extraprec=200)
            M = f.lc * mpmath.fprod(max(1, abs(r)) for r in rs)
            if M <= mpmath.mpf(X.numerator) / X.denominator + mpmath.mpf(10) ** -30:
                out.add(f)
    return frozenset(out)


# ---------------------------------------------------------------------------
# examples


def test_enum_polys_examples():
    assert sorted(f.coeffs for f in enum_polys(1, 1)) == [(-1, 1), (0, 1), (1, 1)]
    for d, B in [(1, 3), (2, 2), (3, 1)]:
        assert sum(1 for _ in enum_polys(d, B)) == B * (2 * B + 1) ** d
    irr = set(enum_polys(2, 1, irreducible=True))
    assert P(1, 0, 1) in irr and P(-1, 0, 1) not in irr


def test_enum_points_examples():
    pts = list(enum_points(1, 2))
    assert pts[0] is INF
    vals = sorted(p.as_fraction() for p in pts[1:])
    assert vals == [-2, -1, Fraction(-1, 2), 0, Fraction(1, 2), 1, 2] and len(pts) == 8
    assert {p if p is INF else p.as_fraction() for p in enum_points(1, 1)} == {INF, -1, 0, 1}
    polys = {p.minpoly for p in enum_points(2, 1) if p is not INF}
    assert P(1, 0, 1) in polys and P(-2, 0, 1) not in polys


def test_enum_points_rejects_bad_input():
    with pytest.raises(ValueError):
        list(enum_points(0, 2))
    with pytest.raises(ValueError):
        list(enum_points(1, Fraction(1, 2)))


def test_count_d1_cross_check():
    for B in (1, 2, 5, 10, 17):
        assert count_points(1, B).total == 1 + reduced_fractions(B)
        assert sum(1 for _ in enum_points(1, B)) == 1 + reduced_fractions(B)


def test_count_d1_integral():
    S = PlaceSet.parse("inf")
    for B in (10, 20, 40, 80):
        assert count_points(1, B, [S]).s_integral["inf"] == 2 * B + 1


def test_frozen_counts():
    # exact counts cross-checked against the unpruned mpmath oracle below (d=2, B=2, 3)
    assert [count_points(1, B).total for B in (10, 20, 40, 80)] == [128, 512, 1960, 7864]
    assert [count_points(2, B).total for B in (2, 3, 4, 6)] == [358, 4446, 25062, 295854]


@pytest.mark.parametrize("e,B", [(2, 2), (2, 3), (2, Fraction(5, 2)), (3, 1), (3, Fraction(6, 5))])
def test_pruning_is_lossless(e, B):
    assert set(enum_minpolys(e, B)) == oracle_minpolys(e, B)


def test_d2_total_matches_oracle():
    for B in (2, 3):
        n = 1 + reduced_fractions(B) + 2 * len(oracle_minpolys(2, B))
        assert n == count_points(2, B).total


def test_no_duplicates_and_conjugate_closure():
    pts = list(enum_points(2, 2))
    assert len(set(pts)) == len(pts)
    by_poly = {}
    for p in pts[1:]:
        by_poly.setdefault(p.minpoly, []).append(p.index)
    for f, idx in by_poly.items():
        assert sorted(idx) == list(range(f.degree))
        hs = [weil_height(q) for q in pts if q is not INF and q.minpoly == f]
        assert max(hs) <= 2 + 1e-12


def test_boundary_points_included():
    # sqrt2 has height exactly sqrt2: included at B^2 = 2 only through an exact comparison
    polys = set(enum_minpolys(2, Fraction(99, 70)))  # 99/70 > sqrt2
    assert P(-2, 0, 1) in polys
    assert P(-2, 0, 1) not in set(enum_minpolys(2, Fraction(140, 99)))  # 140/99 < sqrt2
    # x^2 + x + 1: roots on the unit circle, H = 1 exactly
    assert P(1, 1, 1) in set(enum_minpolys(2, 1))


def test_lc_counts_consistent():
    for e, B in [(1, 7), (2, 3), (3, 1)]:
        counts = minpoly_counts_by_lc(e, B)
        assert sum(counts) == sum(1 for _ in enum_minpolys(e, B))


def test_exponent_fit():
    recs = [count_points(1, B, [PlaceSet.parse("inf")]) for B in (10, 20, 40, 80)]
    assert exponent_fit(recs) == pytest.approx(1.976, abs=1e-3)
    assert exponent_fit(recs, "inf") == pytest.approx(0.980, abs=1e-3)
    with pytest.raises(ValueError):
        exponent_fit(recs[:2])
    with pytest.raises(ValueError):
        exponent_fit(list(reversed(recs)))


def test_count_record_invariant():
    with pytest.raises(ValueError):
        CountRecord(1, Fraction(2), 3, {"inf": 4})


@given(st.integers(1, 12), st.integers(1, 12))
def test_monotone_in_B(b1, b2):
    lo, hi = sorted((b1, b2))
    assert count_points(1, lo).total <= count_points(1, hi).total


@given(st.fractions(min_value=1, max_value=3, max_denominator=4))
def test_monotone_in_d(B):
    assert count_points(1, B).total <= count_points(2, B).total


@given(st.fractions(min_value=1, max_value=Fraction(5, 2), max_denominator=6))
def test_enumerated_heights_within_bound(B):
    for f in enum_minpolys(2, B):
        assert is_irreducible(f) and f.content() == 1 and f.lc > 0
        assert height_le(f, B)
