import math
import random
import warnings
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from orbitint.algnum import INF, AlgebraicNumber, PlaceSet, roots_of, weil_height
from orbitint.dynamics import (
    RationalMap,
    canonical_height,
    compose,
    distinct_pole_count,
    escape_certified,
    eval_point,
    height_constants,
    iterate,
    orbit,
    orbit_integral_census,
    second_iterate_is_polynomial,
)
from orbitint.enumeration import enum_points
from orbitint.errors import IterationBudgetError
from orbitint.zpoly import IntPoly, content_primitive

Z = sympy.Symbol("z")


def P(*coeffs):
    return IntPoly(coeffs)


def rat(q):
    return AlgebraicNumber.from_rational(Fraction(q))


PHI = RationalMap(P(-1, 0, 1), P(0, 1))  # (z^2 - 1)/z
SQRT2 = roots_of(P(-2, 0, 1))[1]
INF_S = PlaceSet.parse("inf")


def to_expr(f: RationalMap):
    n = sum(c * Z ** i for i, c in enumerate(f.num.coeffs))
    d = sum(c * Z ** i for i, c in enumerate(f.den.coeffs))
    return n / d


def sympy_iterate(f: RationalMap, n: int):
    e = Z
    base = to_expr(f)
    for _ in range(n):
        e = sympy.cancel(base.subs(Z, e))
    return sympy.fraction(sympy.cancel(e))


def oracle_step(f: RationalMap, z):
    """Plain Fraction evaluation with infinity handled by degrees."""
    if z is None:
        if f.num.degree > f.den.degree:
            return None
        return Fraction(f.num.lc, f.den.lc) if f.num.degree == f.den.degree else Fraction(0)
    d = f.den(z)
    return None if d == 0 else Fraction(f.num(z)) / d


maps = st.sampled_from(
    [
        PHI,
        RationalMap(P(-1, 0, 1)),
        RationalMap(P(1, 0, 3), P(0, 2)),
        RationalMap(P(1, -1, 0, 1), P(1, 0, 1)),
        RationalMap(P(2, 0, 1), P(-1, 0, 0, 1)),
        RationalMap(P(0, 1, 0, 1), P(1, 0, 2)),
    ]
)


# ---------------------------------------------------------------------------
# maps


def test_normalization():
    f = RationalMap(P(2, 0, -2), P(0, -4, 4))  # -2(x - 1)(x + 1) / 4x(x - 1)
    assert f.num == P(-1, -1) and f.den == P(0, 2)
    assert RationalMap(P(3), P(6)).num == P(1)
    with pytest.raises(ZeroDivisionError):
        RationalMap(P(1), P())


def test_compose_examples():
    inv_sq = RationalMap(P(1), P(0, 0, 1))
    assert compose(inv_sq, inv_sq) == RationalMap(P(0, 0, 0, 0, 1))
    assert compose(PHI, PHI) == RationalMap(P(1, 0, -3, 0, 1), P(0, -1, 0, 1))
    assert compose(PHI, RationalMap.identity()) == PHI
    assert compose(RationalMap.identity(), PHI) == PHI


def test_iterate_examples():
    assert iterate(RationalMap(P(0, 0, 1)), 3) == RationalMap(P(0, 0, 0, 0, 0, 0, 0, 0, 1))
    assert iterate(PHI, 2) == RationalMap(P(1, 0, -3, 0, 1), P(0, -1, 0, 1))
    assert iterate(PHI, 0) == RationalMap.identity()
    with pytest.raises(IterationBudgetError):
        iterate(PHI, 20)
    with pytest.raises(ValueError):
        iterate(PHI, -1)


@given(maps, st.integers(1, 3))
def test_iterate_matches_sympy(f, n):
    g = iterate(f, n)
    num, den = sympy_iterate(f, n)
    assert sympy.simplify(to_expr(g) - num / den) == 0
    assert g.degree == f.degree ** n


def test_second_iterate_examples():
    assert second_iterate_is_polynomial(RationalMap(P(1), P(0, 0, 0, 1)))
    assert not second_iterate_is_polynomial(PHI)
    assert second_iterate_is_polynomial(RationalMap(P(1, 0, 1)))


def test_pole_examples():
    assert distinct_pole_count(PHI) == 2
    assert distinct_pole_count(iterate(PHI, 2)) == 4
    assert distinct_pole_count(RationalMap(P(0, 0, 1))) == 1


@given(maps)
def test_pole_growth(f):
    if second_iterate_is_polynomial(f):
        return
    counts = [distinct_pole_count(iterate(f, n)) for n in range(1, 5)]
    assert all(b >= a for a, b in zip(counts, counts[1:]))
    # floor from the proof when infinity is not periodic: at least r^(n-2) poles
    r = f.degree
    Q, periodic = INF, False
    for _ in range(4):
        Q = eval_point(f, Q)
        periodic = periodic or Q is INF
    if not periodic:
        assert all(c >= r ** (n - 2) for n, c in zip(range(1, 5), counts))


def test_pole_count_matches_sympy():
    for n in (1, 2, 3):
        num, den = sympy_iterate(PHI, n)
        finite = len(sympy.roots(sympy.Poly(den, Z)))
        at_inf = 1 if sympy.degree(num, Z) > sympy.degree(den, Z) else 0
        assert distinct_pole_count(iterate(PHI, n)) == finite + at_inf


# ---------------------------------------------------------------------------
# points


def test_eval_point_examples():
    img = eval_point(PHI, SQRT2)
    assert img.minpoly == P(-1, 0, 2) and img.approx().real == pytest.approx(1 / math.sqrt(2))
    assert eval_point(PHI, rat(0)) is INF
    assert eval_point(PHI, INF) is INF
    assert eval_point(RationalMap(P(1, 0, 3), P(0, 0, 2)), INF).as_fraction() == Fraction(3, 2)
    assert eval_point(RationalMap(P(1), P(0, 0, 1)), INF).as_fraction() == 0
    # minimal polynomial dividing the denominator: a pole of higher degree
    assert eval_point(RationalMap(P(1), P(-2, 0, 1)), SQRT2) is INF


def test_call_on_rationals():
    assert PHI(Fraction(2)) == Fraction(3, 2)
    assert PHI(0) is INF and PHI(INF) is INF


@given(maps, st.fractions(min_value=-20, max_value=20, max_denominator=20))
def test_eval_rational_matches_oracle(f, q):
    expected = oracle_step(f, q)
    got = eval_point(f, AlgebraicNumber.from_rational(q))
    assert (got is INF) if expected is None else got.as_fraction() == expected


@given(maps, st.tuples(st.integers(-5, 5), st.integers(-5, 5), st.integers(1, 4)))
def test_eval_algebraic_matches_sympy(f, coeffs):
    g = IntPoly(coeffs)
    from orbitint.zpoly import is_irreducible

    if g.degree != 2 or g[0] == 0 or g.content() != 1 or not is_irreducible(g):
        return
    for a in roots_of(g):
        img = eval_point(f, a)
        z = a.approx()
        q = sum(c * z ** i for i, c in enumerate(f.den.coeffs))
        if img is INF:
            assert abs(q) < 1e-9
            continue
        val = sum(c * z ** i for i, c in enumerate(f.num.coeffs)) / q
        assert abs(img.approx() - val) < 1e-8 * max(1, abs(val))
        # minimal polynomial from sympy's exact algebra
        radicals = sympy.roots(sum(c * Z ** i for i, c in enumerate(g.coeffs)), Z)
        root = min(radicals, key=lambda r: abs(complex(r) - z))
        expr = sympy.minimal_polynomial(sympy.radsimp(to_expr(f).subs(Z, root)), Z)
        mp = content_primitive(IntPoly([int(c) for c in reversed(sympy.Poly(expr, Z).all_coeffs())]))[1]
        assert img.minpoly == mp
        # conjugation: every root of the selected factor is an image of some conjugate of a
        images = {eval_point(f, b) for b in roots_of(g)}
        assert set(roots_of(img.minpoly)) <= images


# ---------------------------------------------------------------------------
# orbits


def test_orbit_examples():
    rep = orbit(RationalMap(P(-1, 0, 1)), rat(0), 10, INF_S)
    assert rep.status == "preperiodic" and rep.tail == 0 and rep.cycle == 2
    assert rep.integral_hits == [0, 1]
    assert [q.as_fraction() for q in rep.points] == [0, -1]

    rep = orbit(PHI, rat(2), 6, INF_S)
    assert rep.status == "truncated" and len(rep.points) == 7
    assert [q.as_fraction() for q in rep.points[:3]] == [2, Fraction(3, 2), Fraction(5, 6)]
    assert rep.integral_hits == [0]

    rep = orbit(RationalMap(P(0, 0, 1)), SQRT2, 4)
    assert rep.status == "truncated"
    hs = [weil_height(q) for q in rep.points]
    for n, h in enumerate(hs):
        assert h == pytest.approx(2 ** (2 ** n / 2), rel=1e-12)


def test_orbit_through_infinity():
    rep = orbit(PHI, rat(1), 5, INF_S)
    assert [q if q is INF else q.as_fraction() for q in rep.points] == [1, 0, INF]
    assert rep.status == "preperiodic" and rep.tail == 2 and rep.cycle == 1
    assert rep.integral_hits == [0, 1]


def test_orbit_requires_degree_two():
    with pytest.raises(ValueError):
        orbit(RationalMap(P(1, 1)), rat(0), 3)


# ---------------------------------------------------------------------------
# heights


def test_height_constants_phi():
    hc = height_constants(PHI)
    assert hc.upper == pytest.approx(math.log(3))
    assert hc.lower == pytest.approx(math.log(4))


@given(maps, st.fractions(min_value=-50, max_value=50, max_denominator=50))
def test_height_constants_are_valid(f, q):
    C = height_constants(f).C
    P0 = AlgebraicNumber.from_rational(q)
    img = eval_point(f, P0)
    h0 = math.log(weil_height(P0))
    h1 = 0.0 if img is INF else math.log(weil_height(img))
    assert abs(h1 - f.degree * h0) <= C + 1e-9


def test_canonical_height_examples():
    assert canonical_height(RationalMap(P(0, 0, 1)), rat(2), 1e-6) == pytest.approx(math.log(2), abs=1e-6)
    assert canonical_height(RationalMap(P(-1, 0, 1)), rat(0), 1e-6) == 0.0
    assert canonical_height(PHI, INF, 1e-6) == 0.0
    with pytest.raises(ValueError):
        canonical_height(RationalMap(P(1, 2)), rat(2))


def test_canonical_height_functional_equation():
    rng = random.Random(7)
    for _ in range(5):
        q = Fraction(rng.randint(-50, 50), rng.randint(1, 50))
        a = canonical_height(PHI, eval_point(PHI, rat(q)), 1e-6)
        b = canonical_height(PHI, rat(q), 1e-6)
        assert abs(a - 2 * b) <= 3e-6


def test_canonical_height_algebraic_small():
    # z^2 at sqrt2: h(sqrt2) = log 2 / 2 and the map is the pure power map
    assert canonical_height(RationalMap(P(0, 0, 1)), SQRT2, 0.2) == pytest.approx(math.log(2) / 2, abs=0.2)


def test_canonical_height_budget():
    with pytest.raises(IterationBudgetError):
        canonical_height(PHI, rat(Fraction(3, 7)), 1e-6, max_bits=1000)


# ---------------------------------------------------------------------------
# census


def oracle_census(f: RationalMap, B: int, max_iter: int):
    """Scripted Fraction iteration with S = {inf}: distinct integral orbit points for every P of height <= B."""
    from math import gcd

    pts = [None] + [Fraction(a, b) for b in range(1, B + 1) for a in range(-B, B + 1) if gcd(a, b) == 1]
    counts = []
    for z in pts:
        seen, hits = set(), set()
        for _ in range(max_iter + 1):
            if z in seen:
                break
            seen.add(z)
            if z is not None and z.denominator == 1:
                hits.add(z)
            z = oracle_step(f, z)
        counts.append(len(hits))
    return counts


def test_census_matches_oracle():
    # the scripted oracle has no escape shortcut, so keep its horizon moderate
    res = orbit_integral_census(PHI, 1, 10, INF_S, 10)
    expected = oracle_census(PHI, 10, 10)
    assert res.total_points == len(expected) == 128
    assert sorted(r.integral_count for r in res.rows) == sorted(expected)
    assert res.maximum == max(expected) and res.average == pytest.approx(sum(expected) / len(expected))
    assert 0 <= res.average <= 1 and res.warning is None


def test_census_control_case_warns():
    with pytest.warns(RuntimeWarning):
        res = orbit_integral_census(RationalMap(P(0, 0, 1)), 1, 5, INF_S, 6)
    for r in res.rows:
        if r.point is not INF and r.point.as_fraction().denominator == 1:
            # every orbit point of an integer under z^2 is an integer
            assert r.integral_count == r.orbit_len


def test_census_height_one():
    res = orbit_integral_census(PHI, 1, 1, INF_S, 20)
    assert {(None if r.point is INF else r.point.as_fraction()) for r in res.rows} == {None, 0, 1, -1}
    assert res.total_points == 4


def test_census_threads_deterministic():
    a = orbit_integral_census(PHI, 1, 6, INF_S, 10, threads=1)
    b = orbit_integral_census(PHI, 1, 6, INF_S, 10, threads=3)
    assert [(r.point, r.integral_count, r.status, r.orbit_len) for r in a.rows] == [
        (r.point, r.integral_count, r.status, r.orbit_len) for r in b.rows
    ]


def test_census_degree_two_and_hhat_proxy():
    res = orbit_integral_census(PHI, 2, 1, INF_S, 10, hhat_tol=1e-3)
    pre = [r for r in res.rows if r.status == "preperiodic"]
    assert all(r.hhat == 0.0 for r in pre)
    others = [r.hhat for r in res.rows if r.status != "preperiodic"]
    # wandering points have positive canonical height above the tolerance
    assert all(h >= 1e-3 for h in others)
    assert res.min_positive_hhat == min(others)


@pytest.mark.parametrize("f", [PHI, RationalMap(P(1, 0, 0, 1), P(0, 0, 2)), RationalMap(P(3, 0, 1), P(0, 1))])
def test_escape_certificate_is_sound(f):
    # after an escape certificate no integral point appears, even over a long horizon
    res = orbit_integral_census(f, 1, 6, INF_S, 3)
    escaped = [r for r in res.rows if r.status == "escaped"]
    assert escaped
    for r in escaped:
        z = None if r.point is INF else r.point.as_fraction()
        hits = set()
        for _ in range(8):
            if z is not None and z.denominator == 1:
                hits.add(z)
            z = oracle_step(f, z)
        assert len(hits) == r.integral_count


def test_escape_requires_good_reduction():
    f = RationalMap(P(0, 0, 1), P(1, 0, 3))  # z^2/(3z^2 + 1): resultant 1, infinity fixed only mod 3
    assert escape_certified(f, 3, PlaceSet())
    assert not escape_certified(f, 2, PlaceSet())
    g = RationalMap(P(3, 0, 1), P(0, 1))  # (z^2 + 3)/z: bad reduction at 3
    assert abs(g.resultant()) == 3
    assert not escape_certified(g, 3, PlaceSet())
    assert escape_certified(g, 2, PlaceSet())
    assert not escape_certified(PHI, 2, PlaceSet((2,)))
    assert escape_certified(PHI, 2, PlaceSet())
