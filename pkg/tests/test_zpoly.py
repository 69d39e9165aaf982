from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given
from hypothesis import strategies as st

from orbitint.zpoly import (
    ComplexBox,
    IntPoly,
    complex_roots,
    content_primitive,
    discriminant,
    eval_box,
    factor_mod_p,
    factor_z,
    gcd_q,
    interpolate_integer,
    is_irreducible,
    multiply,
    naive_height,
    resultant,
    reversal,
    shift,
    squarefree_part,
    sylvester_resultant,
)

X = sympy.Symbol("x")


def P(*coeffs):
    """Ascending coefficients."""
    return IntPoly(coeffs)


def to_sympy(f: IntPoly):
    return sympy.Poly(list(reversed(f.coeffs)) or [0], X)


def from_sympy(g) -> IntPoly:
    return IntPoly([int(c) for c in reversed(sympy.Poly(g, X).all_coeffs())])


polys = st.lists(st.integers(-12, 12), min_size=1, max_size=6).map(IntPoly)
nonzero = polys.filter(lambda f: not f.is_zero())
nonconst = polys.filter(lambda f: f.degree >= 1)


# ---------------------------------------------------------------------------
# examples


def test_normal_form():
    assert P(1, 2, 0, 0).coeffs == (1, 2)
    assert P(0, 0).is_zero()
    assert P().coeffs == ()


def test_arith_examples():
    assert multiply(P(-1, 1), P(1, 1)) == P(-1, 0, 1)
    assert reversal(P(-2, 0, 1)) == P(-1, 0, 2)
    assert shift(P(-2, 0, 1), 1) == P(-1, 2, 1)


def test_shift_rational_is_primitive_and_proportional():
    f = P(-2, 0, 1)
    g = shift(f, Fraction(1, 2))
    assert g.content() == 1
    # (x + 1/2)^2 - 2 = x^2 + x - 7/4  ->  4x^2 + 4x - 7
    assert g == P(-7, 4, 4)


def test_reversal_roots_are_reciprocals():
    f = P(-6, 1, 1)  # roots 2, -3
    r = reversal(f)
    assert r(Fraction(1, 2)) == 0 and r(Fraction(-1, 3)) == 0
    assert r.lc > 0


def test_content_primitive_examples():
    assert content_primitive(P(-4, 0, 6)) == (2, P(-2, 0, 3))
    assert content_primitive(P(1, -1)) == (1, P(-1, 1))
    assert content_primitive(P(0, 0, 0, 1)) == (1, P(0, 0, 0, 1))
    with pytest.raises(ValueError):
        content_primitive(P())


def test_gcd_examples():
    assert gcd_q(P(-1, 0, 1), P(1, -2, 1)) == P(-1, 1)
    assert gcd_q(P(-2, 0, 1), P(-3, 0, 1)) == P(1)
    assert gcd_q(P(-4, 0, 6), P()) == P(-2, 0, 3)


def test_squarefree_examples():
    assert squarefree_part(P(0, 0, -1, 1)) == P(0, -1, 1)
    assert squarefree_part(P(-2, 0, 1)) == P(-2, 0, 1)
    assert squarefree_part(P(-1, 1) ** 4) == P(-1, 1)


def test_resultant_examples():
    assert resultant(P(-2, 0, 1), P(-3, 0, 1)) == 1
    assert resultant(P(-1, 1), P(1, 1)) == 2
    f = P(3, 0, -2, 1)
    assert resultant(f, f) == 0


def test_sylvester_declared_degrees():
    # Res_{2,2}(x^2 - 1, x) for the homogenized pair (X^2 - Y^2, XY)
    assert abs(sylvester_resultant(P(-1, 0, 1), P(0, 1), 2, 2)) == 1
    assert sylvester_resultant(P(-2, 0, 1), P(-3, 0, 1)) == resultant(P(-2, 0, 1), P(-3, 0, 1))


def test_factor_examples():
    assert factor_z(P(-1, 0, 0, 0, 1)) == [(P(-1, 1), 1), (P(1, 1), 1), (P(1, 0, 1), 1)]
    assert factor_z(P(-2, 0, 1)) == [(P(-2, 0, 1), 1)]
    assert factor_z(P(-4, 0, 4)) == [(P(-1, 1), 1), (P(1, 1), 1)]


def test_factor_mod_p_examples():
    assert factor_mod_p(P(-2, 0, 1), 7) == [((3, 1), 1), ((4, 1), 1)]  # (x + 3)(x + 4) = (x - 4)(x - 3)
    assert factor_mod_p(P(-2, 0, 1), 5) == [((3, 0, 1), 1)]
    facs = factor_mod_p(P(-2, 0, 1), 17)
    assert len(facs) == 2 and all(len(g) == 2 for g, _ in facs)
    with pytest.raises(ValueError):
        factor_mod_p(P(1, 0, 7), 7)


def test_naive_height_examples():
    assert naive_height(P(2, -5, 3)) == 5
    assert naive_height(P(0, 0, 0, 0, 1)) == 1
    assert naive_height(P(-7)) == 7


def test_complex_roots_examples():
    boxes = complex_roots(P(-2, 0, 1), Fraction(1, 1000))
    assert len(boxes) == 2
    neg, pos = boxes
    assert neg.re_hi < 0 < pos.re_lo
    for b in boxes:
        assert b.width <= Fraction(1, 1000) and b.is_real()
    assert pos.re_lo ** 2 <= 2 <= pos.re_hi ** 2
    i_boxes = complex_roots(P(1, 0, 1), Fraction(1, 1000))
    assert [b.contains(0, s) for b, s in zip(i_boxes, (-1, 1))] == [True, True]
    (b3,) = complex_roots(P(-3, 1), Fraction(1, 10))
    assert b3.width == 0 and b3.contains(3)


def test_interpolate_integer():
    f = P(5, -3, 0, 2)
    xs = [0, 1, 2, 3]
    assert interpolate_integer(xs, [f(x) for x in xs]) == f


# ---------------------------------------------------------------------------
# oracle comparisons


def sylvester_det(f: IntPoly, g: IntPoly) -> int:
    """Independent oracle: determinant of the Sylvester matrix, computed by sympy."""
    m, n = f.degree, g.degree
    rows = []
    for i in range(n):
        rows.append([0] * i + list(reversed(f.coeffs)) + [0] * (n - 1 - i))
    for i in range(m):
        rows.append([0] * i + list(reversed(g.coeffs)) + [0] * (m - 1 - i))
    return int(sympy.Matrix(rows).det())


def test_resultant_sign_convention():
    # Res(f, g) = lc(f)^deg g * prod g(roots of f); here g(-1) = -2
    assert resultant(P(1, 1), P(0, 1, 0, 1)) == -2
    assert resultant(P(1, 1), P(0, 0, 0, 1)) == -1


@given(nonconst, nonconst)
def test_resultant_matches_sylvester_determinant(f, g):
    assert resultant(f, g) == sylvester_det(f, g)


@given(nonconst)
def test_discriminant_matches_sympy(f):
    assume(f.degree >= 2)
    assert discriminant(f) == int(sympy.discriminant(to_sympy(f).as_expr(), X))


@given(nonzero, nonzero)
def test_gcd_matches_sympy(f, g):
    expected = from_sympy(sympy.gcd(to_sympy(f), to_sympy(g)))
    if expected.lc < 0:
        expected = -expected
    expected = content_primitive(expected)[1]
    assert gcd_q(f, g) == expected


@given(nonconst)
def test_factor_matches_sympy(f):
    assume(f.degree <= 5)
    _, fl = sympy.factor_list(to_sympy(f))
    expected = []
    for g, m in fl:
        h = from_sympy(g.as_expr())
        if h.degree >= 1:
            expected.append((content_primitive(h)[1], m))
    assert sorted(factor_z(f), key=repr) == sorted(expected, key=repr)


# ---------------------------------------------------------------------------
# properties


irreducible_small = st.lists(st.integers(-10, 10), min_size=2, max_size=5).map(IntPoly).filter(
    lambda f: f.degree >= 1 and is_irreducible(f)
)


@given(irreducible_small, irreducible_small)
def test_factor_round_trip(g, h):
    g, h = content_primitive(g)[1], content_primitive(h)[1]
    facs = factor_z(g * h)
    if g == h:
        assert facs == [(g, 2)]
    else:
        assert sorted(facs, key=repr) == sorted([(g, 1), (h, 1)], key=repr)


@given(nonconst, nonconst)
def test_resultant_zero_iff_common_factor(f, g):
    assert (resultant(f, g) == 0) == (gcd_q(f, g).degree >= 1)


@given(nonconst, st.integers(1, 3))
def test_squarefree_of_power(f, k):
    assert squarefree_part(f ** k) == squarefree_part(f)


@given(nonzero, nonzero)
def test_gauss_height_bound(f, g):
    assert naive_height(f * g) <= (min(f.degree, g.degree) + 1) * naive_height(f) * naive_height(g)


@given(nonconst)
def test_factor_product_reconstructs(f):
    assume(f.degree <= 5)
    prod = IntPoly((1,))
    for g, m in factor_z(f):
        prod = prod * g ** m
    c = f.content() * (1 if f.lc > 0 else -1)
    assert prod * c == f


@given(nonconst)
def test_complex_roots_certified(f):
    assume(f.degree <= 5)
    g = squarefree_part(f)
    eps = Fraction(1, 1 << 20)
    boxes = complex_roots(g, eps)
    assert len(boxes) == g.degree
    for i, a in enumerate(boxes):
        assert a.width <= eps
        for b in boxes[i + 1:]:
            assert not a.intersects(b)
        # the image of the box under g must contain 0
        assert eval_box(g, a).contains_zero()
    # conjugate symmetry
    for a in boxes:
        mirrored = ComplexBox(a.re_lo, a.re_hi, -a.im_hi, -a.im_lo)
        assert any(mirrored.intersects(b) for b in boxes)
