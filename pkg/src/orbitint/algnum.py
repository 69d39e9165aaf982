"""Exact algebraic numbers, points of P^1, Weil heights and S-integrality.

An algebraic number is stored as its primitive minimal polynomial together
with an index into the canonical, sorted list of that polynomial's roots.
Isolating boxes live in a shared per-polynomial cache and are refined on
demand, so two numbers are equal exactly when polynomial and index agree.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Union

import mpmath

from .errors import PrecisionCapError, precision_cap
from .zpoly import (
    ComplexBox,
    IntPoly,
    RootSet,
    content_primitive,
    factor_z,
    interpolate_integer,
    is_irreducible,
    resultant,
)
from .zpoly.roots import sqrt_bounds

_DEFAULT_EPS = Fraction(1, 1 << 24)

_rootsets: dict[IntPoly, RootSet] = {}
_rootsets_lock = threading.Lock()


def rootset(f: IntPoly) -> RootSet:
    """Shared canonical root isolation for a primitive squarefree polynomial."""
    rs = _rootsets.get(f)
    if rs is None:
        new = RootSet(f, _DEFAULT_EPS)
        with _rootsets_lock:
            rs = _rootsets.setdefault(f, new)
    return rs


# ---------------------------------------------------------------------------
# places


@dataclass(frozen=True)
class PlaceSet:
    """A finite set of rational primes; the archimedean place is always implied."""

    primes: tuple[int, ...] = ()

    def __post_init__(self):
        ps = tuple(sorted(set(int(p) for p in self.primes)))
        for p in ps:
            if not _is_prime(p):
                raise ValueError(f"{p} is not prime")
        object.__setattr__(self, "primes", ps)

    @classmethod
    def parse(cls, text: str) -> "PlaceSet":
        """Parse ``"inf"``, ``"2,3"`` or ``"inf,2,3"``."""
        primes = []
        for tok in text.split(","):
            tok = tok.strip().lower()
            if tok in ("", "inf", "infinity", "oo"):
                continue
            try:
                primes.append(int(tok))
            except ValueError:
                raise ValueError(f"bad place {tok!r}; expected a prime or 'inf'") from None
        return cls(tuple(primes))

    def __contains__(self, p) -> bool:
        return p in self.primes

    def union(self, other: "PlaceSet") -> "PlaceSet":
        return PlaceSet(self.primes + other.primes)

    def issubset(self, other: "PlaceSet") -> bool:
        return set(self.primes) <= set(other.primes)

    def strip(self, n: int) -> int:
        """Remove every factor of a prime in the set from ``|n|``."""
        n = abs(n)
        for p in self.primes:
            if n == 0:
                break
            while n % p == 0:
                n //= p
        return n

    def __str__(self) -> str:
        return ",".join(["inf"] + [str(p) for p in self.primes])


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


# ---------------------------------------------------------------------------
# algebraic numbers


class AlgebraicNumber:
    """A root of a primitive irreducible integer polynomial, selected by index."""

    __slots__ = ("minpoly", "index")

    def __init__(self, minpoly: IntPoly, index: int = 0):
        cont, prim = content_primitive(minpoly)
        if prim.degree < 1:
            raise ValueError("minimal polynomial must have degree >= 1")
        if not 0 <= index < prim.degree:
            raise IndexError(f"root index {index} out of range for degree {prim.degree}")
        self.minpoly = prim
        self.index = index

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_rational(cls, q) -> "AlgebraicNumber":
        q = Fraction(q)
        return cls(IntPoly((-q.numerator, q.denominator)), 0)

    @classmethod
    def nearest_root(cls, f: IntPoly, approx: complex) -> "AlgebraicNumber":
        """The root of ``f`` (any nonzero integer polynomial) closest to ``approx``."""
        best = None
        for g, _ in factor_z(f):
            rs = rootset(g)
            for i, b in enumerate(rs.boxes):
                dist = abs(b.approx() - approx)
                if best is None or dist < best[0]:
                    best = (dist, g, i)
        if best is None:
            raise ValueError("polynomial has no roots")
        return cls(best[1], best[2])

    # -- basic data ---------------------------------------------------------

    @property
    def degree(self) -> int:
        return self.minpoly.degree

    @property
    def lc(self) -> int:
        return self.minpoly.lc

    @property
    def box(self) -> ComplexBox:
        return rootset(self.minpoly).box(self.index)

    def refined_box(self, eps) -> ComplexBox:
        return rootset(self.minpoly).box(self.index, eps)

    def is_rational(self) -> bool:
        return self.minpoly.degree == 1

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not a rational number")
        return Fraction(-self.minpoly[0], self.minpoly[1])

    def is_zero(self) -> bool:
        return self.minpoly.degree == 1 and self.minpoly[0] == 0

    def conjugates(self) -> list["AlgebraicNumber"]:
        return [AlgebraicNumber(self.minpoly, i) for i in range(self.degree)]

    def approx(self) -> complex:
        if self.is_rational():
            return complex(float(self.as_fraction()), 0.0)
        return self.refined_box(Fraction(1, 1 << 60)).approx()

    # -- identity -----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraicNumber):
            return NotImplemented
        return self.minpoly == other.minpoly and self.index == other.index

    def __hash__(self) -> int:
        return hash((self.minpoly, self.index))

    def sort_key(self):
        return (self.degree, self.minpoly.coeffs, self.index)

    def __repr__(self) -> str:
        if self.is_rational():
            return f"AlgebraicNumber({self.as_fraction()})"
        z = self.approx()
        return f"AlgebraicNumber({self.minpoly.to_str('x')}, ~{z.real:.6g}{z.imag:+.6g}j)"

    def to_json(self) -> dict:
        z = self.approx()
        return {"minpoly": list(self.minpoly.coeffs), "approx": [z.real, z.imag]}

    @classmethod
    def from_json(cls, data: dict) -> "AlgebraicNumber":
        f = IntPoly(data["minpoly"])
        re, im = data.get("approx", [0.0, 0.0])
        return cls.nearest_root(f, complex(re, im))


class _Infinity:
    """The point [1:0] of P^1."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INF"

    def __reduce__(self):
        return (_Infinity, ())

    def to_json(self) -> dict:
        return {"point": "inf"}

    @property
    def degree(self) -> int:
        return 1


INF = _Infinity()
ProjPoint = Union[_Infinity, AlgebraicNumber]


def is_infinity(P) -> bool:
    return P is INF


def point_sort_key(P: ProjPoint):
    if P is INF:
        return (0, (), 0)
    return (P.degree, P.minpoly.coeffs, P.index)


def roots_of(f: IntPoly) -> list[AlgebraicNumber]:
    """All roots of a primitive irreducible ``f`` with positive leading coefficient."""
    if f.degree < 1:
        raise ValueError("roots_of needs degree >= 1")
    if f.lc <= 0 or f.content() != 1:
        raise ValueError(f"{f} is not primitive with positive leading coefficient")
    if not is_irreducible(f):
        raise ValueError(f"{f} is reducible over Q")
    return [AlgebraicNumber(f, i) for i in range(f.degree)]


def equals(a: AlgebraicNumber, b: AlgebraicNumber) -> bool:
    return a == b


# ---------------------------------------------------------------------------
# Mahler measure and heights


def _abs_bounds(box: ComplexBox, bits: int) -> tuple[Fraction, Fraction]:
    lo2, hi2 = box.modulus_sq_bounds()
    return sqrt_bounds(lo2, bits)[0], sqrt_bounds(hi2, bits)[1]


def _mahler_interval(f: IntPoly, eps: Fraction, bits: int):
    """Enclosure of M(f) plus the inside/outside classification of the roots."""
    rs = rootset(f)
    lo = hi = Fraction(f.lc)
    outside = inside = 0
    for i in range(f.degree):
        r_lo, r_hi = _abs_bounds(rs.box(i, eps), bits)
        lo *= max(1, r_lo)
        hi *= max(1, r_hi)
        if r_lo > 1:
            outside += 1
        elif r_hi < 1:
            inside += 1
    return lo, hi, outside, inside


def mahler_compare(f: IntPoly, X) -> int:
    """Certified sign of ``M(f) - X`` for primitive irreducible ``f`` and rational ``X``.

    Raises PrecisionCapError when the comparison cannot be decided within the
    configured precision cap.
    """
    X = Fraction(X)
    d = f.degree
    if d == 1:
        m = max(abs(f[0]), abs(f[1]))
        return (m > X) - (m < X)
    if d == 2:
        return _quadratic_compare(f, X)
    cap = precision_cap()
    bits = 32
    while bits <= cap:
        eps = Fraction(1, 1 << bits)
        lo, hi, outside, inside = _mahler_interval(f, eps, bits + 8)
        if hi < X:
            return -1
        if lo > X:
            return 1
        if outside + inside == d and outside in (0, d):
            m = Fraction(f.lc) if outside == 0 else Fraction(abs(f[0]))
            return (m > X) - (m < X)
        bits *= 2
    raise PrecisionCapError(f"cannot compare M({f}) with {X} within {cap} bits")


def _quadratic_compare(f: IntPoly, X: Fraction) -> int:
    # irreducible a x^2 + b x + c: M <= X  iff  a <= X, |c| <= X, X|b| <= X^2 + ac
    c, b, a = f.coeffs
    disc = b * b - 4 * a * c

    def le(strict: bool) -> bool:
        if strict:
            base = a < X and abs(c) < X
        else:
            base = a <= X and abs(c) <= X
        if not base or disc < 0:
            return base
        lhs, rhs = X * abs(b), X * X + a * c
        return lhs < rhs if strict else lhs <= rhs

    if le(True):
        return -1
    if le(False):
        return 0
    return 1


def height_le(f: IntPoly, B) -> bool:
    """True iff the roots of primitive irreducible ``f`` have height at most ``B``."""
    B = Fraction(B)
    return mahler_compare(f, B ** f.degree) <= 0


def mahler_measure(f: IntPoly, tol: float = 1e-13) -> float:
    """Mahler measure of a primitive irreducible ``f`` as a float (relative error ``tol``)."""
    d = f.degree
    if d == 1:
        return float(max(abs(f[0]), abs(f[1])))
    bits = 48
    cap = max(precision_cap(), 64)
    while True:
        lo, hi, _, _ = _mahler_interval(f, Fraction(1, 1 << bits), bits + 8)
        if hi - lo <= lo * Fraction(tol) or bits > 4 * cap:
            return float((lo + hi) / 2)
        bits *= 2


def weil_height(P: ProjPoint) -> float:
    """Absolute multiplicative Weil height; certified absolute error below 1e-12."""
    if P is INF:
        return 1.0
    f = P.minpoly
    d = f.degree
    if d == 1:
        return float(max(abs(f[0]), abs(f[1])))
    if d == 2:
        c, b, a = f.coeffs
        disc = b * b - 4 * a * c
        with mpmath.workdps(40):
            if disc < 0:
                m = mpmath.mpf(max(a, c))
            else:
                m = max(mpmath.mpf(a), mpmath.mpf(abs(c)), (abs(b) + mpmath.sqrt(disc)) / 2)
            return float(mpmath.sqrt(m))
    bits = 64
    while True:
        lo, hi, _, _ = _mahler_interval(f, Fraction(1, 1 << bits), bits + 8)
        with mpmath.workprec(bits + 32):
            h_lo = mpmath.root(mpmath.mpf(lo.numerator) / lo.denominator, d)
            h_hi = mpmath.root(mpmath.mpf(hi.numerator) / hi.denominator, d)
            if h_hi - h_lo < mpmath.mpf(10) ** -14:
                return float((h_lo + h_hi) / 2)
        bits *= 2
        if bits > 8 * precision_cap():
            raise PrecisionCapError(f"weil_height of root of {f} did not converge")


def log_height(P: ProjPoint) -> float:
    """Logarithmic Weil height ``h(P) = log H(P)``."""
    if P is INF:
        return 0.0
    f = P.minpoly
    if f.degree == 1:
        return _log_int(max(abs(f[0]), abs(f[1])))
    return math.log(weil_height(P))


def _log_int(n: int) -> float:
    """Natural log of a positive integer of any size."""
    n = abs(n)
    bl = n.bit_length()
    if bl < 1000:
        return math.log(n)
    shift = bl - 64
    return math.log(n >> shift) + shift * math.log(2)


# ---------------------------------------------------------------------------
# integrality and norms


def is_S_integral(P: ProjPoint, S: PlaceSet) -> bool:
    """alpha lies in O_S iff every prime of the leading coefficient of its minpoly is in S."""
    if P is INF:
        return False
    return S.strip(P.lc) == 1


def norm_shift(a, r: int) -> Fraction:
    """Norm of ``alpha - r`` from Q(alpha) to Q, i.e. ``(-1)^d f(r) / a_d``."""
    f = a.minpoly if isinstance(a, AlgebraicNumber) else content_primitive(a)[1]
    d = f.degree
    return Fraction((-1) ** d * f(r), f.lc)


# ---------------------------------------------------------------------------
# composed arithmetic


def select_root(
    candidates: Iterable[IntPoly],
    enclosure: Callable[[Fraction], ComplexBox],
    what: str = "value",
) -> AlgebraicNumber:
    """Pick the unique root among ``candidates`` lying in a shrinking enclosure.

    ``enclosure(eps)`` must return a certified box containing the target
    whose width tends to zero with ``eps``.  Candidates must be primitive and
    irreducible.
    """
    cands = [content_primitive(g)[1] for g in candidates]
    cap = precision_cap()
    bits = 24
    while bits <= cap:
        eps = Fraction(1, 1 << bits)
        enc = enclosure(eps)
        hits = []
        for g in cands:
            if g.degree == 1:
                if enc.contains(Fraction(-g[0], g[1])):
                    hits.append((g, 0))
                continue
            rs = rootset(g)
            w = min(enc.width, eps) or eps
            for i in range(g.degree):
                if rs.box(i, w).intersects(enc):
                    hits.append((g, i))
        if len(hits) == 1:
            return AlgebraicNumber(*hits[0])
        if not hits:
            raise ArithmeticError(f"no candidate root for {what}; enclosure lost the target")
        bits *= 2
    raise PrecisionCapError(f"could not select a unique root for {what} within {cap} bits")


def _enclosure(a: AlgebraicNumber, eps: Fraction) -> ComplexBox:
    if a.is_rational():
        return ComplexBox.point(a.as_fraction())
    return a.refined_box(eps)


def diff(a: AlgebraicNumber, b: AlgebraicNumber) -> AlgebraicNumber:
    """The algebraic number ``a - b`` (the rational 0 when ``a == b``)."""
    if a == b:
        return AlgebraicNumber.from_rational(0)
    if a.is_rational() and b.is_rational():
        return AlgebraicNumber.from_rational(a.as_fraction() - b.as_fraction())
    f, g = a.minpoly, b.minpoly
    e, n = f.degree, g.degree
    # R(x) = Res_y(g(y), f(x + y)) has the roots alpha_i - beta_j
    xs = list(range(e * n + 1))
    ys = [resultant(g, f.taylor_shift(x)) for x in xs]
    R = interpolate_integer(xs, ys)
    cands = [h for h, _ in factor_z(R)]
    return select_root(cands, lambda eps: _enclosure(a, eps) - _enclosure(b, eps), "difference")


def invert(a: AlgebraicNumber) -> AlgebraicNumber:
    """The reciprocal ``1/a``; raises ZeroDivisionError for zero."""
    if a.is_zero():
        raise ZeroDivisionError("cannot invert zero")
    if a.is_rational():
        return AlgebraicNumber.from_rational(1 / a.as_fraction())
    rev = a.minpoly.reversal()
    return select_root([rev], lambda eps: _enclosure(a, eps).reciprocal(), "reciprocal")
