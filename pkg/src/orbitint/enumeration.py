"""Enumeration and counting of algebraic points of bounded degree and height.

Points of degree exactly ``e`` and height at most ``B`` correspond to the
primitive irreducible ``f`` of degree ``e`` with positive leading coefficient
and Mahler measure ``M(f) <= B^e``; each such ``f`` contributes its ``e``
roots.  Coefficient ranges come from ``|a_i| <= binom(e, i) M(f)``, which
is lossless.
"""

from __future__ import annotations

import itertools
import math
import statistics
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, gcd
from typing import Iterable, Iterator, Sequence

from . import kernels
from .algnum import INF, AlgebraicNumber, PlaceSet, ProjPoint, mahler_compare
from .zpoly import IntPoly, is_irreducible, norm2_squared


def as_bound(B) -> Fraction:
    """Coerce a height bound (int, Fraction, decimal string or float) to a Fraction."""
    if isinstance(B, Fraction):
        out = B
    elif isinstance(B, float):
        out = Fraction(str(B))
    else:
        out = Fraction(B)
    if out < 1:
        raise ValueError("height bound must be at least 1")
    return out


@dataclass(frozen=True)
class CountRecord:
    d: int
    B: Fraction
    total: int
    s_integral: dict = field(default_factory=dict)

    def __post_init__(self):
        for v in self.s_integral.values():
            if not 0 <= v <= self.total:
                raise ValueError("S-integral count out of range")


# ---------------------------------------------------------------------------
# raw polynomial boxes


def enum_polys(d: int, Hmax: int, primitive: bool = False, irreducible: bool = False) -> Iterator[IntPoly]:
    """Stream Pol+(d, Hmax): degree ``d``, positive leading coefficient, naive height <= Hmax."""
    if d < 1 or Hmax < 1:
        raise ValueError("need d >= 1 and Hmax >= 1")
    rng = range(-Hmax, Hmax + 1)
    for a in range(1, Hmax + 1):
        for rest in itertools.product(rng, repeat=d):
            coeffs = tuple(reversed(rest)) + (a,)
            if primitive and _content(coeffs) != 1:
                continue
            f = IntPoly(coeffs)
            if irreducible and not is_irreducible(f):
                continue
            yield f


def _content(coeffs) -> int:
    g = 0
    for c in coeffs:
        g = gcd(g, c)
    return g


# ---------------------------------------------------------------------------
# minimal polynomials of bounded height


def _ratio(X: Fraction) -> tuple[int, int]:
    return X.numerator, X.denominator


def _linear_for_lc(N: int, a: int) -> list[IntPoly]:
    return [IntPoly((c, a)) for c in range(-N, N + 1) if gcd(c, a) == 1]


def _generic_for_lc(e: int, X: Fraction, a: int) -> Iterator[IntPoly]:
    top = math.floor(X)
    ranges = [range(-top, top + 1)]  # a_0
    for i in range(1, e):
        m = math.floor(comb(e, i) * X)
        ranges.append(range(-m, m + 1))
    X2 = X * X
    for coeffs in itertools.product(*ranges):
        if coeffs[0] == 0:
            continue  # divisible by x
        full = coeffs + (a,)
        if _content(full) != 1:
            continue
        f = IntPoly(full)
        if not is_irreducible(f):
            continue
        # Landau: M(f) <= ||f||_2 settles most small polynomials without roots
        if norm2_squared(f) > X2 and mahler_compare(f, X) > 0:
            continue
        yield f


def minpolys_for_lc(e: int, B, a: int) -> list[IntPoly]:
    """Minimal polynomials of degree ``e``, leading coefficient ``a``, whose roots have height <= B."""
    B = as_bound(B)
    X = B ** e
    if a < 1 or a > X:
        return []
    if e == 1:
        return _linear_for_lc(math.floor(B), a)
    if e == 2:
        P, Q = _ratio(X)
        return [IntPoly(t) for t in kernels.list_quadratics(P, Q, a)]
    return list(_generic_for_lc(e, X, a))


def enum_minpolys(e: int, B) -> Iterator[IntPoly]:
    """Stream all minimal polynomials of exact degree ``e`` with root height <= B."""
    B = as_bound(B)
    X = B ** e
    for a in range(1, math.floor(X) + 1):
        yield from minpolys_for_lc(e, B, a)


def minpoly_counts_by_lc(e: int, B) -> list[int]:
    """``counts[a]`` = number of degree-``e`` minimal polynomials with leading coefficient ``a``."""
    B = as_bound(B)
    X = B ** e
    if e == 1:
        N = math.floor(B)
        counts = [0] * (N + 1)
        for a in range(1, N + 1):
            counts[a] = sum(1 for c in range(-N, N + 1) if gcd(c, a) == 1)
        return counts
    if e == 2:
        return kernels.count_quadratics(*_ratio(X))
    top = math.floor(X)
    counts = [0] * (top + 1)
    for a in range(1, top + 1):
        counts[a] = sum(1 for _ in _generic_for_lc(e, X, a))
    return counts


def enum_points(d: int, B) -> Iterator[ProjPoint]:
    """Stream P^1(Qbar, d, B): infinity first, then by degree, minimal polynomial, root index."""
    if d < 1:
        raise ValueError("d must be at least 1")
    B = as_bound(B)
    yield INF
    for e in range(1, d + 1):
        for f in enum_minpolys(e, B):
            for i in range(e):
                yield AlgebraicNumber(f, i)


def count_points(d: int, B, S_list: Sequence[PlaceSet] = ()) -> CountRecord:
    """Exact ``#P^1(Qbar, d, B)`` and, per place set, the number of S-integral points."""
    if d < 1:
        raise ValueError("d must be at least 1")
    B = as_bound(B)
    total = 1  # infinity
    integral = {str(S): 0 for S in S_list}
    for e in range(1, d + 1):
        counts = minpoly_counts_by_lc(e, B)
        total += e * sum(counts)
        for S in S_list:
            integral[str(S)] += e * sum(n for a, n in enumerate(counts) if a and S.strip(a) == 1)
    return CountRecord(d, B, total, integral)


def exponent_fit(records: Iterable[CountRecord], place_set: PlaceSet | str | None = None) -> float:
    """Least-squares slope of log(count) against log(B).

    Uses the total count, or the S-integral count for ``place_set``.
    """
    xs, ys = [], []
    for r in records:
        n = r.total if place_set is None else r.s_integral[str(place_set)]
        if n <= 0:
            raise ValueError("cannot fit a zero count")
        xs.append(math.log(r.B))
        ys.append(math.log(n))
    if len(xs) < 3:
        raise ValueError("exponent_fit needs at least three grid points")
    if any(b <= a for a, b in zip(xs, xs[1:])):
        raise ValueError("B grid must be increasing")
    return statistics.linear_regression(xs, ys).slope
