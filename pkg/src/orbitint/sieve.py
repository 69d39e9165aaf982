"""Prime-sieve counting around a fixed algebraic number beta.

For primes p at which the minimal polynomial g of beta splits into distinct
linear factors, a root r_p of g mod p is fixed.  A polynomial f "meets" p
when ``a_d != 0 (mod p)`` and ``f(r_p) = 0 (mod p)``; its roots then lie
p-adically close to beta, so ``1/(alpha - beta)`` cannot be integral at p.
This module counts such polynomials exactly (F_m), sieves them out by
inclusion-exclusion (G_k), and measures the resulting density directly.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import Sequence

from . import kernels
from .algnum import (
    AlgebraicNumber,
    PlaceSet,
    _enclosure,
    diff,
    invert,
    is_S_integral,
    roots_of,
    select_root,
)
from .enumeration import as_bound, count_points, enum_minpolys
from .zpoly import IntPoly, content_primitive, discriminant, factor_z, gf_roots, interpolate_integer, resultant
from .zpoly.gfp import gf_from_int

SEARCH_LIMIT = 10 ** 6


def _primes():
    yield 2
    n = 3
    while True:
        if all(n % q for q in range(3, math.isqrt(n) + 1, 2)):
            yield n
        n += 2


@dataclass(frozen=True)
class SieveContext:
    beta: AlgebraicNumber
    T: PlaceSet
    primes: tuple  # ((p, r_p), ...)

    def __post_init__(self):
        g = self.beta.minpoly
        disc = discriminant(g)
        for p, r in self.primes:
            if p in self.T or g.lc % p == 0 or disc % p == 0:
                raise ValueError(f"prime {p} is not admissible")
            if not 0 <= r < p or g(r) % p:
                raise ValueError(f"r={r} is not a root of g modulo {p}")

    @classmethod
    def build(cls, beta, k: int, T: PlaceSet = PlaceSet()) -> "SieveContext":
        """Context for ``beta`` (an AlgebraicNumber or a minimal polynomial) with ``k`` split primes."""
        if isinstance(beta, IntPoly):
            beta = roots_of(beta)[-1]
        return cls(beta, T, tuple(split_primes(beta.minpoly, k, T)))

    @property
    def g(self) -> IntPoly:
        return self.beta.minpoly


def split_primes(g: IntPoly, k: int, T: PlaceSet = PlaceSet()) -> list[tuple[int, int]]:
    """The first ``k`` primes at which ``g`` splits into distinct linear factors, with ``r_p``.

    Primes in T, primes dividing the leading coefficient and primes dividing
    the discriminant are skipped; ``r_p`` is the smallest root of g mod p.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    disc = discriminant(g)
    out = []
    for p in _primes():
        if len(out) >= k:
            break
        if p > SEARCH_LIMIT:
            raise RuntimeError(f"fewer than {k} split primes below {SEARCH_LIMIT}")
        if p in T or g.lc % p == 0 or disc % p == 0:
            continue
        roots = gf_roots(gf_from_int(g, p), p)
        if len(roots) == g.degree:
            out.append((p, roots[0]))
    return out


def main_term(primes: Sequence[int], d: int, B) -> Fraction:
    B = Fraction(B)
    return prod((Fraction(p - 1, p * p) for p in primes), start=Fraction(1)) * 2 ** d * B ** (d + 1)


def count_F_m(ctx: SieveContext, d: int, B: int, m_primes: Sequence) -> tuple[int, float]:
    """Exact number of f in Pol+(d, B) meeting every prime of ``m_primes``, and the main term.

    ``m_primes`` holds entries of ``ctx.primes`` (pairs) or bare primes from it.
    The count runs over the leading strata ``(a_d, ..., a_1)``; the surviving
    constant terms form one residue class modulo ``prod(p)`` by CRT.
    """
    if d < 1:
        raise ValueError("d must be at least 1")
    B = int(B)
    table = dict(ctx.primes)
    entries = []
    for e in m_primes:
        p = e[0] if isinstance(e, tuple) else e
        if p not in table:
            raise ValueError(f"{p} is not one of the context primes")
        entries.append((p, table[p]))
    if len({p for p, _ in entries}) != len(entries):
        raise ValueError("primes in m must be distinct")
    mt = float(main_term([p for p, _ in entries], d, B))
    if not entries:
        return B * (2 * B + 1) ** d, mt

    M = prod(p for p, _ in entries)
    # CRT idempotents and powers r_p^i mod p
    basis = [(M // p) * pow(M // p, -1, p) % M for p, _ in entries]
    powers = [[pow(r, i, p) for i in range(d + 1)] for p, r in entries]
    rng = range(-B, B + 1)
    total = 0
    for a in range(1, B + 1):
        if any(a % p == 0 for p, _ in entries):
            continue
        for mid in itertools.product(rng, repeat=d - 1):
            coeffs = (a,) + mid  # a_d, a_{d-1}, ..., a_1
            t = 0
            for (p, _), pw, e in zip(entries, powers, basis):
                s = 0
                for j, c in enumerate(coeffs):
                    s += c * pw[d - j]
                t += (-s % p) * e
            t %= M
            total += (B - t) // M - (-B - 1 - t) // M
    return total, mt


def count_G_k(ctx: SieveContext, d: int, B: int, k: int) -> int:
    """Polynomials of Pol+(d, B) meeting none of the first ``k`` primes (Mobius sum)."""
    if k > len(ctx.primes):
        raise ValueError("k exceeds the number of context primes")
    first = ctx.primes[:k]
    total = 0
    for size in range(k + 1):
        for subset in itertools.combinations(first, size):
            total += (-1) ** size * count_F_m(ctx, d, B, subset)[0]
    return total


def euler_product(ctx: SieveContext, k: int) -> Fraction:
    """Exact partial product of ``1 - (p-1)/p^2`` over the first ``k`` primes."""
    if k > len(ctx.primes):
        raise ValueError("k exceeds the number of context primes")
    out = Fraction(1)
    for p, _ in ctx.primes[:k]:
        out *= 1 - Fraction(p - 1, p * p)
    return out


def in_I_p(a, ctx: SieveContext, p_entry) -> bool:
    """Congruence membership: ``f(r_p) = 0`` and ``a_d != 0`` modulo p, with f the minimal polynomial.

    Raises ValueError when p divides the leading coefficient.
    """
    f = a.minpoly if isinstance(a, AlgebraicNumber) else content_primitive(a)[1]
    p, r = p_entry if isinstance(p_entry, tuple) else (p_entry, dict(ctx.primes)[p_entry])
    if f.lc % p == 0:
        raise ValueError(f"p={p} divides the leading coefficient of {f}")
    return f(r) % p == 0


# ---------------------------------------------------------------------------
# the density experiment


def difference_resultant(f: IntPoly, g: IntPoly) -> IntPoly:
    """``R(x) = Res_y(g(y), f(x + y))``, whose roots are all ``alpha_i - beta_j``."""
    n = f.degree * g.degree
    xs = list(range(n + 1))
    return interpolate_integer(xs, [resultant(g, f.taylor_shift(x)) for x in xs])


def _single_orbit(f: IntPoly, g: IntPoly) -> bool | None:
    """True when all ``alpha_i - beta_j`` are known to be conjugate, None if undecided."""
    if f.degree == 1 or g.degree == 1:
        return True
    if f.degree == 2 and g.degree == 2:
        # the four differences form one Galois orbit unless Q(alpha) = Q(beta)
        prod_disc = discriminant(f) * discriminant(g)
        return not (prod_disc >= 0 and math.isqrt(prod_disc) ** 2 == prod_disc)
    return None


def hit_roots(f: IntPoly, beta: AlgebraicNumber, T: PlaceSet) -> list[AlgebraicNumber]:
    """Roots alpha of ``f`` with ``1/(alpha - beta)`` integral outside T.

    When the differences ``alpha_i - beta_j`` are all conjugate, ``R`` above
    is ``c h^k`` for the common minimal polynomial h, so the answer is
    all-or-nothing and decided by whether ``h(0)^k = R(0)/content(R)`` is a
    T-unit.  Otherwise each root is placed on its own irreducible factor of R
    by certified root selection and checked through its reciprocal.
    """
    g = beta.minpoly
    R = difference_resultant(f, g)
    single = _single_orbit(f, g)
    factors = None
    if single is None:
        factors = [h for h, _ in factor_z(R)]
        single = len(factors) == 1
    if single:
        cont, prim = content_primitive(R)
        if prim[0] != 0 and T.strip(prim[0]) == 1:
            return [AlgebraicNumber(f, i) for i in range(f.degree)]
        return []
    if factors is None:
        factors = [h for h, _ in factor_z(R)]
    out = []
    for i in range(f.degree):
        alpha = AlgebraicNumber(f, i)
        if alpha == beta:
            continue
        gamma = select_root(factors, lambda eps: _enclosure(alpha, eps) - _enclosure(beta, eps), "difference")
        if is_S_integral(invert(gamma), T):
            out.append(alpha)
    return out


def hit_roots_exact(f: IntPoly, beta: AlgebraicNumber, T: PlaceSet) -> list[AlgebraicNumber]:
    """Per-root check through ``invert(diff(alpha, beta))``; alpha = beta never counts."""
    out = []
    for i in range(f.degree):
        alpha = AlgebraicNumber(f, i)
        if alpha == beta:
            continue
        if is_S_integral(invert(diff(alpha, beta)), T):
            out.append(alpha)
    return out


def _quick_reject(f: IntPoly, g: IntPoly, T: PlaceSet) -> bool:
    """Certified rejection when Res(g, f) keeps a prime outside T and lc(f) lc(g).

    Only valid when every ``alpha_i - beta_j`` is conjugate to the others,
    which holds when f is linear.
    """
    r = abs(resultant(g, f))
    if r == 0:
        return False
    r = T.strip(r)
    extra = f.lc * g.lc
    c = math.gcd(r, extra)
    while c > 1:
        r //= c
        c = math.gcd(r, c)
    return r != 1


@dataclass
class DensityRow:
    B: Fraction
    total: int
    hits: int

    @property
    def ratio(self) -> float:
        return self.hits / self.total


@dataclass
class DensityResult:
    rows: list = field(default_factory=list)
    # (B, alpha, primes p of the context with alpha outside I_p, primes with alpha in I_p)
    hit_details: list = field(default_factory=list)


def density_candidates(g: IntPoly, e: int, B, T: PlaceSet):
    """Degree-``e`` minimal polynomials that may carry hits; the rest certifiably carry none."""
    B = as_bound(B)
    if e == 2:
        X = B * B
        return [IntPoly(t) for t in kernels.quadratic_hit_candidates(X.numerator, X.denominator, g.coeffs, T.primes)]
    if e == 1:
        return [f for f in enum_minpolys(1, B) if not _quick_reject(f, g, T)]
    return list(enum_minpolys(e, B))


def density_experiment(ctx: SieveContext, d: int, B_grid: Sequence, S: PlaceSet = PlaceSet()) -> DensityResult:
    """Exact ratio of points integral against beta to all points, per height bound.

    A finite alpha of degree <= d is a hit when ``1/(alpha - beta)`` lies in
    O_T' with ``T' = ctx.T`` joined with S.
    """
    grid = [as_bound(b) for b in B_grid]
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("B grid must be increasing")
    T = ctx.T.union(S)
    beta = ctx.beta
    result = DensityResult()
    for B in grid:
        hits = []
        for e in range(1, d + 1):
            for f in density_candidates(beta.minpoly, e, B, T):
                hits.extend(hit_roots(f, beta, T))
        total = count_points(d, B).total
        result.rows.append(DensityRow(B, total, len(hits)))
        for alpha in hits:
            outside, inside = [], []
            for p, r in ctx.primes:
                if alpha.lc % p == 0 or not in_I_p(alpha, ctx, (p, r)):
                    outside.append(p)
                else:
                    inside.append(p)
            result.hit_details.append((B, alpha, outside, inside))
    return result
