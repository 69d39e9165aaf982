"""Factorization over Z: factor modulo a good prime, Hensel lift, recombine.

Recombination is an exhaustive subset search, which is fine at the degrees
this package works with (minimal polynomials and resultants of degree <= ~16).
"""

from __future__ import annotations

from itertools import combinations
from math import isqrt

from . import gfp
from .poly import IntPoly, content_primitive, exact_divide, norm2_squared, squarefree_part

_SMALL_PRIMES = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73,
    79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157,
    163, 167, 173, 179, 181, 191, 193, 197, 199, 211, 223, 227, 229, 233, 239,
]


# -- polynomial arithmetic modulo m (lists, ascending) -------------------------


def _pm(f, m):
    out = [a % m for a in f]
    while out and out[-1] == 0:
        out.pop()
    return out


def _pm_mul(f, g, m):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, u in enumerate(f):
        if u:
            for j, v in enumerate(g):
                out[i + j] += u * v
    return _pm(out, m)


def _pm_add(f, g, m):
    n = max(len(f), len(g))
    return _pm([(f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n)], m)


def _pm_sub(f, g, m):
    n = max(len(f), len(g))
    return _pm([(f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0) for i in range(n)], m)


def _pm_divmod_monic(f, h, m):
    """Divide by a monic ``h`` modulo ``m``."""
    dh = len(h) - 1
    r = list(f)
    if len(r) - 1 < dh:
        return [], _pm(r, m)
    q = [0] * (len(r) - dh)
    for k in range(len(r) - 1 - dh, -1, -1):
        c = r[dh + k] % m
        q[k] = c
        if c:
            for j in range(dh + 1):
                r[j + k] -= c * h[j]
    return _pm(q, m), _pm(r[:dh], m)


def _hensel_step(m, f, g, h, s, t):
    """One quadratic lifting step from modulus m to m^2 (h monic)."""
    m2 = m * m
    e = _pm_sub(f, _pm_mul(g, h, m2), m2)
    q, r = _pm_divmod_monic(_pm_mul(s, e, m2), h, m2)
    g1 = _pm_add(_pm_add(g, _pm_mul(t, e, m2), m2), _pm_mul(q, g, m2), m2)
    h1 = _pm_add(h, r, m2)
    b = _pm_sub(_pm_add(_pm_mul(s, g1, m2), _pm_mul(t, h1, m2), m2), [1], m2)
    c, d = _pm_divmod_monic(_pm_mul(s, b, m2), h1, m2)
    s1 = _pm_sub(s, d, m2)
    t1 = _pm_sub(_pm_sub(t, _pm_mul(t, b, m2), m2), _pm_mul(c, g1, m2), m2)
    return g1, h1, s1, t1


def hensel_lift(f: IntPoly, factors: list[tuple], p: int, bound: int) -> tuple[list[list[int]], int]:
    """Lift monic factors of ``f`` mod p to a modulus ``M = p^(2^j) > bound``.

    Returns the lifted monic factors (as residue lists mod M) and M.
    """
    M = p
    while M <= bound:
        M *= M
    lifted = []
    cur = list(f.coeffs)
    rest = [list(u) for u in factors]
    while len(rest) > 1:
        h = rest[0]
        lc_cur = cur[-1] % p
        g = [lc_cur]
        for u in rest[1:]:
            g = _pm_mul(g, u, p)
        s, t, one = gfp.gf_gcdex(tuple(g), tuple(h), p)
        assert one == (1,), "factors not coprime modulo p"
        s, t = list(s), list(t)
        m = p
        while m < M:
            g, h, s, t = _hensel_step(m, cur, g, h, s, t)
            m *= m
        lifted.append(h)
        cur = g
        rest = rest[1:]
    inv = pow(cur[-1] % M, -1, M)
    lifted.append(_pm([a * inv for a in cur], M))
    return lifted, M


def _symmetric(f, M):
    half = M // 2
    return IntPoly(a - M if a > half else a for a in f)


def _choose_prime(f: IntPoly, tries: int = 4):
    best = None
    found = 0
    for p in _SMALL_PRIMES:
        if f.lc % p == 0:
            continue
        fb = gfp.gf_monic(gfp.gf_from_int(f, p), p)
        if not gfp.gf_is_squarefree(fb, p):
            continue
        count = 0
        for block, d in gfp.gf_ddf(fb, p):
            count += (len(block) - 1) // d
        if best is None or count < best[1]:
            best = (p, count)
        found += 1
        if count == 1 or found >= tries:
            break
    if best is None:
        raise RuntimeError("no good prime found for factorization")
    return best[0]


def _factor_squarefree(f: IntPoly) -> list[IntPoly]:
    """Irreducible factors of a primitive squarefree ``f`` with positive lc."""
    n = f.degree
    if n <= 1:
        return [f]
    if n == 2:
        c, b, a = f.coeffs
        r = isqrt(max(b * b - 4 * a * c, 0))
        if r * r != b * b - 4 * a * c:
            return [f]
        # rational roots (-b +- r) / 2a
        out = []
        for num in (-b - r, -b + r):
            out.append(content_primitive(IntPoly((-num, 2 * a)))[1])
        return out
    if f[0] == 0:
        return [IntPoly((0, 1))] + _factor_squarefree(IntPoly(f.coeffs[1:]))
    p = _choose_prime(f)
    modp_factors = [u for u, _ in gfp.factor_mod_p(f, p)]
    if len(modp_factors) == 1:
        return [f]
    # Mignotte-type bound on coefficients of lc(f) * (factor / lc(factor))
    norm = isqrt(norm2_squared(f)) + 1
    bound = 2 * abs(f.lc) * (2 ** n) * norm
    lifted, M = hensel_lift(f, modp_factors, p, bound)

    result = []
    cur = f
    u = lifted
    size = 1
    while 2 * size <= len(u):
        found = False
        for subset in combinations(range(len(u)), size):
            g = [cur.lc % M]
            for i in subset:
                g = _pm_mul(g, u[i], M)
            cand = content_primitive(_symmetric(g, M))[1]
            if cand.degree <= 0:
                continue
            # cheap constant-term filter before full division
            if cand[0] and cur[0] % cand[0]:
                continue
            try:
                quo = exact_divide(cur, cand)
            except ValueError:
                continue
            result.append(cand)
            cur = quo
            u = [u[i] for i in range(len(u)) if i not in subset]
            found = True
            break
        if not found:
            size += 1
    if cur.degree > 0:
        result.append(content_primitive(cur)[1])
    return result


def _key(item):
    g, e = item
    return (g.degree, g.coeffs, e)


def factor_z(f: IntPoly) -> list[tuple[IntPoly, int]]:
    """Irreducible factorization over Z, ignoring the content.

    Factors are primitive with positive leading coefficients and the list is
    sorted by degree, then coefficients.

    >>> factor_z(IntPoly([-1, 0, 0, 0, 1]))
    [(IntPoly([-1, 1]), 1), (IntPoly([1, 1]), 1), (IntPoly([1, 0, 1]), 1)]
    """
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    _, prim = content_primitive(f)
    if prim.degree <= 0:
        return []
    sqf = squarefree_part(prim)
    out = []
    for g in _factor_squarefree(sqf):
        e = 0
        rest = prim
        while True:
            try:
                rest = exact_divide(rest, g)
            except ValueError:
                break
            e += 1
        out.append((g, e))
    out.sort(key=_key)
    return out


def is_irreducible(f: IntPoly) -> bool:
    """Irreducible over Q (content ignored); constants are not irreducible."""
    if f.degree <= 0:
        return False
    if f.degree == 1:
        return True
    fs = factor_z(f)
    return len(fs) == 1 and fs[0][1] == 1
