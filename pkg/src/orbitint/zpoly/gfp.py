"""Polynomials over the prime field F_p and their complete factorization.

A polynomial over F_p is a tuple of residues in ascending degree order with
no trailing zeros.  Factorization runs squarefree decomposition, then
distinct-degree, then Cantor-Zassenhaus equal-degree splitting with a seeded
generator, so results are reproducible.
"""

from __future__ import annotations

import random

from .poly import IntPoly

GFPoly = tuple  # tuple[int, ...]


def gf_strip(c) -> GFPoly:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def gf_from_int(f: IntPoly, p: int) -> GFPoly:
    return gf_strip(a % p for a in f.coeffs)


def gf_to_int(f: GFPoly, symmetric: bool = False, p: int | None = None) -> IntPoly:
    if symmetric:
        half = p // 2
        return IntPoly(a - p if a > half else a for a in f)
    return IntPoly(f)


def gf_deg(f: GFPoly) -> int:
    return len(f) - 1


def gf_add(f: GFPoly, g: GFPoly, p: int) -> GFPoly:
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, v in enumerate(g):
        out[i] = (out[i] + v) % p
    return gf_strip(out)


def gf_sub(f: GFPoly, g: GFPoly, p: int) -> GFPoly:
    n = max(len(f), len(g))
    out = [0] * n
    for i, v in enumerate(f):
        out[i] = v
    for i, v in enumerate(g):
        out[i] = (out[i] - v) % p
    return gf_strip(out)


def gf_mul(f: GFPoly, g: GFPoly, p: int) -> GFPoly:
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, u in enumerate(f):
        if u:
            for j, v in enumerate(g):
                out[i + j] += u * v
    return gf_strip(a % p for a in out)


def gf_scale(f: GFPoly, c: int, p: int) -> GFPoly:
    return gf_strip((a * c) % p for a in f)


def gf_divmod(f: GFPoly, g: GFPoly, p: int) -> tuple[GFPoly, GFPoly]:
    if not g:
        raise ZeroDivisionError("division by zero polynomial over F_p")
    df, dg = len(f) - 1, len(g) - 1
    if df < dg:
        return (), f
    inv = pow(g[-1], -1, p)
    r = list(f)
    q = [0] * (df - dg + 1)
    for k in range(df - dg, -1, -1):
        c = (r[dg + k] * inv) % p
        q[k] = c
        if c:
            for j in range(dg + 1):
                r[j + k] = (r[j + k] - c * g[j]) % p
    return gf_strip(q), gf_strip(r[:dg])


def gf_rem(f: GFPoly, g: GFPoly, p: int) -> GFPoly:
    return gf_divmod(f, g, p)[1]


def gf_quo(f: GFPoly, g: GFPoly, p: int) -> GFPoly:
    return gf_divmod(f, g, p)[0]


def gf_monic(f: GFPoly, p: int) -> GFPoly:
    if not f:
        return f
    inv = pow(f[-1], -1, p)
    return tuple((a * inv) % p for a in f)


def gf_gcd(f: GFPoly, g: GFPoly, p: int) -> GFPoly:
    while g:
        f, g = g, gf_rem(f, g, p)
    return gf_monic(f, p)


def gf_gcdex(f: GFPoly, g: GFPoly, p: int) -> tuple[GFPoly, GFPoly, GFPoly]:
    """Return ``(s, t, h)`` with ``s f + t g = h = gcd(f, g)`` monic."""
    r0, r1 = f, g
    s0, s1 = (1,), ()
    t0, t1 = (), (1,)
    while r1:
        q, r = gf_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, gf_sub(s0, gf_mul(q, s1, p), p)
        t0, t1 = t1, gf_sub(t0, gf_mul(q, t1, p), p)
    if not r0:
        return s0, t0, r0
    inv = pow(r0[-1], -1, p)
    return gf_scale(s0, inv, p), gf_scale(t0, inv, p), gf_scale(r0, inv, p)


def gf_derivative(f: GFPoly, p: int) -> GFPoly:
    return gf_strip((i * a) % p for i, a in enumerate(f) if i > 0)


def gf_powmod(f: GFPoly, n: int, m: GFPoly, p: int) -> GFPoly:
    result: GFPoly = (1,)
    base = gf_rem(f, m, p)
    while n:
        if n & 1:
            result = gf_rem(gf_mul(result, base, p), m, p)
        n >>= 1
        if n:
            base = gf_rem(gf_mul(base, base, p), m, p)
    return result


def gf_pth_root(f: GFPoly, p: int) -> GFPoly:
    # f(x) = g(x^p); coefficients are fixed by Frobenius on F_p
    return gf_strip(f[i] for i in range(0, len(f), p))


def gf_eval(f: GFPoly, x: int, p: int) -> int:
    acc = 0
    for a in reversed(f):
        acc = (acc * x + a) % p
    return acc


# ---------------------------------------------------------------------------
# factorization


def gf_sqf_list(f: GFPoly, p: int) -> list[tuple[GFPoly, int]]:
    """Squarefree decomposition of a monic ``f``: pairwise coprime factors."""
    out: list[tuple[GFPoly, int]] = []
    if len(f) <= 1:
        return out
    df = gf_derivative(f, p)
    if df:
        g = gf_gcd(f, df, p)
        w = gf_quo(f, g, p)
        i = 1
        while len(w) > 1:
            y = gf_gcd(w, g, p)
            z = gf_quo(w, y, p)
            if len(z) > 1:
                out.append((gf_monic(z, p), i))
            i += 1
            w = y
            g = gf_quo(g, y, p)
        if len(g) > 1:
            for h, j in gf_sqf_list(gf_monic(gf_pth_root(g, p), p), p):
                out.append((h, j * p))
    else:
        for h, j in gf_sqf_list(gf_monic(gf_pth_root(f, p), p), p):
            out.append((h, j * p))
    return out


def gf_ddf(f: GFPoly, p: int) -> list[tuple[GFPoly, int]]:
    """Distinct-degree factorization of a monic squarefree ``f``."""
    out = []
    x = (0, 1)
    h = x
    i = 1
    while len(f) - 1 >= 2 * i:
        h = gf_powmod(h, p, f, p)
        g = gf_gcd(f, gf_sub(h, x, p), p)
        if len(g) > 1:
            out.append((g, i))
            f = gf_quo(f, g, p)
            h = gf_rem(h, f, p)
        i += 1
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def gf_edf(f: GFPoly, d: int, p: int, rng: random.Random) -> list[GFPoly]:
    """Split a monic ``f`` whose irreducible factors all have degree ``d``."""
    n = len(f) - 1
    if n == d:
        return [f]
    if p == 2:
        while True:
            a = gf_strip(rng.randrange(2) for _ in range(n))
            if len(a) <= 1:
                continue
            # trace map a + a^2 + ... + a^(2^(d-1))
            t = a
            s = a
            for _ in range(d - 1):
                t = gf_rem(gf_mul(t, t, p), f, p)
                s = gf_add(s, t, p)
            g = gf_gcd(f, s, p)
            if 1 < len(g) <= n:
                break
    else:
        e = (p ** d - 1) // 2
        while True:
            a = gf_strip(rng.randrange(p) for _ in range(n))
            if len(a) <= 1:
                continue
            g = gf_gcd(f, a, p)
            if 1 < len(g) < n + 1:
                break
            b = gf_sub(gf_powmod(a, e, f, p), (1,), p)
            g = gf_gcd(f, b, p)
            if 1 < len(g) < n + 1:
                break
    return gf_edf(g, d, p, rng) + gf_edf(gf_quo(f, g, p), d, p, rng)


def _sort_key(item):
    poly, mult = item
    return (len(poly), poly, mult)


def factor_mod_p(f: IntPoly, p: int, seed: int = 0) -> list[tuple[GFPoly, int]]:
    """Complete factorization of ``f`` over F_p into monic irreducibles.

    ``f`` equals ``lc(f)`` times the product of the returned factors raised to
    their multiplicities, modulo ``p``.
    """
    if f.lc % p == 0:
        raise ValueError(f"p={p} divides the leading coefficient")
    g = gf_monic(gf_from_int(f, p), p)
    if len(g) <= 1:
        return []
    rng = random.Random(seed)
    out = []
    for part, mult in gf_sqf_list(g, p):
        for block, d in gf_ddf(part, p):
            for irr in gf_edf(block, d, p, rng):
                out.append((irr, mult))
    out.sort(key=_sort_key)
    return out


def gf_is_squarefree(f: GFPoly, p: int) -> bool:
    return len(gf_gcd(f, gf_derivative(f, p), p)) == 1


def gf_roots(f: GFPoly, p: int) -> list[int]:
    """Distinct roots in F_p, ascending."""
    f = gf_monic(f, p)
    xp = gf_powmod((0, 1), p, f, p)
    lin = gf_gcd(f, gf_sub(xp, (0, 1), p), p)
    roots = []
    for irr in gf_edf(lin, 1, p, random.Random(0)) if len(lin) > 1 else []:
        roots.append((-irr[0]) % p)
    return sorted(roots)
