"""Pure-Python reference implementation of the scanning kernels.

Every function here has an identically behaving twin in ``_ckernels``.  A
quadratic is a triple ``(c, b, a)`` meaning ``a*x^2 + b*x + c``.  The height
condition is on the Mahler measure: ``M(f) <= P/Q``.  For an irreducible
quadratic that is equivalent to ``a <= X``, ``|c| <= X`` and
``X|b| <= X^2 + ac`` with ``X = P/Q``.
"""

from math import gcd, isqrt

BACKEND = "python"


def _bounds(P, Q, a, c):
    # |b| range allowed for fixed (a, c)
    real = (P * P + Q * Q * a * c) // (P * Q) if P * P + Q * Q * a * c >= 0 else -1
    cplx = isqrt(4 * a * c - 1) if a * c > 0 else -1
    return max(real, cplx)


def _admissible(P, Q, a, b, c):
    """Primitive, irreducible, and Mahler measure at most P/Q (a, |c| already bounded)."""
    disc = b * b - 4 * a * c
    if disc == 0:
        return False
    if disc > 0:
        if P * Q * abs(b) > P * P + Q * Q * a * c:
            return False
        r = isqrt(disc)
        if r * r == disc:
            return False
    return gcd(gcd(a, b), c) == 1


def count_quadratics(P: int, Q: int) -> list:
    """``counts[a]`` = number of admissible quadratics with leading coefficient ``a``."""
    amax = P // Q
    counts = [0] * (amax + 1)
    for a in range(1, amax + 1):
        n = 0
        for c in range(-amax, amax + 1):
            if c == 0:
                continue
            bm = _bounds(P, Q, a, c)
            for b in range(-bm, bm + 1):
                if _admissible(P, Q, a, b, c):
                    n += 1
        counts[a] = n
    return counts


def list_quadratics(P: int, Q: int, a: int) -> list:
    """Admissible quadratics with leading coefficient ``a``, ordered by (c, b)."""
    amax = P // Q
    out = []
    if a < 1 or a > amax:
        return out
    for c in range(-amax, amax + 1):
        if c == 0:
            continue
        bm = _bounds(P, Q, a, c)
        for b in range(-bm, bm + 1):
            if _admissible(P, Q, a, b, c):
                out.append((c, b, a))
    return out


def _det(m):
    """Bareiss fraction-free determinant of a small square integer matrix."""
    n = len(m)
    m = [row[:] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def small_resultant(f, g) -> int:
    """Sylvester resultant ``Res(f, g)`` of coefficient tuples (ascending, nonzero leads)."""
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    rows = []
    for i in range(n):
        row = [0] * size
        for j, v in enumerate(reversed(f)):
            row[i + j] = v
        rows.append(row)
    for i in range(m):
        row = [0] * size
        for j, v in enumerate(reversed(g)):
            row[i + j] = v
        rows.append(row)
    return _det(rows)


def _strip(r, primes, extra):
    for p in primes:
        while r % p == 0:
            r //= p
    g = gcd(r, extra)
    while g > 1:
        r //= g
        g = gcd(r, g)
    return r


def quadratic_hit_candidates(P: int, Q: int, g, strip_primes) -> list:
    """Admissible quadratics ``f`` for which some root may satisfy ``1/(alpha - beta)`` integral.

    ``g`` is the minimal polynomial of beta (ascending coefficients).  A
    quadratic is returned when ``Res(g, f) = 0``, when the Galois action on
    root pairs may be intransitive (``deg g >= 3``, or ``deg g = 2`` and
    ``disc(f) disc(g)`` is a square), or when ``|Res(g, f)|`` becomes 1 after
    removing the primes in ``strip_primes`` and those dividing ``a * lc(g)``.
    Everything not returned is certified to contain no hit.
    """
    g = tuple(g)
    n = len(g) - 1
    lcg = g[-1]
    dg = g[1] * g[1] - 4 * g[0] * g[2] if n == 2 else 0
    amax = P // Q
    out = []
    for a in range(1, amax + 1):
        for c in range(-amax, amax + 1):
            if c == 0:
                continue
            bm = _bounds(P, Q, a, c)
            for b in range(-bm, bm + 1):
                if not _admissible(P, Q, a, b, c):
                    continue
                if n >= 3:
                    out.append((c, b, a))
                    continue
                if n == 2:
                    prod = (b * b - 4 * a * c) * dg
                    if prod >= 0 and isqrt(prod) ** 2 == prod:
                        out.append((c, b, a))
                        continue
                r = abs(small_resultant(g, (c, b, a)))
                if r == 0 or _strip(r, strip_primes, a * lcg) == 1:
                    out.append((c, b, a))
    return out
