# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled scanning kernels; behaviour matches ``_pykernels`` exactly.

Arithmetic is done in 64-bit integers with 128-bit intermediates.  The
Python-level wrappers reject inputs whose magnitudes could overflow, and the
dispatcher then falls back to the pure-Python twin.
"""

cdef extern from *:
    """
    #include <math.h>
    typedef __int128 i128;

    static long long isqrt64(long long n) {
        if (n <= 0) return 0;
        long long r = (long long)sqrtl((long double)n);
        while (r > 0 && r * r > n) r--;
        while ((r + 1) * (r + 1) <= n) r++;
        return r;
    }

    static int is_square128(i128 n) {
        if (n < 0) return 0;
        if (n == 0) return 1;
        i128 r = (i128)sqrtl((long double)n);
        while (r > 0 && r * r > n) r--;
        while ((r + 1) * (r + 1) <= n) r++;
        return r * r == n;
    }

    static i128 gcd128(i128 a, i128 b) {
        if (a < 0) a = -a;
        if (b < 0) b = -b;
        while (b) { i128 t = a % b; a = b; b = t; }
        return a;
    }

    static long long gcd64(long long a, long long b) {
        if (a < 0) a = -a;
        if (b < 0) b = -b;
        while (b) { long long t = a % b; a = b; b = t; }
        return a;
    }

    /* |Res(g, f)| for deg g in {1, 2} and f = a x^2 + b x + c */
    static i128 res_abs(int n, const long long *g, long long a, long long b, long long c) {
        i128 r;
        if (n == 1) {
            r = (i128)a * g[0] * g[0] - (i128)b * g[0] * g[1] + (i128)c * g[1] * g[1];
        } else {
            i128 u = (i128)a * g[0] - (i128)c * g[2];
            i128 v = (i128)a * g[1] - (i128)b * g[2];
            i128 w = (i128)b * g[0] - (i128)c * g[1];
            r = u * u - v * w;
        }
        return r < 0 ? -r : r;
    }

    static i128 strip128(i128 r, const long long *primes, int np, long long extra) {
        for (int i = 0; i < np; i++) {
            while (r % primes[i] == 0) r /= primes[i];
        }
        i128 g = gcd128(r, extra);
        while (g > 1) {
            r /= g;
            g = gcd128(r, g);
        }
        return r;
    }

    /* largest |b| worth scanning for fixed (a, c) */
    static long long b_bound(long long P, long long Q, long long a, long long c) {
        long long num = P * P + Q * Q * a * c;
        long long real = num >= 0 ? num / (P * Q) : -1;
        long long cplx = (a * c > 0) ? isqrt64(4 * a * c - 1) : -1;
        return real > cplx ? real : cplx;
    }

    static int admissible(long long P, long long Q, long long a, long long b, long long c) {
        long long disc = b * b - 4 * a * c;
        if (disc == 0) return 0;
        if (disc > 0) {
            long long ab = b < 0 ? -b : b;
            if (P * Q * ab > P * P + Q * Q * a * c) return 0;
            long long r = isqrt64(disc);
            if (r * r == disc) return 0;
        }
        return gcd64(gcd64(a, b), c) == 1;
    }
    """
    ctypedef long long i128
    long long isqrt64(long long n) nogil
    int is_square128(i128 n) nogil
    i128 res_abs(int n, const long long *g, long long a, long long b, long long c) nogil
    i128 strip128(i128 r, const long long *primes, int np, long long extra) nogil
    long long b_bound(long long P, long long Q, long long a, long long c) nogil
    int admissible(long long P, long long Q, long long a, long long b, long long c) nogil

BACKEND = "cython"

cdef long long _LIMIT = 1 << 30


cdef _check(P, Q):
    if P <= 0 or Q <= 0:
        raise ValueError("P and Q must be positive")
    if P > _LIMIT or Q > _LIMIT or P // Q > (1 << 16):
        raise OverflowError("bound too large for the compiled kernel")


def count_quadratics(P, Q):
    _check(P, Q)
    cdef long long p = P, q = Q
    cdef long long amax = p // q
    cdef long long a, b, c, bm, n
    counts = [0] * (amax + 1)
    for a in range(1, amax + 1):
        n = 0
        with nogil:
            for c in range(-amax, amax + 1):
                if c == 0:
                    continue
                bm = b_bound(p, q, a, c)
                for b in range(-bm, bm + 1):
                    if admissible(p, q, a, b, c):
                        n += 1
        counts[a] = n
    return counts


def list_quadratics(P, Q, a):
    _check(P, Q)
    cdef long long p = P, q = Q
    cdef long long amax = p // q
    cdef long long aa = a, b, c, bm
    out = []
    if aa < 1 or aa > amax:
        return out
    for c in range(-amax, amax + 1):
        if c == 0:
            continue
        bm = b_bound(p, q, aa, c)
        for b in range(-bm, bm + 1):
            if admissible(p, q, aa, b, c):
                out.append((c, b, aa))
    return out


def small_resultant(f, g):
    from ._pykernels import small_resultant as _sr
    return _sr(f, g)


def quadratic_hit_candidates(P, Q, g, strip_primes):
    _check(P, Q)
    g = tuple(g)
    cdef int n = len(g) - 1
    if n < 1:
        raise ValueError("g must have degree >= 1")
    if n <= 2 and max(abs(x) for x in g) > (1 << 20):
        raise OverflowError("beta coefficients too large for the compiled kernel")
    if any(p > (1 << 40) for p in strip_primes):
        raise OverflowError("prime too large for the compiled kernel")
    cdef long long gc[3]
    cdef long long primes[64]
    cdef int np = len(strip_primes)
    if np > 64:
        raise OverflowError("too many primes for the compiled kernel")
    cdef int i
    for i in range(3):
        gc[i] = g[i] if i <= n and n <= 2 else 0
    for i in range(np):
        primes[i] = strip_primes[i]
    cdef long long lcg = g[n] if n <= 2 else 1
    cdef long long dg = gc[1] * gc[1] - 4 * gc[0] * gc[2] if n == 2 else 0
    cdef long long p = P, q = Q
    cdef long long amax = p // q
    cdef long long a, b, c, bm
    cdef i128 r, prod
    out = []
    for a in range(1, amax + 1):
        for c in range(-amax, amax + 1):
            if c == 0:
                continue
            bm = b_bound(p, q, a, c)
            for b in range(-bm, bm + 1):
                if not admissible(p, q, a, b, c):
                    continue
                if n >= 3:
                    out.append((c, b, a))
                    continue
                if n == 2:
                    prod = <i128>(b * b - 4 * a * c) * dg
                    if prod >= 0 and is_square128(prod):
                        out.append((c, b, a))
                        continue
                r = res_abs(n, gc, a, b, c)
                if r == 0 or strip128(r, primes, np, a * lcg) == 1:
                    out.append((c, b, a))
    return out
