"""Dense univariate polynomials with arbitrary-precision integer coefficients.

Coefficients are stored in ascending degree order, ``coeffs[i]`` being the
coefficient of ``x**i``.  The zero polynomial has an empty coefficient tuple
and degree ``-1``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Sequence


class IntPoly:
    """Immutable integer polynomial ``a_0 + a_1 x + ... + a_d x^d``."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[int, ...] = tuple(c)
        self._hash = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def x(cls) -> "IntPoly":
        return cls((0, 1))

    @classmethod
    def constant(cls, c: int) -> "IntPoly":
        return cls((c,))

    @classmethod
    def monomial(cls, n: int, c: int = 1) -> "IntPoly":
        return cls([0] * n + [c])

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> "IntPoly":
        out = cls((1,))
        for r in roots:
            out = out * cls((-r, 1))
        return out

    # -- basic properties -------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __eq__(self, other) -> bool:
        if isinstance(other, IntPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == IntPoly((other,)).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(("IntPoly", self.coeffs))
        return self._hash

    def __repr__(self) -> str:
        return f"IntPoly({list(self.coeffs)})"

    def __str__(self) -> str:
        return self.to_str("x")

    def to_str(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            a = self.coeffs[i]
            if a == 0:
                continue
            sign = "-" if a < 0 else "+"
            m = abs(a)
            if i == 0:
                body = str(m)
            else:
                mono = var if i == 1 else f"{var}^{i}"
                body = mono if m == 1 else f"{m}*{mono}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    # -- arithmetic -------------------------------------------------------

    def __neg__(self) -> "IntPoly":
        return IntPoly(-a for a in self.coeffs)

    def __add__(self, other) -> "IntPoly":
        if isinstance(other, int):
            other = IntPoly((other,))
        if not isinstance(other, IntPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] += v
        return IntPoly(out)

    __radd__ = __add__

    def __sub__(self, other) -> "IntPoly":
        if isinstance(other, int):
            other = IntPoly((other,))
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "IntPoly":
        return (-self) + other

    def __mul__(self, other) -> "IntPoly":
        if isinstance(other, int):
            return IntPoly(a * other for a in self.coeffs)
        if not isinstance(other, IntPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, u in enumerate(a):
            if u:
                for j, v in enumerate(b):
                    out[i + j] += u * v
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "IntPoly":
        if n < 0:
            raise ValueError("negative exponent")
        result = IntPoly((1,))
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __call__(self, x):
        """Horner evaluation; works for int, Fraction, complex or interval types."""
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    # -- structural operations --------------------------------------------

    def derivative(self) -> "IntPoly":
        return IntPoly(i * a for i, a in enumerate(self.coeffs) if i > 0)

    def compose(self, g: "IntPoly") -> "IntPoly":
        acc = IntPoly()
        for a in reversed(self.coeffs):
            acc = acc * g + a
        return acc

    def reversal(self) -> "IntPoly":
        """``x^d f(1/x)`` with a positive leading coefficient."""
        r = IntPoly(reversed(self.coeffs))
        return -r if r.lc < 0 else r

    def taylor_shift(self, r: int) -> "IntPoly":
        """Exact ``f(x + r)`` for an integer ``r``."""
        c = list(self.coeffs)
        n = len(c)
        for i in range(n - 1):
            for j in range(n - 2, i - 1, -1):
                c[j] += r * c[j + 1]
        return IntPoly(c)

    def content(self) -> int:
        g = 0
        for a in self.coeffs:
            g = gcd(g, a)
            if g == 1:
                break
        return g


# ---------------------------------------------------------------------------
# named operations


def add(f: IntPoly, g: IntPoly) -> IntPoly:
    return f + g


def subtract(f: IntPoly, g: IntPoly) -> IntPoly:
    return f - g


def multiply(f: IntPoly, g: IntPoly) -> IntPoly:
    return f * g


def compose(f: IntPoly, g: IntPoly) -> IntPoly:
    return f.compose(g)


def derivative(f: IntPoly) -> IntPoly:
    return f.derivative()


def reversal(f: IntPoly) -> IntPoly:
    return f.reversal()


def shift(f: IntPoly, r) -> IntPoly:
    """Primitive integer polynomial proportional to ``f(x + r)``, ``r`` rational."""
    r = Fraction(r)
    u, v = r.numerator, r.denominator
    d = f.degree
    if d < 0:
        return IntPoly()
    # v^d f(x + u/v) = sum a_i (v x + u)^i v^(d-i)
    lin = IntPoly((u, v))
    acc = IntPoly()
    vp = 1
    for i in range(d, -1, -1):
        acc = acc + (lin ** i) * (f.coeffs[i] * vp)
        vp *= v
    return primitive_part(acc)


def content_primitive(f: IntPoly) -> tuple[int, IntPoly]:
    """Split ``f`` as ``content * primitive`` with a positive leading coefficient.

    >>> content_primitive(IntPoly([-4, 0, 6]))
    (2, IntPoly([-2, 0, 3]))
    """
    if f.is_zero():
        raise ValueError("content of the zero polynomial")
    c = f.content()
    if f.lc < 0:
        return c, IntPoly(-a // c for a in f.coeffs)
    return c, IntPoly(a // c for a in f.coeffs)


def primitive_part(f: IntPoly) -> IntPoly:
    if f.is_zero():
        return f
    return content_primitive(f)[1]


def naive_height(f: IntPoly) -> int:
    if f.is_zero():
        raise ValueError("naive height of the zero polynomial")
    return max(abs(a) for a in f.coeffs)


def norm2_squared(f: IntPoly) -> int:
    return sum(a * a for a in f.coeffs)


# ---------------------------------------------------------------------------
# division


def pseudo_divmod(f: IntPoly, g: IntPoly) -> tuple[IntPoly, IntPoly]:
    """``lc(g)^(deg f - deg g + 1) f = q g + r`` with ``deg r < deg g``."""
    if g.is_zero():
        raise ZeroDivisionError("pseudo-division by zero polynomial")
    n, m = f.degree, g.degree
    if n < m:
        return IntPoly(), f
    lcg = g.lc
    gc = g.coeffs
    r = list(f.coeffs)
    q = [0] * (n - m + 1)
    for k in range(n - m, -1, -1):
        top = r[m + k]
        q = [a * lcg for a in q]
        q[k] += top
        r = [a * lcg for a in r]
        if top:
            for j in range(m + 1):
                r[j + k] -= top * gc[j]
    return IntPoly(q), IntPoly(r[:m])


def pseudo_rem(f: IntPoly, g: IntPoly) -> IntPoly:
    return pseudo_divmod(f, g)[1]


def exact_divide(f: IntPoly, g: IntPoly) -> IntPoly:
    """Quotient ``f / g`` in ``Z[x]``; raises ``ValueError`` if not exact."""
    if g.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    n, m = f.degree, g.degree
    if f.is_zero():
        return f
    if n < m:
        raise ValueError("inexact polynomial division")
    lcg = g.lc
    gc = g.coeffs
    r = list(f.coeffs)
    q = [0] * (n - m + 1)
    for k in range(n - m, -1, -1):
        top = r[m + k]
        if top:
            c, rem = divmod(top, lcg)
            if rem:
                raise ValueError("inexact polynomial division")
            q[k] = c
            for j in range(m + 1):
                r[j + k] -= c * gc[j]
    if any(r[:m]):
        raise ValueError("inexact polynomial division")
    return IntPoly(q)


def divides(g: IntPoly, f: IntPoly) -> bool:
    try:
        exact_divide(f, g)
    except ValueError:
        return False
    return True


# ---------------------------------------------------------------------------
# gcd, squarefree part


def gcd_q(f: IntPoly, g: IntPoly) -> IntPoly:
    """Primitive generator (positive leading coefficient) of ``(f, g)`` in ``Q[x]``."""
    if f.is_zero() and g.is_zero():
        raise ValueError("gcd of two zero polynomials")
    if f.is_zero():
        return primitive_part(g)
    if g.is_zero():
        return primitive_part(f)
    a, b = primitive_part(f), primitive_part(g)
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        if b.degree == 0:
            return IntPoly((1,))
        r = pseudo_rem(a, b)
        a, b = b, primitive_part(r)
    return primitive_part(a)


def squarefree_part(f: IntPoly) -> IntPoly:
    """Primitive polynomial with the distinct roots of ``f``, each simple."""
    if f.is_zero():
        raise ValueError("squarefree part of the zero polynomial")
    p = primitive_part(f)
    if p.degree <= 0:
        return IntPoly((1,))
    g = gcd_q(p, p.derivative())
    return primitive_part(exact_divide(p, g))


# ---------------------------------------------------------------------------
# resultants


def resultant(f: IntPoly, g: IntPoly) -> int:
    """Resultant ``Res_x(f, g)`` by the subresultant algorithm."""
    if f.is_zero() or g.is_zero():
        return 0
    A, B = f, g
    a, b = A.content(), B.content()
    if A.lc < 0:
        a = -a
    if B.lc < 0:
        b = -b
    A = IntPoly(c // a for c in A.coeffs)
    B = IntPoly(c // b for c in B.coeffs)
    t = a ** B.degree * b ** A.degree
    s = 1
    if A.degree < B.degree:
        A, B = B, A
        if A.degree % 2 and B.degree % 2:
            s = -1
    if B.degree == 0:
        return s * t * B.lc ** A.degree
    g_, h = 1, 1
    while True:
        delta = A.degree - B.degree
        if A.degree % 2 and B.degree % 2:
            s = -s
        R = pseudo_rem(A, B)
        if R.is_zero():
            return 0
        A = B
        div = g_ * h ** delta
        B = IntPoly(c // div for c in R.coeffs)
        g_ = A.lc
        if delta >= 1:
            h = g_ ** delta // h ** (delta - 1)
        if B.degree == 0:
            dA = A.degree
            return s * t * (B.lc ** dA // h ** (dA - 1))


def bareiss_det(mat: Sequence[Sequence[int]]) -> int:
    """Fraction-free determinant of a square integer matrix."""
    n = len(mat)
    if n == 0:
        return 1
    M = [list(row) for row in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * pk - M[i][k] * M[k][j]) // prev
        prev = pk
    return sign * M[n - 1][n - 1]


def sylvester_matrix(f: IntPoly, g: IntPoly, m: int | None = None, n: int | None = None) -> list[list[int]]:
    m = f.degree if m is None else m
    n = g.degree if n is None else n
    if m < f.degree or n < g.degree:
        raise ValueError("declared degree below actual degree")
    fd = [f[i] for i in range(m, -1, -1)]
    gd = [g[i] for i in range(n, -1, -1)]
    size = m + n
    rows = []
    for i in range(n):
        rows.append([0] * i + fd + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gd + [0] * (size - n - 1 - i))
    return rows


def sylvester_resultant(f: IntPoly, g: IntPoly, m: int | None = None, n: int | None = None) -> int:
    """Determinant of the Sylvester matrix for declared degrees ``m``, ``n``.

    With declared degrees equal to the actual ones this is the usual
    resultant; larger declared degrees give the homogeneous resultant used
    for rational maps.
    """
    return bareiss_det(sylvester_matrix(f, g, m, n))


def discriminant(f: IntPoly) -> int:
    d = f.degree
    if d < 1:
        raise ValueError("discriminant needs degree >= 1")
    if d == 1:
        return 1
    r = resultant(f, f.derivative())
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    q, rem = divmod(sign * r, f.lc)
    assert rem == 0
    return q


def interpolate_integer(xs: Sequence[int], ys: Sequence[int]) -> IntPoly:
    """Newton interpolation through integer nodes; result must have integer coefficients."""
    n = len(xs)
    coef = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    # expand Newton form
    poly = [Fraction(0)]
    for i in range(n - 1, -1, -1):
        # poly = poly * (x - xs[i]) + coef[i]
        new = [Fraction(0)] * (len(poly) + 1)
        for k, a in enumerate(poly):
            new[k + 1] += a
            new[k] -= a * xs[i]
        new[0] += coef[i]
        poly = new
    out = []
    for a in poly:
        if a.denominator != 1:
            raise ValueError("interpolant is not integral")
        out.append(a.numerator)
    return IntPoly(out)


def isqrt_exact(n: int) -> int | None:
    """Integer square root if ``n`` is a perfect square, else ``None``."""
    if n < 0:
        return None
    r = isqrt(n)
    return r if r * r == n else None
