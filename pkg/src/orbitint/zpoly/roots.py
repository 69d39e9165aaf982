"""Certified isolation of complex roots and rectangular complex interval arithmetic.

Root approximations come from mpmath's Durand-Kerner solver.  They are then
certified a posteriori: with Weierstrass corrections ``w_i`` the disks
``|z - z_i| <= n |w_i|`` cover all roots, and when they are pairwise disjoint
each holds exactly one.  The certificate is checked in exact integer
arithmetic on dyadic centers, so boxes carry exact rational endpoints.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import floor, ceil, isqrt

import mpmath

from ..errors import PrecisionCapError, precision_cap
from .poly import IntPoly

ZERO = Fraction(0)


def _imul(alo, ahi, blo, bhi):
    p = (alo * blo, alo * bhi, ahi * blo, ahi * bhi)
    return min(p), max(p)


def _isq(lo, hi):
    if lo >= 0:
        return lo * lo, hi * hi
    if hi <= 0:
        return hi * hi, lo * lo
    return ZERO, max(lo * lo, hi * hi)


def _round_down(x: Fraction, bits: int) -> Fraction:
    if x.denominator <= (1 << bits):
        return x
    return Fraction(floor(x * (1 << bits)), 1 << bits)


def _round_up(x: Fraction, bits: int) -> Fraction:
    if x.denominator <= (1 << bits):
        return x
    return Fraction(ceil(x * (1 << bits)), 1 << bits)


def sqrt_bounds(x: Fraction, bits: int = 64) -> tuple[Fraction, Fraction]:
    """Rational lower and upper bounds for ``sqrt(x)`` with ``2^-bits`` resolution."""
    if x <= 0:
        return ZERO, ZERO
    scale = 1 << (2 * bits)
    lo = isqrt(x.numerator * scale // x.denominator)
    lo_f = Fraction(lo, 1 << bits)
    hi_f = Fraction(lo + 1, 1 << bits)
    return lo_f, hi_f


@dataclass(frozen=True)
class ComplexBox:
    """Axis-parallel rectangle in C with exact rational corners."""

    re_lo: Fraction
    re_hi: Fraction
    im_lo: Fraction
    im_hi: Fraction

    def __post_init__(self):
        if self.re_lo > self.re_hi or self.im_lo > self.im_hi:
            raise ValueError("empty box")

    @classmethod
    def point(cls, re, im=0) -> "ComplexBox":
        re, im = Fraction(re), Fraction(im)
        return cls(re, re, im, im)

    @property
    def width(self) -> Fraction:
        return max(self.re_hi - self.re_lo, self.im_hi - self.im_lo)

    @property
    def center(self) -> tuple[Fraction, Fraction]:
        return (self.re_lo + self.re_hi) / 2, (self.im_lo + self.im_hi) / 2

    def approx(self) -> complex:
        c = self.center
        return complex(float(c[0]), float(c[1]))

    def is_real(self) -> bool:
        return self.im_lo == 0 and self.im_hi == 0

    def contains(self, re, im=0) -> bool:
        return self.re_lo <= re <= self.re_hi and self.im_lo <= im <= self.im_hi

    def contains_zero(self) -> bool:
        return self.contains(ZERO, ZERO)

    def intersects(self, other: "ComplexBox") -> bool:
        return not (
            self.re_hi < other.re_lo
            or other.re_hi < self.re_lo
            or self.im_hi < other.im_lo
            or other.im_hi < self.im_lo
        )

    def inside(self, other: "ComplexBox") -> bool:
        return (
            other.re_lo <= self.re_lo
            and self.re_hi <= other.re_hi
            and other.im_lo <= self.im_lo
            and self.im_hi <= other.im_hi
        )

    # -- interval arithmetic ------------------------------------------------

    def rounded(self, bits: int) -> "ComplexBox":
        return ComplexBox(
            _round_down(self.re_lo, bits),
            _round_up(self.re_hi, bits),
            _round_down(self.im_lo, bits),
            _round_up(self.im_hi, bits),
        )

    def __add__(self, other) -> "ComplexBox":
        other = _as_box(other)
        return ComplexBox(
            self.re_lo + other.re_lo,
            self.re_hi + other.re_hi,
            self.im_lo + other.im_lo,
            self.im_hi + other.im_hi,
        )

    __radd__ = __add__

    def __neg__(self) -> "ComplexBox":
        return ComplexBox(-self.re_hi, -self.re_lo, -self.im_hi, -self.im_lo)

    def __sub__(self, other) -> "ComplexBox":
        return self + (-_as_box(other))

    def __rsub__(self, other) -> "ComplexBox":
        return _as_box(other) + (-self)

    def __mul__(self, other) -> "ComplexBox":
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if c >= 0:
                return ComplexBox(self.re_lo * c, self.re_hi * c, self.im_lo * c, self.im_hi * c)
            return ComplexBox(self.re_hi * c, self.re_lo * c, self.im_hi * c, self.im_lo * c)
        o = _as_box(other)
        ac = _imul(self.re_lo, self.re_hi, o.re_lo, o.re_hi)
        bd = _imul(self.im_lo, self.im_hi, o.im_lo, o.im_hi)
        ad = _imul(self.re_lo, self.re_hi, o.im_lo, o.im_hi)
        bc = _imul(self.im_lo, self.im_hi, o.re_lo, o.re_hi)
        return ComplexBox(ac[0] - bd[1], ac[1] - bd[0], ad[0] + bc[0], ad[1] + bc[1])

    __rmul__ = __mul__

    def modulus_sq_bounds(self) -> tuple[Fraction, Fraction]:
        a = _isq(self.re_lo, self.re_hi)
        b = _isq(self.im_lo, self.im_hi)
        return a[0] + b[0], a[1] + b[1]

    def reciprocal(self) -> "ComplexBox":
        lo, hi = self.modulus_sq_bounds()
        if lo <= 0:
            raise ZeroDivisionError("box may contain zero")
        conj = ComplexBox(self.re_lo, self.re_hi, -self.im_hi, -self.im_lo)
        s_lo, s_hi = 1 / hi, 1 / lo
        re = _imul(conj.re_lo, conj.re_hi, s_lo, s_hi)
        im = _imul(conj.im_lo, conj.im_hi, s_lo, s_hi)
        return ComplexBox(re[0], re[1], im[0], im[1])

    def __truediv__(self, other) -> "ComplexBox":
        return self * _as_box(other).reciprocal()


def _as_box(x) -> ComplexBox:
    if isinstance(x, ComplexBox):
        return x
    if isinstance(x, (int, Fraction)):
        return ComplexBox.point(x)
    raise TypeError(f"cannot use {type(x).__name__} as a complex box")


def eval_box(f: IntPoly, box: ComplexBox, bits: int | None = None) -> ComplexBox:
    """Interval enclosure of ``f`` over ``box`` (Horner form)."""
    acc = ComplexBox.point(0)
    for a in reversed(f.coeffs):
        acc = acc * box + a
        if bits is not None:
            acc = acc.rounded(bits)
    return acc


# ---------------------------------------------------------------------------
# isolation


def _approximate(f: IntPoly, bits: int):
    coeffs = list(reversed(f.coeffs))
    with mpmath.workprec(bits):
        try:
            roots = mpmath.polyroots(coeffs, maxsteps=200 + 4 * f.degree, extraprec=bits, error=False)
        except mpmath.libmp.libhyper.NoConvergence:
            return None
    return roots


def _to_fixed(x, k: int) -> int:
    return int(mpmath.nint(mpmath.ldexp(x, k)))


def _certify(f: IntPoly, roots, bits: int):
    """Return ``(k, [(X, Y, R)])`` certified disks in units ``2^-k`` or ``None``."""
    d = f.degree
    k = bits - 4
    snap = mpmath.ldexp(1, -(bits // 2))
    centers = []
    with mpmath.workprec(bits + 16):
        for z in roots:
            z = mpmath.mpc(z)
            X = _to_fixed(z.real, k)
            scale = max(mpmath.mpf(1), abs(z))
            Y = 0 if abs(z.imag) <= snap * scale else _to_fixed(z.imag, k)
            centers.append([X, Y])
    pos = [c for c in centers if c[1] > 0]
    neg = [c for c in centers if c[1] < 0]
    if len(pos) != len(neg):
        return None
    unused = list(neg)
    for c in pos:
        best = min(unused, key=lambda n: (n[0] - c[0]) ** 2 + (n[1] + c[1]) ** 2)
        unused.remove(best)
        best[0], best[1] = c[0], -c[1]

    ad = f.lc
    out = []
    for i, (X, Y) in enumerate(centers):
        # N = 2^(kd) f(z) via scaled Horner
        nr, ni = ad, 0
        for j in range(d - 1, -1, -1):
            nr, ni = nr * X - ni * Y + f[j] * (1 << (k * (d - j))), nr * Y + ni * X
        pr, pi = 1, 0
        for j, (U, V) in enumerate(centers):
            if j == i:
                continue
            dr, di = X - U, Y - V
            pr, pi = pr * dr - pi * di, pr * di + pi * dr
        den = ad * ad * (pr * pr + pi * pi)
        if den == 0:
            return None
        R = isqrt(d * d * (nr * nr + ni * ni) // den) + 1
        out.append((X, Y, R))
    for i in range(d):
        Xi, Yi, Ri = out[i]
        for j in range(i + 1, d):
            Xj, Yj, Rj = out[j]
            if (Xi - Xj) ** 2 + (Yi - Yj) ** 2 <= (Ri + Rj) ** 2:
                return None
    return k, out


def _boxes_from(k: int, disks) -> list[ComplexBox]:
    den = 1 << k
    boxes = []
    for X, Y, R in disks:
        re_lo, re_hi = Fraction(X - R, den), Fraction(X + R, den)
        if Y == 0:
            boxes.append(ComplexBox(re_lo, re_hi, ZERO, ZERO))
        else:
            boxes.append(ComplexBox(re_lo, re_hi, Fraction(Y - R, den), Fraction(Y + R, den)))
    return boxes


def _box_order(b: ComplexBox):
    return b.center


def complex_roots(f: IntPoly, eps=Fraction(1, 1 << 30)) -> list[ComplexBox]:
    """Certified isolating boxes for the roots of a squarefree ``f``.

    Returns ``deg f`` pairwise-disjoint boxes of width at most ``eps``, sorted
    by real part then imaginary part of their centers.  Real roots get boxes
    with zero imaginary width.
    """
    d = f.degree
    if d < 1:
        raise ValueError("complex_roots needs degree >= 1")
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    if d == 1:
        return [ComplexBox.point(Fraction(-f[0], f[1]))]
    if d == 2:
        return _quadratic_roots(f, eps)
    cap = precision_cap()
    size = max(abs(a) for a in f.coeffs).bit_length()
    need = max(0, -floor(_log2(eps))) + 16
    bits = max(64, need + size + 8)
    limit = 8 * cap + 4 * size + need
    while bits <= limit:
        roots = _approximate(f, bits)
        if roots is not None:
            cert = _certify(f, roots, bits)
            if cert is not None:
                k, disks = cert
                if all(Fraction(2 * R, 1 << k) <= eps for _, _, R in disks):
                    return sorted(_boxes_from(k, disks), key=_box_order)
        bits *= 2
    raise PrecisionCapError(f"could not isolate roots of {f} within the precision cap")


def _quadratic_roots(f: IntPoly, eps: Fraction) -> list[ComplexBox]:
    # closed form with an integer square root enclosure of sqrt|disc|
    c, b, a = f.coeffs
    disc = b * b - 4 * a * c
    if disc == 0:
        raise ValueError("complex_roots needs a squarefree polynomial")
    k = max(0, -floor(_log2(eps))) + 2
    while Fraction(1, (1 << k) * 2 * abs(a)) > eps:
        k += 1
    s = isqrt(abs(disc) << (2 * k))
    exact = s * s == abs(disc) << (2 * k)
    den = 1 << k
    lo = Fraction(s, den)
    hi = lo if exact else Fraction(s + 1, den)
    two_a = 2 * a
    mid = Fraction(-b, two_a)
    if disc > 0:
        r1 = (mid - hi / two_a, mid - lo / two_a)
        r2 = (mid + lo / two_a, mid + hi / two_a)
        boxes = [ComplexBox(min(r1), max(r1), ZERO, ZERO), ComplexBox(min(r2), max(r2), ZERO, ZERO)]
    else:
        i_lo, i_hi = sorted((lo / two_a, hi / two_a))
        boxes = [ComplexBox(mid, mid, -i_hi, -i_lo), ComplexBox(mid, mid, i_lo, i_hi)]
    return sorted(boxes, key=_box_order)


def _log2(x: Fraction) -> float:
    return x.numerator.bit_length() - x.denominator.bit_length()


class RootSet:
    """Canonically indexed isolating boxes for all roots of one squarefree polynomial.

    Index ``i`` always designates the same root; refinement to a smaller width
    re-isolates and matches new boxes to old ones by containment.
    """

    def __init__(self, f: IntPoly, eps=Fraction(1, 1 << 24)):
        self.poly = f
        self._lock = threading.Lock()
        self._boxes = complex_roots(f, eps)
        self._eps = Fraction(eps)

    def __len__(self) -> int:
        return len(self._boxes)

    @property
    def boxes(self) -> list[ComplexBox]:
        return list(self._boxes)

    def box(self, i: int, eps=None) -> ComplexBox:
        if eps is not None and Fraction(eps) < self._eps:
            self.refine(eps)
        return self._boxes[i]

    def refine(self, eps) -> None:
        eps = Fraction(eps)
        with self._lock:
            if eps >= self._eps:
                return
            target = eps
            while True:
                new = complex_roots(self.poly, target)
                mapping = {}
                ok = True
                for b in new:
                    hits = [i for i, old in enumerate(self._boxes) if old.intersects(b)]
                    if len(hits) != 1 or hits[0] in mapping:
                        ok = False
                        break
                    mapping[hits[0]] = b
                if ok and len(mapping) == len(self._boxes):
                    self._boxes = [mapping[i] for i in range(len(self._boxes))]
                    self._eps = eps
                    return
                target /= 1 << 16
