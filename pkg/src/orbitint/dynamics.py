"""Rational maps over Q acting on P^1(Qbar): iteration, poles, orbits, heights.

A map ``phi = p/q`` is also handled through its homogenization
``[F(X, Y) : G(X, Y)]`` of degree ``r = max(deg p, deg q)``.  Rational
points are iterated on reduced integer pairs; the gcd of ``F(X, Y)`` and
``G(X, Y)`` divides the homogeneous resultant, so reduction stays cheap
even for multi-million-bit coordinates.
"""

from __future__ import annotations

import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import gmpy2

from .algnum import (
    INF,
    AlgebraicNumber,
    PlaceSet,
    ProjPoint,
    _enclosure,
    _log_int,
    is_S_integral,
    log_height,
    point_sort_key,
    select_root,
    weil_height,
)
from .enumeration import enum_points
from .errors import IterationBudgetError
from .zpoly import (
    IntPoly,
    eval_box,
    exact_divide,
    factor_z,
    gcd_q,
    interpolate_integer,
    divides,
    squarefree_part,
    sylvester_resultant,
)

DEFAULT_COEFF_BUDGET = 1 << 16
DEFAULT_BIT_BUDGET = 1 << 26
DEFAULT_MAX_ITER = 25


class RationalMap:
    """``num/den`` in lowest terms with joint content 1 and positive leading denominator coefficient."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = num if isinstance(num, IntPoly) else IntPoly(num)
        den = IntPoly((1,)) if den is None else (den if isinstance(den, IntPoly) else IntPoly(den))
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            num, den = IntPoly(), IntPoly((1,))
        else:
            g = gcd_q(num, den)
            if g.degree > 0:
                num, den = exact_divide(num, g), exact_divide(den, g)
            c = math.gcd(num.content(), den.content())
            if den.lc < 0:
                c = -c
            num = IntPoly(a // c for a in num.coeffs)
            den = IntPoly(a // c for a in den.coeffs)
        self.num = num
        self.den = den

    @classmethod
    def identity(cls) -> "RationalMap":
        return cls(IntPoly((0, 1)))

    @property
    def degree(self) -> int:
        return max(self.num.degree, self.den.degree, 0)

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMap):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def to_str(self, var: str = "z") -> str:
        n = self.num.to_str(var)
        if self.is_polynomial() and self.den.lc == 1:
            return n
        d = self.den.to_str(var)
        if sum(1 for a in self.num.coeffs if a) > 1:
            n = f"({n})"
        if sum(1 for a in self.den.coeffs if a) > 1 or (self.den.degree > 0 and self.den.lc != 1):
            d = f"({d})"
        return f"{n}/{d}"

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"RationalMap({self.to_str()!r})"

    def forms(self) -> tuple[list[int], list[int]]:
        """Coefficients of F and G indexed by the power of X (both of degree r)."""
        r = self.degree
        return [self.num[i] for i in range(r + 1)], [self.den[i] for i in range(r + 1)]

    def resultant(self) -> int:
        """Homogeneous resultant ``Res_{r,r}(F, G)``; nonzero for a reduced map."""
        r = self.degree
        return sylvester_resultant(self.num, self.den, r, r)

    def __call__(self, z):
        """Exact value at a rational number (a Fraction) or INF."""
        out = eval_point(self, z if z is INF else AlgebraicNumber.from_rational(z))
        return out if out is INF else out.as_fraction()


def _homog(coeffs, x, y):
    """``sum c_i x^i y^(r-i)`` by Horner's rule in x."""
    r = len(coeffs) - 1
    acc = coeffs[r]
    ypow = 1
    for i in range(r - 1, -1, -1):
        ypow *= y
        acc = acc * x + coeffs[i] * ypow
    return acc


# ---------------------------------------------------------------------------
# composition and poles


def _substitute(f: IntPoly, r: int, P: IntPoly, Q: IntPoly) -> IntPoly:
    """``Q^r f(P/Q)`` for a polynomial f of degree at most r."""
    acc = IntPoly()
    Ppow = [IntPoly((1,))]
    for _ in range(r):
        Ppow.append(Ppow[-1] * P)
    Qpow = IntPoly((1,))
    for i in range(r, -1, -1):
        if f[i]:
            acc = acc + Ppow[i] * Qpow * f[i]
        Qpow = Qpow * Q
    return acc


def compose(f: RationalMap, g: RationalMap) -> RationalMap:
    """``f o g``, normalized."""
    r = f.degree
    return RationalMap(_substitute(f.num, r, g.num, g.den), _substitute(f.den, r, g.num, g.den))


def iterate(f: RationalMap, n: int, budget: int = DEFAULT_COEFF_BUDGET) -> RationalMap:
    """The n-th iterate; refuses when ``r^n + 1`` coefficients would exceed ``budget``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return RationalMap.identity()
    if f.degree ** n + 1 > budget:
        raise IterationBudgetError(f"phi^{n} would need {f.degree ** n + 1} coefficients (budget {budget})")
    out = f
    for _ in range(n - 1):
        out = compose(f, out)
    return out


def second_iterate_is_polynomial(f: RationalMap) -> bool:
    return compose(f, f).is_polynomial()


def distinct_pole_count(f: RationalMap) -> int:
    """Number of distinct points of P^1 mapped to infinity."""
    finite = squarefree_part(f.den).degree if f.den.degree > 0 else 0
    return finite + (1 if f.num.degree > f.den.degree else 0)


# ---------------------------------------------------------------------------
# evaluation on points


def eval_point(f: RationalMap, P: ProjPoint) -> ProjPoint:
    """Exact image ``f(P)``.

    For algebraic P the image is a root of ``Res_x(m(x), y q(x) - p(x))``
    with m the minimal polynomial of P; the right irreducible factor is
    chosen by a certified enclosure of ``p(P)/q(P)``.
    """
    p, q = f.num, f.den
    if P is INF:
        if p.degree > q.degree:
            return INF
        if p.degree == q.degree:
            return AlgebraicNumber.from_rational(Fraction(p.lc, q.lc))
        return AlgebraicNumber.from_rational(0)
    m = P.minpoly
    if m.degree == 1:
        x, y = -m[0], m[1]
        F, G = f.forms()
        den = _homog(G, x, y)
        if den == 0:
            return INF
        return AlgebraicNumber.from_rational(Fraction(_homog(F, x, y), den))
    if q.degree >= m.degree and divides(m, q):
        return INF
    e, r = m.degree, f.degree
    ys = list(range(e + 1))
    vals = [sylvester_resultant(m, q * y - p, e, r) for y in ys]
    R = interpolate_integer(ys, vals)
    cands = [h for h, _ in factor_z(R)]

    def enclosure(eps):
        box = _enclosure(P, eps)
        bits = 2 * eps.denominator.bit_length() + 32
        return (eval_box(p, box, bits) / eval_box(q, box, bits)).rounded(bits)

    return select_root(cands, enclosure, "image point")


# ---------------------------------------------------------------------------
# height constants


def _solve_fraction(mat, rhs):
    """Solve a square nonsingular system over Q by Gauss-Jordan elimination."""
    n = len(mat)
    a = [[Fraction(v) for v in row] + [Fraction(b)] for row, b in zip(mat, rhs)]
    for col in range(n):
        piv = next(i for i in range(col, n) if a[i][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        pv = a[col][col]
        a[col] = [v / pv for v in a[col]]
        for i in range(n):
            if i != col and a[i][col] != 0:
                fac = a[i][col]
                a[i] = [u - fac * v for u, v in zip(a[i], a[col])]
    return [row[n] for row in a]


def _nullstellensatz_coeffs(f: RationalMap):
    """Forms G1, G2, H1, H2 of degree r-1 with G1 F + G2 G = Res X^(2r-1), H1 F + H2 G = Res Y^(2r-1)."""
    F, G = f.forms()
    r = f.degree
    res = f.resultant()
    n = 2 * r
    # unknowns: coefficients of X^j Y^(r-1-j) in the first form (j < r), then in the second
    mat = [[0] * n for _ in range(n)]
    for j in range(r):
        for i in range(r + 1):
            mat[i + j][j] += F[i]
            mat[i + j][r + j] += G[i]
    out = []
    for k in (2 * r - 1, 0):
        rhs = [0] * n
        rhs[k] = res
        sol = _solve_fraction(mat, rhs)
        if any(s.denominator != 1 for s in sol):
            raise ArithmeticError("non-integral Nullstellensatz certificate")
        out.append([int(s) for s in sol])
    return out


@dataclass(frozen=True)
class HeightConstants:
    upper: float  # h(phi(Q)) <= r h(Q) + upper
    lower: float  # h(phi(Q)) >= r h(Q) - lower

    @property
    def C(self) -> float:
        return max(self.upper, self.lower)


def height_constants(f: RationalMap) -> HeightConstants:
    """Explicit constants for ``|h(phi(Q)) - r h(Q)| <= C`` from coefficients and the resultant."""
    r = f.degree
    if r < 1:
        raise ValueError("map must be nonconstant")
    F, G = f.forms()
    hmax = max(abs(c) for c in F + G)
    gmax = max(abs(c) for sol in _nullstellensatz_coeffs(f) for c in sol)
    # tiny outward padding absorbs floating log error
    return HeightConstants(math.log((r + 1) * hmax) + 1e-12, math.log(2 * r * gmax) + 1e-12)


# ---------------------------------------------------------------------------
# integer iteration of rational points


def _to_pair(P: ProjPoint):
    if P is INF:
        return gmpy2.mpz(1), gmpy2.mpz(0)
    if P.degree != 1:
        raise ValueError("not a rational point")
    return gmpy2.mpz(-P.minpoly[0]), gmpy2.mpz(P.minpoly[1])


def _from_pair(x, y) -> ProjPoint:
    if y == 0:
        return INF
    return AlgebraicNumber.from_rational(Fraction(int(x), int(y)))


class _PairStepper:
    """``(x, y) -> reduced (F(x, y), G(x, y))`` on integer pairs, denominator kept nonnegative."""

    def __init__(self, f: RationalMap):
        F, G = f.forms()
        self.F = [gmpy2.mpz(c) for c in F]
        self.G = [gmpy2.mpz(c) for c in G]
        self.res = gmpy2.mpz(abs(f.resultant()))

    def __call__(self, x, y):
        r = len(self.F) - 1
        xp, yp = [1, x], [1, y]
        for _ in range(r - 1):
            xp.append(xp[-1] * x)
            yp.append(yp[-1] * y)
        u = v = 0
        for i in range(r + 1):
            if self.F[i] or self.G[i]:
                mono = xp[i] * yp[r - i]
                u += self.F[i] * mono
                v += self.G[i] * mono
        g = gmpy2.gcd(gmpy2.gcd(self.res, u), v)
        if g > 1:
            u //= g
            v //= g
        if v < 0 or (v == 0 and u < 0):
            u, v = -u, -v
        return u, v


def _pair_log_height(x, y) -> float:
    m = max(abs(x), abs(y))
    return _log_int(int(m)) if m.bit_length() < 1000 else _mpz_log(m)


def _mpz_log(m) -> float:
    bl = m.bit_length()
    shift = bl - 64
    return math.log(int(m >> shift)) + shift * math.log(2)


def canonical_height(
    f: RationalMap,
    P: ProjPoint,
    tol: float = 1e-6,
    max_bits: int = DEFAULT_BIT_BUDGET,
    max_iter: int = 64,
) -> float:
    """Canonical height ``lim h(phi^n P) / r^n`` to within ``tol``.

    The error after n steps is at most ``C / (r^n (r - 1))``; iteration stops
    at the first n making that smaller than ``tol``.  Points found to be
    preperiodic on the way get exactly 0.
    """
    r = f.degree
    if r < 2:
        raise ValueError("canonical height needs a map of degree at least 2")
    if tol <= 0:
        raise ValueError("tol must be positive")
    C = height_constants(f).C
    n_needed = 0
    while C / (r ** n_needed * (r - 1)) >= tol:
        n_needed += 1
    if n_needed > max_iter:
        raise IterationBudgetError(f"{n_needed} iterations needed, more than max_iter={max_iter}")
    if P is INF or P.degree == 1:
        step = _PairStepper(f)
        x, y = _to_pair(P)
        seen = {(x, y)}
        for _ in range(n_needed):
            x, y = step(x, y)
            if max(x.bit_length(), y.bit_length()) > max_bits:
                raise IterationBudgetError("coordinate size exceeded the bit budget")
            if (x, y) in seen:
                return 0.0
            if len(seen) < 4096:
                seen.add((x, y))
        return _pair_log_height(x, y) / r ** n_needed
    Q = P
    seen = {Q}
    for _ in range(n_needed):
        Q = eval_point(f, Q)
        if Q in seen:
            return 0.0
        seen.add(Q)
        if Q is not INF and max(abs(c) for c in Q.minpoly.coeffs).bit_length() > max_bits // 64:
            raise IterationBudgetError("minimal polynomial size exceeded the budget")
    return log_height(Q) / r ** n_needed


# ---------------------------------------------------------------------------
# orbits


@dataclass
class OrbitReport:
    start: ProjPoint
    points: list
    status: str  # "preperiodic" or "truncated"
    tail: int | None = None  # index where the cycle starts
    cycle: int | None = None  # cycle length
    integral_hits: list = field(default_factory=list)
    max_iter: int = 0
    wandering: bool = False  # certified: some orbit point has h > C/(r-1)


def orbit(f: RationalMap, P: ProjPoint, max_iter: int, S: PlaceSet = PlaceSet()) -> OrbitReport:
    """Forward orbit up to ``max_iter`` steps with exact repetition detection."""
    if f.degree < 2:
        raise ValueError("orbits need a map of degree at least 2")
    points = [P]
    seen = {P: 0}
    status, tail, cycle = "truncated", None, None
    for _ in range(max_iter):
        Q = eval_point(f, points[-1])
        if Q in seen:
            status, tail, cycle = "preperiodic", seen[Q], len(points) - seen[Q]
            break
        seen[Q] = len(points)
        points.append(Q)
    hits = [i for i, Q in enumerate(points) if is_S_integral(Q, S)]
    wandering = False
    if status == "truncated":
        bound = height_constants(f).C / (f.degree - 1)
        wandering = log_height(points[-1]) > bound
    return OrbitReport(P, points, status, tail, cycle, hits, max_iter, wandering)


def escape_certified(f: RationalMap, lead: int, S: PlaceSet, res: int | None = None) -> bool:
    """True when a point whose minimal polynomial has leading coefficient ``lead`` never returns to O_S.

    Needs a prime p outside S dividing ``lead`` with good reduction
    (p does not divide the resultant) and infinity fixed modulo p.  Such a
    point is p-adically close to infinity, and so are all its iterates.
    """
    res = f.resultant() if res is None else res
    z = S.strip(lead)
    top = f.den[f.degree]
    if top:
        z = math.gcd(z, top)
    c = math.gcd(z, res)
    while c > 1:
        z //= c
        c = math.gcd(z, c)
    return z > 1


@dataclass
class CensusRow:
    point: ProjPoint
    degree: int
    height: float
    orbit_len: int
    status: str  # "preperiodic", "escaped" or "truncated"
    integral_count: int
    hhat: float | None = None


@dataclass
class CensusResult:
    rows: list
    total_points: int
    maximum: int
    average: float
    warning: str | None = None
    min_positive_hhat: float | None = None


def _census_rational(f, step, res, P, S, max_iter):
    x, y = _to_pair(P)
    seen = set()
    count = 0
    status = "truncated"
    for n in range(max_iter + 1):
        if (x, y) in seen:
            status = "preperiodic"
            break
        seen.add((x, y))
        if y != 0:
            if S.strip(int(y)) == 1:
                count += 1
            elif escape_certified(f, int(y), S, res):
                status = "escaped"
                break
        if n == max_iter:
            break
        x, y = step(x, y)
    return len(seen), status, count


def _census_algebraic(f, res, P, S, max_iter):
    Q = P
    seen = set()
    count = 0
    status = "truncated"
    for n in range(max_iter + 1):
        if Q in seen:
            status = "preperiodic"
            break
        seen.add(Q)
        if Q is not INF:
            if is_S_integral(Q, S):
                count += 1
            elif escape_certified(f, Q.lc, S, res):
                status = "escaped"
                break
        if n == max_iter:
            break
        Q = eval_point(f, Q)
    return len(seen), status, count


def _census_chunk(args):
    f, points, S, max_iter, hhat_tol = args
    res = f.resultant()
    step = _PairStepper(f)
    rows = []
    for P in points:
        if P is INF or P.degree == 1:
            length, status, count = _census_rational(f, step, res, P, S, max_iter)
        else:
            length, status, count = _census_algebraic(f, res, P, S, max_iter)
        hh = None
        if hhat_tol is not None:
            hh = 0.0 if status == "preperiodic" else canonical_height(f, P, hhat_tol)
        rows.append(CensusRow(P, P.degree, weil_height(P), length, status, count, hh))
    return rows


def orbit_integral_census(
    f: RationalMap,
    d: int,
    B,
    S: PlaceSet = PlaceSet(),
    max_iter: int = DEFAULT_MAX_ITER,
    threads: int = 1,
    hhat_tol: float | None = None,
) -> CensusResult:
    """Distinct S-integral orbit points for every P in P^1(Qbar, d, B).

    Each orbit is followed for ``max_iter`` steps, or until it repeats, or
    until an escape certificate shows no later point can be S-integral.
    With ``hhat_tol`` set, canonical heights are also computed and the least
    positive one is reported as an empirical stand-in for the minimal
    positive canonical height.
    """
    if f.degree < 2:
        raise ValueError("census needs a map of degree at least 2")
    warning = None
    if second_iterate_is_polynomial(f):
        warning = f"phi^2 is a polynomial for phi = {f}; integral orbit counts need not be bounded"
        warnings.warn(warning, RuntimeWarning, stacklevel=2)
    points = sorted(enum_points(d, B), key=point_sort_key)
    if threads <= 1 or len(points) < 2 * threads:
        rows = _census_chunk((f, points, S, max_iter, hhat_tol))
    else:
        size = -(-len(points) // (4 * threads))
        chunks = [(f, points[i:i + size], S, max_iter, hhat_tol) for i in range(0, len(points), size)]
        rows = []
        with ProcessPoolExecutor(max_workers=threads) as pool:
            for part in pool.map(_census_chunk, chunks):
                rows.extend(part)
    counts = [row.integral_count for row in rows]
    positive = [row.hhat for row in rows if row.hhat is not None and row.status != "preperiodic" and row.hhat > 0]
    return CensusResult(
        rows=rows,
        total_points=len(rows),
        maximum=max(counts),
        average=sum(counts) / len(counts),
        warning=warning,
        min_positive_hhat=min(positive) if positive else None,
    )
