"""Command-line front end.

Tables go out as CSV whose first line is ``# config: {...}`` (the full run
configuration), single values as plain text or JSON.  Exit status is 0 on
success, 1 on bad input and 2 when certified numerics hit the precision cap;
failures also print a one-line JSON object on stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import warnings
from fractions import Fraction

from . import __version__
from .algnum import INF, AlgebraicNumber, PlaceSet, log_height, roots_of, weil_height
from .dynamics import (
    DEFAULT_MAX_ITER,
    canonical_height,
    distinct_pole_count,
    iterate,
    orbit,
    orbit_integral_census,
)
from .enumeration import as_bound, count_points, enum_minpolys, exponent_fit
from .errors import IterationBudgetError, PrecisionCapError, precision_cap
from .parsing import parse_map, parse_poly
from .sieve import SieveContext, count_G_k, density_experiment, euler_product


def _fmt(x: float) -> str:
    return f"{x:.10f}"


def _point_text(P) -> str:
    return "inf" if P is INF else P.minpoly.to_str("x")


def _point_approx(P) -> str:
    if P is INF:
        return "inf"
    z = P.approx()
    if P.minpoly.degree == 1 or z.imag == 0:
        return f"{z.real:.10g}"
    return f"{z.real:.10g}{z.imag:+.10g}j"


def _grid(text: str) -> list[Fraction]:
    try:
        return [as_bound(t.strip()) for t in text.split(",") if t.strip()]
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"bad grid {text!r}") from None


def _bound_text(B: Fraction) -> str:
    return str(B.numerator) if B.denominator == 1 else str(B)


def _read_point(args):
    if args.point_minpoly is not None:
        f = parse_poly(args.point_minpoly)
        if f.degree < 1:
            raise ValueError("point minimal polynomial must have degree >= 1")
        if args.approx is not None:
            parts = [float(t) for t in args.approx.split(",")]
            z = complex(parts[0], parts[1] if len(parts) > 1 else 0.0)
            return AlgebraicNumber.nearest_root(f, z)
        if f.lc < 0:
            f = -f
        roots = roots_of(f)
        if args.root_index is None:
            return roots[-1]
        if not 0 <= args.root_index < len(roots):
            raise ValueError(f"root index {args.root_index} out of range")
        return roots[args.root_index]
    if args.point is None:
        raise ValueError("give --point or --point-minpoly")
    text = args.point.strip().lower()
    if text in ("inf", "infinity", "oo"):
        return INF
    try:
        return AlgebraicNumber.from_rational(Fraction(text))
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"bad rational point {args.point!r}") from None


class _Output:
    """Collects one run's output and writes it to stdout or ``--output``."""

    def __init__(self, args, config: dict):
        self.args = args
        self.config = config
        self.buf = io.StringIO()

    def header(self):
        self.buf.write("# config: " + json.dumps(self.config, sort_keys=True) + "\n")

    def table(self, columns, rows, summary=None):
        if self.args.format == "json":
            doc = {"config": self.config, "columns": list(columns), "rows": [list(r) for r in rows]}
            if summary is not None:
                doc["summary"] = summary
            self.buf.write(json.dumps(doc, sort_keys=True) + "\n")
            return
        self.header()
        w = csv.writer(self.buf, lineterminator="\n")
        w.writerow(columns)
        w.writerows(rows)
        if summary is not None:
            self.buf.write("# summary: " + json.dumps(summary, sort_keys=True) + "\n")

    def value(self, key: str, value, extra=None):
        if self.args.format == "json":
            doc = {"config": self.config, key: value}
            doc.update(extra or {})
            self.buf.write(json.dumps(doc, sort_keys=True) + "\n")
            return
        if self.args.output:
            self.header()
        self.buf.write(f"{value}\n")

    def flush(self):
        text = self.buf.getvalue()
        if self.args.output:
            with open(self.args.output, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)


def _config(args) -> dict:
    # thread count changes nothing in the results, so it stays out of the header
    skip = {"func", "output", "threads"}
    cfg = {k: v for k, v in sorted(vars(args).items()) if k not in skip}
    cfg["precision_cap"] = precision_cap()
    cfg["version"] = __version__
    return cfg


# ---------------------------------------------------------------------------
# commands


def cmd_height(args, out):
    P = _read_point(args)
    out.value("height", _fmt(weil_height(P)), {"log_height": _fmt(log_height(P))})


def cmd_canheight(args, out):
    f = parse_map(args.map, 2)
    P = _read_point(args)
    out.value("canonical_height", _fmt(canonical_height(f, P, args.tol)))


def cmd_orbit(args, out):
    f = parse_map(args.map, 2)
    P = _read_point(args)
    S = PlaceSet.parse(args.S)
    rep = orbit(f, P, args.max_iter, S)
    hits = set(rep.integral_hits)
    rows = [
        (n, _point_text(Q), _point_approx(Q), _fmt(weil_height(Q)), int(n in hits))
        for n, Q in enumerate(rep.points)
    ]
    summary = {
        "status": rep.status,
        "tail": rep.tail,
        "cycle": rep.cycle,
        "integral_count": len(hits),
        "wandering_certified": rep.wandering,
    }
    out.table(["n", "point_minpoly", "point_approx", "height", "integral"], rows, summary)


def cmd_census(args, out):
    f = parse_map(args.map, 2)
    S = PlaceSet.parse(args.S)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        res = orbit_integral_census(f, args.degree, as_bound(args.bound), S, args.max_iter, args.threads, args.hhat_tol)
    for w in caught:
        print(json.dumps({"warning": str(w.message)}), file=sys.stderr)
    columns = ["point_minpoly", "point_approx", "degree", "height", "orbit_len", "status", "integral_count"]
    if args.hhat_tol is not None:
        columns.append("canonical_height")
    rows = []
    for r in res.rows:
        row = [_point_text(r.point), _point_approx(r.point), r.degree, _fmt(r.height), r.orbit_len, r.status, r.integral_count]
        if args.hhat_tol is not None:
            row.append(_fmt(r.hhat))
        rows.append(row)
    summary = {
        "total_points": res.total_points,
        "max": res.maximum,
        "average": _fmt(res.average),
        "phi2_polynomial_warning": res.warning is not None,
    }
    if args.hhat_tol is not None:
        summary["empirical_min_positive_canonical_height"] = (
            None if res.min_positive_hhat is None else _fmt(res.min_positive_hhat)
        )
    out.table(columns, rows, summary)


def cmd_enum(args, out):
    B = as_bound(args.bound)
    S = PlaceSet.parse(args.s_integral) if args.s_integral is not None else None
    rows = []
    for e in range(1, args.degree + 1):
        for f in enum_minpolys(e, B):
            if S is not None and S.strip(f.lc) != 1:
                continue
            rows.append((f.to_str("x"), e, _fmt(weil_height(AlgebraicNumber(f, 0)))))
    out.table(["minpoly", "degree", "height"], rows, {"count": len(rows)})


def cmd_count(args, out):
    grid = _grid(args.grid)
    places = [PlaceSet.parse(s) for s in args.S] if args.S else []
    records = [count_points(args.degree, B, places) for B in grid]
    columns = ["B", "total"] + [f"S={s}" for s in map(str, places)]
    rows = [[_bound_text(r.B), r.total] + [r.s_integral[str(s)] for s in places] for r in records]
    summary = {}
    if len(grid) >= 3:
        summary["slope_total"] = f"{exponent_fit(records):.6f}"
        for s in places:
            if all(r.s_integral[str(s)] > 0 for r in records):
                summary[f"slope_S={s}"] = f"{exponent_fit(records, s):.6f}"
    out.table(columns, rows, summary)


def cmd_poles(args, out):
    f = parse_map(args.map, 1)
    rows = []
    for n in range(1, args.n + 1):
        g = iterate(f, n)
        rows.append((n, g.degree, distinct_pole_count(g)))
    out.table(["n", "degree", "poles"], rows)


def _sieve_context(args, k):
    g = parse_poly(args.beta)
    if g.lc < 0:
        g = -g
    return SieveContext.build(g, k, PlaceSet.parse(args.T))


def cmd_sieve(args, out):
    ctx = _sieve_context(args, args.k)
    B = int(args.bound)
    if B < 1:
        raise ValueError("bound must be a positive integer")
    total = B * (2 * B + 1) ** args.degree
    rows = []
    for k in range(args.k + 1):
        p, r = ctx.primes[k - 1] if k else ("", "")
        G = count_G_k(ctx, args.degree, B, k)
        ep = euler_product(ctx, k)
        rows.append((k, p, r, G, f"{G / total:.10f}", f"{float(ep):.10f}"))
    out.table(["k", "p", "r_p", "G_k", "G_k_fraction", "euler_product"], rows, {"total": total})


def cmd_density(args, out):
    ctx = _sieve_context(args, args.k)
    res = density_experiment(ctx, args.degree, _grid(args.grid), PlaceSet.parse(args.S))
    rows = [(_bound_text(r.B), r.total, r.hits, f"{r.ratio:.10e}") for r in res.rows]
    out.table(["B", "total", "hits", "ratio"], rows)


# ---------------------------------------------------------------------------
# argument parsing


def _add_point(p):
    p.add_argument("--point", help="rational point such as 3/2, or inf")
    p.add_argument("--point-minpoly", help="minimal polynomial of an algebraic point, e.g. 'x^2-2'")
    p.add_argument("--root-index", type=int, help="which root (sorted by real part, then imaginary part)")
    p.add_argument("--approx", help="pick the root nearest to RE[,IM]")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="orbitint", description="Integral points in orbits and bounded-height counts.")
    parser.add_argument("--version", action="version", version=f"orbitint {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--output", "-o", help="write to this file instead of stdout")
        p.add_argument("--format", "--out", dest="format", choices=("text", "json", "csv"), default="text",
                       help="text and csv are the same for tables")
        p.add_argument("--seed", type=int, default=0, help="recorded in the config header")
        p.set_defaults(func=func)
        return p

    p = command("height", cmd_height, "absolute Weil height of a point")
    _add_point(p)

    p = command("canheight", cmd_canheight, "canonical height of a point under a map")
    p.add_argument("--map", required=True, help="rational map such as '(z^2-1)/z'")
    _add_point(p)
    p.add_argument("--tol", type=float, default=1e-6, help="absolute error bound")

    p = command("orbit", cmd_orbit, "forward orbit with integrality marks")
    p.add_argument("--map", required=True, help="rational map such as '(z^2-1)/z'")
    _add_point(p)
    p.add_argument("--max-iter", type=int, default=10, help="orbit length")
    p.add_argument("--S", default="inf", help="place set such as 'inf,2'")

    p = command("census", cmd_census, "S-integral orbit points over all points of bounded degree and height")
    p.add_argument("--map", required=True, help="rational map such as '(z^2-1)/z'")
    p.add_argument("--degree", type=int, required=True, help="degree of the points")
    p.add_argument("--bound", required=True, help="height bound, an integer or fraction")
    p.add_argument("--S", default="inf", help="place set such as 'inf,2'")
    p.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITER, help="orbit length")
    p.add_argument("--threads", type=int, default=1, help="worker processes; output does not depend on it")
    p.add_argument("--hhat-tol", type=float, default=None, help="also compute canonical heights at this tolerance")

    p = command("enum", cmd_enum, "minimal polynomials of points of bounded degree and height")
    p.add_argument("--degree", type=int, required=True, help="degree of the points")
    p.add_argument("--bound", required=True, help="height bound, an integer or fraction")
    p.add_argument("--s-integral", help="keep only points integral outside these primes, e.g. '2,3'")

    p = command("count", cmd_count, "exact point counts over a grid of height bounds")
    p.add_argument("--degree", type=int, required=True, help="degree of the points")
    p.add_argument("--grid", required=True, help="comma-separated height bounds")
    p.add_argument("--S", action="append", help="place set such as 'inf,2'; repeatable")

    p = command("poles", cmd_poles, "distinct poles of the iterates")
    p.add_argument("--map", required=True, help="rational map such as '(z^2-1)/z'")
    p.add_argument("--n", type=int, default=4, help="largest iterate")

    p = command("sieve", cmd_sieve, "inclusion-exclusion counts and Euler products")
    p.add_argument("--beta", "--beta-minpoly", dest="beta", default="x^2-2", help="minimal polynomial of beta")
    p.add_argument("--degree", type=int, default=1)
    p.add_argument("--bound", default="10")
    p.add_argument("--k", "--primes", dest="k", type=int, default=3, help="number of split primes")
    p.add_argument("--T", default="inf", help="places where 1/(alpha - beta) may have poles")

    p = command("density", cmd_density, "measured density of points integral against beta")
    p.add_argument("--beta", "--beta-minpoly", dest="beta", default="x^2-2", help="minimal polynomial of beta")
    p.add_argument("--degree", type=int, default=2)
    p.add_argument("--grid", required=True, help="comma-separated height bounds")
    p.add_argument("--k", "--primes", dest="k", type=int, default=5, help="split primes used for the diagnostics")
    p.add_argument("--T", default="inf", help="places where 1/(alpha - beta) may have poles")
    p.add_argument("--S", default="inf", help="place set such as 'inf,2'")
    return parser


def _validate(args):
    for name in ("degree", "max_iter", "threads", "k", "n"):
        v = getattr(args, name, None)
        if v is not None and v < (0 if name in ("max_iter", "k") else 1):
            raise ValueError(f"--{name.replace('_', '-')} out of range: {v}")
    tol = getattr(args, "tol", None)
    if tol is not None and tol <= 0:
        raise ValueError("--tol must be positive")


def _fail(code: int, exc: BaseException) -> int:
    print(json.dumps({"error": type(exc).__name__, "message": str(exc), "exit_code": code}), file=sys.stderr)
    return code


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors; bad input is 1 here
        return 0 if exc.code in (0, None) else 1
    try:
        _validate(args)
        out = _Output(args, _config(args))
        args.func(args, out)
        out.flush()
    except PrecisionCapError as exc:
        return _fail(2, exc)
    except (ValueError, ZeroDivisionError, IterationBudgetError, OSError) as exc:
        return _fail(1, exc)
    return 0


if __name__ == "__main__":
    sys.exit(main())
