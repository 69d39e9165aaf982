"""Text input for polynomials and rational maps.

Grammar (one variable, ``z`` or ``x``)::

    expr  := term (('+' | '-') term)*
    term  := unary (('*' | '/') unary | unary)*      juxtaposition multiplies
    unary := ('+' | '-') unary | power
    power := atom ('^' INT)?
    atom  := INT | VAR | '(' expr ')'

Everything is evaluated exactly as a quotient of integer polynomials, so
rational coefficients such as ``1/2`` are allowed anywhere.
"""

from __future__ import annotations

import math
import re

from .dynamics import RationalMap
from .zpoly import IntPoly, content_primitive, exact_divide, gcd_q

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z]\w*)|(\*\*|[-+*/^()]))")
VARIABLES = ("z", "x")


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.text = text
        self.pos = pos


def _tokenize(text: str):
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", text, bad)
        start = m.start(m.lastindex)
        if m.group(1):
            out.append(("num", int(m.group(1)), start))
        elif m.group(2):
            out.append(("var", m.group(2), start))
        else:
            op = "^" if m.group(3) == "**" else m.group(3)
            out.append(("op", op, start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


def _reduce(n: IntPoly, d: IntPoly):
    if d.is_zero():
        raise ZeroDivisionError("division by zero")
    if n.is_zero():
        return IntPoly(), IntPoly((1,))
    g = gcd_q(n, d)
    if g.degree > 0:
        n, d = exact_divide(n, g), exact_divide(d, g)
    c = math.gcd(n.content(), d.content())
    if d.lc < 0:
        c = -c
    return IntPoly(a // c for a in n.coeffs), IntPoly(a // c for a in d.coeffs)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.var = None

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, message, tok=None):
        tok = tok or self.peek()
        raise ParseError(message, self.text, tok[2])

    def parse(self):
        if self.peek()[0] == "end":
            self.fail("empty expression")
        value = self.expr()
        if self.peek()[0] != "end":
            self.fail(f"unexpected {self.peek()[1]!r}")
        return value

    def expr(self):
        n, d = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            sign = self.take()[1]
            n2, d2 = self.term()
            if sign == "-":
                n2 = -n2
            n, d = _reduce(n * d2 + n2 * d, d * d2)
        return n, d

    def term(self):
        n, d = self.unary()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "*/":
                tok = self.take()
                n2, d2 = self.unary()
                if val == "*":
                    n, d = _reduce(n * n2, d * d2)
                else:
                    if n2.is_zero():
                        self.fail("division by zero", tok)
                    n, d = _reduce(n * d2, d * n2)
            elif kind in ("num", "var") or (kind == "op" and val == "("):
                n2, d2 = self.unary()
                n, d = _reduce(n * n2, d * d2)
            else:
                return n, d

    def unary(self):
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            n, d = self.unary()
            return (-n, d) if val == "-" else (n, d)
        return self.power()

    def power(self):
        n, d = self.atom()
        if self.peek() == ("op", "^", self.peek()[2]):
            self.take()
            tok = self.take()
            if tok[0] != "num":
                self.fail("exponent must be a nonnegative integer", tok)
            k = tok[1]
            if k > 4096:
                self.fail("exponent too large", tok)
            n, d = n ** k, d ** k
        return n, d

    def atom(self):
        tok = self.take()
        kind, val, _ = tok
        if kind == "num":
            return IntPoly((val,)), IntPoly((1,))
        if kind == "var":
            if val not in VARIABLES:
                self.fail(f"unknown variable {val!r}", tok)
            if self.var is None:
                self.var = val
            elif val != self.var:
                self.fail("mixed variables", tok)
            return IntPoly((0, 1)), IntPoly((1,))
        if kind == "op" and val == "(":
            value = self.expr()
            if self.peek()[1] != ")":
                self.fail("expected ')'")
            self.take()
            return value
        self.fail("unexpected end of input" if kind == "end" else f"unexpected {val!r}", tok)


def parse_rational(text: str) -> tuple[IntPoly, IntPoly]:
    """Reduced (numerator, denominator) of a rational expression."""
    return _Parser(text).parse()


def parse_poly(text: str) -> IntPoly:
    """An integer polynomial; rational coefficients are cleared and the content removed."""
    n, d = parse_rational(text)
    if d.degree > 0:
        raise ParseError("expected a polynomial, got a rational function", text, 0)
    if n.is_zero():
        return n
    return content_primitive(n)[1] if d.lc != 1 else n


def parse_map(text: str, min_degree: int = 1) -> RationalMap:
    """A rational map ``p/q``; ``min_degree=2`` for commands that iterate."""
    n, d = parse_rational(text)
    f = RationalMap(n, d)
    if f.degree < min_degree:
        raise ValueError(f"map {f} has degree {f.degree}, need at least {min_degree}")
    return f
