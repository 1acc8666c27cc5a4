"""Input grammar for beta: integer polynomials, root selectors and rational
expressions in a field generator Y.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .exact import Poly
from .numfield import (
    PRECISION_CAP,
    AlgebraicNumber,
    FieldElement,
    RootIndex,
    RootNear,
    SelectionError,
    algebraic_number,
    element_minpoly,
    find_conjugates,
    select_root,
)


class ParseError(ValueError):
    def __init__(self, message: str, text: str = "", column: int = 0, line: int = 1):
        self.message = message
        self.text = text
        self.column = column
        self.line = line
        where = f"line {line}, column {column + 1}"
        super().__init__(f"{where}: {message}" + (f"\n  {text}\n  {' ' * column}^" if text else ""))


def parse_int_list(text: str, high_first: bool = False) -> tuple[int, ...]:
    """'c0,c1,...' with the constant term first (or the leading one, if asked)."""
    out = []
    pos = 0
    for part in text.split(","):
        s = part.strip()
        if not re.fullmatch(r"[+-]?\d+", s):
            raise ParseError(f"expected an integer, got {s!r}", text, pos + (len(part) - len(part.lstrip())))
        out.append(int(s))
        pos += len(part) + 1
    if high_first:
        out.reverse()
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    if len(out) < 2:
        raise ParseError("polynomial must have degree at least 1", text, 0)
    return tuple(out)


def parse_rational(text: str) -> Fraction:
    s = text.strip()
    if not re.fullmatch(r"[+-]?\d+(/\d+)?", s):
        raise ParseError(f"expected a rational a/b, got {s!r}", text, 0)
    try:
        return Fraction(s)
    except ZeroDivisionError:
        raise ParseError("zero denominator", text, s.index("/") + 1) from None


def parse_rational_list(text: str) -> list[Fraction]:
    return [parse_rational(p) for p in text.split(",")]


_NUM = r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_COMPLEX = re.compile(rf"^\s*(?P<re>{_NUM})?\s*(?:(?P<im>[+-]\s*(?:\d+(?:\.\d*)?|\.\d+)?(?:[eE][+-]?\d+)?)\s*[ij])?\s*$")


_IMAG = re.compile(r"^\s*(?P<im>[+-]?(?:\d+(?:\.\d*)?|\.\d+)?(?:[eE][+-]?\d+)?)\s*[ij]\s*$")


def parse_complex(text: str) -> complex:
    """'a', 'a+bi', 'bi', 'i' or '-i' (j accepted for i)."""
    m = _IMAG.match(text)
    if m:
        im = m.group("im")
        return complex(0.0, float(im + "1") if im in ("", "+", "-") else float(im))
    m = _COMPLEX.match(text)
    if not m or (m.group("re") is None and m.group("im") is None):
        raise ParseError(f"expected a+bi, got {text!r}", text, 0)
    re_part = float(m.group("re")) if m.group("re") else 0.0
    im = m.group("im")
    if im is None:
        im_part = 0.0
    else:
        im = im.replace(" ", "")
        im_part = float(im + "1") if im in "+-" else float(im)
    return complex(re_part, im_part)


def parse_root_selector(text: str):
    s = text.strip()
    if s.startswith("index:"):
        s = s[len("index:") :]
        if not s.isdigit():
            raise ParseError("root index must be a non-negative integer", text, 6)
        return RootIndex(int(s))
    if s.isdigit():
        return RootIndex(int(s))
    if s.startswith("near:"):
        s = s[len("near:") :]
    try:
        return RootNear(parse_complex(s))
    except ParseError as e:
        raise ParseError(e.message, text, len(text) - len(s)) from None


class _ExprParser:
    """Recursive descent over + - * / ^ ( ) integers and the generator Y."""

    def __init__(self, text: str, field_poly: Poly):
        self.text = text
        self.pos = 0
        self.field = field_poly

    def error(self, msg: str):
        raise ParseError(msg, self.text, self.pos)

    def peek(self) -> str:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self) -> FieldElement:
        v = self.expr()
        if self.peek():
            self.error(f"unexpected {self.peek()!r}")
        return v

    def expr(self):
        v = self.term()
        while self.peek() in ("+", "-"):
            op = self.text[self.pos]
            self.pos += 1
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self):
        v = self.unary()
        while self.peek() in ("*", "/"):
            op = self.text[self.pos]
            self.pos += 1
            start = self.pos
            w = self.unary()
            if op == "*":
                v = v * w
            else:
                if w.is_zero():
                    self.pos = start
                    self.error("division by zero")
                v = v / w
        return v

    def unary(self):
        c = self.peek()
        if c in ("+", "-"):
            self.pos += 1
            v = self.unary()
            return -v if c == "-" else v
        return self.power()

    def power(self):
        v = self.atom()
        if self.peek() == "^":
            self.pos += 1
            self.peek()
            m = re.match(r"-?\d+", self.text[self.pos :])
            if not m:
                self.error("expected an integer exponent")
            self.pos += m.end()
            k = int(m.group())
            if k < 0 and v.is_zero():
                self.error("negative power of zero")
            v = v**k
        return v

    def atom(self):
        c = self.peek()
        if c == "(":
            self.pos += 1
            v = self.expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return v
        if c in ("Y", "y"):
            self.pos += 1
            return FieldElement.generator(self.field)
        m = re.match(r"\d+", self.text[self.pos :])
        if m:
            self.pos += m.end()
            return FieldElement(self.field, Poly((int(m.group()),)))
        self.error("expected a number, Y or '('" if c else "unexpected end of expression")


def parse_expr(text: str, field_poly) -> FieldElement:
    fp = field_poly if isinstance(field_poly, Poly) else Poly(field_poly)
    return _ExprParser(text, fp).parse()


@dataclass(frozen=True)
class ResolvedBeta:
    number: AlgebraicNumber
    multiplicity: int
    irreducibility_assumed: bool
    element: FieldElement | None


@dataclass(frozen=True)
class BetaSpec:
    """beta as a root of ``poly``, or as ``expr`` evaluated at a root of ``field_poly``."""

    poly: tuple[int, ...] | None = None
    root: object = RootIndex(0)
    field_poly: tuple[int, ...] | None = None
    field_root: object = RootIndex(0)
    expr: str | None = None
    label: str = ""

    def __post_init__(self):
        if (self.poly is None) == (self.field_poly is None):
            raise ParseError("give exactly one of a polynomial or a field polynomial")
        if self.field_poly is not None and self.expr is None:
            raise ParseError("a field polynomial needs an expression in Y")

    def describe(self) -> dict:
        if self.poly is not None:
            return {"poly": list(self.poly), "root": self.root.describe(), "label": self.label}
        return {
            "field_poly": list(self.field_poly),
            "field_root": self.field_root.describe(),
            "expr": self.expr,
            "label": self.label,
        }

    def resolve(self, prec: int = 128, cap: int = PRECISION_CAP) -> ResolvedBeta:
        if self.poly is not None:
            num = algebraic_number(Poly(self.poly), self.root, prec, cap)
            return ResolvedBeta(num, 1, num.degree > 1, None)
        field = Poly(self.field_poly).primitive()
        e = parse_expr(self.expr, field)
        mp, k = element_minpoly(e)
        p = prec
        while True:
            gens = find_conjugates(field, prec=p, cap=cap)
            gamma = gens[select_root(gens, self.field_root)]
            enclosure = e.evaluate(gamma)
            try:
                num = algebraic_number(mp, enclosure, p, cap)
                break
            except SelectionError:
                if p >= cap:
                    raise
                p = min(2 * p, cap)
        return ResolvedBeta(num, k, False, e)


def parse_beta(text: str) -> BetaSpec:
    """Compact form: 'poly:c0,c1,..[;root=SEL]' or
    'field:c0,c1,..;expr=EXPR[;root=SEL]' (coefficients constant term first)."""
    head, _, rest = text.partition(";")
    kind, colon, coeffs = head.partition(":")
    if not colon or kind not in ("poly", "field"):
        raise ParseError("expected 'poly:' or 'field:'", text, 0)
    offset = len(kind) + 1
    try:
        c = parse_int_list(coeffs)
    except ParseError as e:
        raise ParseError(e.message, text, offset + e.column) from None
    opts = {}
    pos = len(head) + 1
    for item in rest.split(";") if rest else []:
        key, eq, val = item.partition("=")
        if not eq or key.strip() not in ("root", "expr"):
            raise ParseError("expected root=... or expr=...", text, pos)
        opts[key.strip()] = (val, pos + len(key) + 1)
        pos += len(item) + 1
    root = RootIndex(0)
    if "root" in opts:
        val, at = opts["root"]
        try:
            root = parse_root_selector(val)
        except ParseError as e:
            raise ParseError(e.message, text, at + e.column) from None
    if kind == "poly":
        if "expr" in opts:
            raise ParseError("expr= needs the field: form", text, opts["expr"][1])
        return BetaSpec(poly=c, root=root, label=text)
    if "expr" not in opts:
        raise ParseError("field: form needs expr=", text, len(text))
    val, at = opts["expr"]
    try:
        parse_expr(val, Poly(c))
    except ParseError as e:
        raise ParseError(e.message, text, at + e.column) from None
    return BetaSpec(field_poly=c, field_root=root, expr=val, label=text)
