"""Recursive-descent parser for complex rational expressions in ``z``.

Grammar (EBNF)::

    expr     = term { ("+" | "-") term } ;
    term     = unary { ("*" | "/") unary } ;
    unary    = ("-" | "+") unary | power ;
    power    = atom [ "^" unary ] ;          (* right associative *)
    atom     = number [ "i" ] | "i" | "z" | "(" expr ")" ;
    number   = digits [ "." digits ] [ ("e" | "E") [ "+" | "-" ] digits ] ;

Exponents must evaluate to nonnegative integer constants.  Sphere points are
either the token ``inf`` or a constant expression such as ``1+2i``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError
from .polynomial import Polynomial
from .rational import ComplexRational
from .sphere import INF

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)(?P<imag>i)?
  | (?P<name>[A-Za-z_]+)
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # "num", "i", "z", "op", "end"
    text: str
    pos: int
    value: complex = 0j


def tokenize(text: str) -> list[Token]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        if m.group("ws"):
            pass
        elif m.group("num") is not None:
            v = float(m.group("num"))
            out.append(Token("num", m.group(0), pos, complex(0, v) if m.group("imag") else complex(v)))
        elif m.group("name") is not None:
            name = m.group("name")
            if name == "z":
                out.append(Token("z", name, pos))
            elif name == "i":
                out.append(Token("num", name, pos, 1j))
            elif name == "inf":
                out.append(Token("inf", name, pos))
            else:
                raise ParseError(f"unknown identifier {name!r}", pos, text)
        else:
            out.append(Token("op", m.group("op"), pos))
        pos = m.end()
    out.append(Token("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg: str, tok: Token | None = None):
        tok = tok or self.tok
        return ParseError(msg, tok.pos, self.text)

    def accept(self, op: str) -> bool:
        if self.tok.kind == "op" and self.tok.text == op:
            self.i += 1
            return True
        return False

    def parse(self) -> ComplexRational:
        if self.tok.kind == "end":
            raise self.error("empty expression")
        value = self.expr()
        if self.tok.kind != "end":
            raise self.error(f"unexpected token {self.tok.text!r}")
        return value

    def expr(self) -> ComplexRational:
        value = self.term()
        while True:
            if self.accept("+"):
                value = value + self.term()
            elif self.accept("-"):
                value = value - self.term()
            else:
                return value

    def term(self) -> ComplexRational:
        value = self.unary()
        while True:
            if self.accept("*"):
                value = value * self.unary()
            elif self.tok.kind == "op" and self.tok.text == "/":
                tok = self.tok
                self.i += 1
                rhs = self.unary()
                if rhs.is_zero():
                    raise self.error("division by zero", tok)
                value = value / rhs
            else:
                return value

    def unary(self) -> ComplexRational:
        if self.accept("-"):
            return -self.unary()
        if self.accept("+"):
            return self.unary()
        return self.power()

    def power(self) -> ComplexRational:
        base = self.atom()
        if self.tok.kind == "op" and self.tok.text == "^":
            self.i += 1
            exp_tok = self.tok
            exponent = self.unary()
            if not exponent.is_constant():
                raise self.error("nonconstant exponent", exp_tok)
            e = exponent.value_at(0j)
            if e.imag != 0 or e.real != int(e.real) or e.real < 0:
                raise self.error("exponent must be a nonnegative integer", exp_tok)
            n = int(e.real)
            if n > 64:
                raise self.error("exponent too large", exp_tok)
            return base ** n
        return base

    def atom(self) -> ComplexRational:
        tok = self.tok
        if tok.kind == "num":
            self.i += 1
            return ComplexRational.constant(tok.value)
        if tok.kind == "z":
            self.i += 1
            return ComplexRational.z()
        if self.accept("("):
            value = self.expr()
            if not self.accept(")"):
                raise self.error("expected ')'")
            return value
        if tok.kind == "end":
            raise self.error("unexpected end of input")
        raise self.error(f"unexpected token {tok.text!r}")


def parse_rational(text: str) -> ComplexRational:
    """Parse an expression in ``z`` into a reduced rational function."""
    return _Parser(text).parse()


def parse_point(text: str):
    """Parse ``inf`` or a constant complex expression into a sphere point."""
    stripped = text.strip()
    if stripped == "inf":
        return INF
    p = _Parser(text)
    if any(t.kind == "z" for t in p.toks):
        pos = next(t.pos for t in p.toks if t.kind == "z")
        raise ParseError("a point must be a constant", pos, text)
    if any(t.kind == "inf" for t in p.toks):
        pos = next(t.pos for t in p.toks if t.kind == "inf")
        raise ParseError("'inf' must stand alone", pos, text)
    value = p.parse()
    return value.value_at(0j)


# ---------------------------------------------------------------------
# printing (output re-parses to the same coefficients)


def format_complex(c: complex) -> str:
    re_, im = c.real, c.imag
    if im == 0:
        return repr(re_) if re_ >= 0 else f"({re_!r})"
    if re_ == 0:
        return f"{im!r}i" if im >= 0 else f"({im!r}i)"
    sign = "+" if im >= 0 else "-"
    return f"({re_!r}{sign}{abs(im)!r}i)"


def format_polynomial(p: Polynomial) -> str:
    if p.is_zero():
        return "0"
    terms = []
    for k, c in enumerate(p.coeffs):
        c = complex(c)
        if c == 0:
            continue
        coef = format_complex(c)
        if k == 0:
            terms.append(coef)
        elif k == 1:
            terms.append(f"{coef}*z")
        else:
            terms.append(f"{coef}*z^{k}")
    return " + ".join(terms)


def format_rational(r: ComplexRational) -> str:
    if r.den.is_constant() and r.den.coeffs[0] == 1:
        return format_polynomial(r.num)
    return f"({format_polynomial(r.num)})/({format_polynomial(r.den)})"
