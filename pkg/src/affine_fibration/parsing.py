"""Recursive-descent parser for polynomial expressions and CLI literals.

Grammar (explicit ``*`` is required; ``/`` only appears inside literals)::

    expr     := term (("+" | "-") term)*
    term     := factor ("*" factor)*
    factor   := base ("^" uint)?
    base     := rational | ident | "(" expr ")" | "-" factor
    rational := uint ("/" uint)?
    ident    := [A-Za-z][A-Za-z0-9_]*

Unary minus negates the whole following factor, so ``-x^2`` is ``-(x^2)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .polyalg import Polynomial, format_polynomial

MAX_EXPONENT = 64
IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


class ParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at byte offset {offset}")
        self.offset = offset


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "ident", "op", "end"
    text: str
    offset: int


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|([-+*/^()]))")


def tokenize(text: str) -> list[Token]:
    data = text.encode("utf-8", errors="surrogateescape")
    if not data.isascii():
        bad = next(i for i, b in enumerate(data) if b > 127)
        raise ParseError("non-ASCII character", bad)
    src = data.decode("ascii")
    tokens = []
    pos = 0
    while True:
        while pos < len(src) and src[pos].isspace():
            pos += 1
        if pos == len(src):
            break
        m = _TOKEN_RE.match(src, pos)
        if not m:
            raise ParseError(f"unexpected character {src[pos]!r}", pos)
        if m.group(1):
            tokens.append(Token("int", m.group(1), m.start(1)))
        elif m.group(2):
            tokens.append(Token("ident", m.group(2), m.start(2)))
        else:
            tokens.append(Token("op", m.group(3), m.start(3)))
        pos = m.end()
    tokens.append(Token("end", "", len(src)))
    return tokens


class _Parser:
    def __init__(self, text: str, names: Sequence[str]):
        self.tokens = tokenize(text)
        self.i = 0
        self.index = {name: k for k, name in enumerate(names)}
        self.n = len(names)

    def peek(self) -> Token:
        return self.tokens[self.i]

    def take(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str) -> None:
        tok = self.take()
        if tok.kind != "op" or tok.text != op:
            raise ParseError(f"expected {op!r}", tok.offset)

    def uint(self) -> int:
        tok = self.take()
        if tok.kind != "int":
            raise ParseError("expected an unsigned integer", tok.offset)
        return int(tok.text)

    def parse(self) -> Polynomial:
        p = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ParseError(f"unexpected {tok.text!r}", tok.offset)
        return p

    def expr(self) -> Polynomial:
        p = self.term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.take().text
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Polynomial:
        p = self.factor()
        while self.peek().kind == "op" and self.peek().text == "*":
            self.take()
            p = p * self.factor()
        return p

    def factor(self) -> Polynomial:
        tok = self.peek()
        if tok.kind == "op" and tok.text == "-":
            self.take()
            return -self.factor()
        p = self.base()
        if self.peek().kind == "op" and self.peek().text == "^":
            self.take()
            etok = self.peek()
            e = self.uint()
            if e > MAX_EXPONENT:
                raise ParseError(f"exponent {e} exceeds {MAX_EXPONENT}", etok.offset)
            p = p**e
        return p

    def base(self) -> Polynomial:
        tok = self.take()
        if tok.kind == "int":
            num = int(tok.text)
            if self.peek().kind == "op" and self.peek().text == "/":
                self.take()
                dtok = self.peek()
                den = self.uint()
                if den == 0:
                    raise ParseError("zero denominator", dtok.offset)
                return Polynomial.constant(self.n, Fraction(num, den))
            return Polynomial.constant(self.n, num)
        if tok.kind == "ident":
            if tok.text not in self.index:
                raise ParseError(f"unknown variable {tok.text!r}", tok.offset)
            return Polynomial.variable(self.n, self.index[tok.text])
        if tok.kind == "op" and tok.text == "(":
            p = self.expr()
            self.expect_op(")")
            return p
        if tok.kind == "end":
            raise ParseError("unexpected end of input", tok.offset)
        raise ParseError(f"unexpected {tok.text!r}", tok.offset)


def check_names(names: Sequence[str]) -> None:
    if not names:
        raise ValueError("at least one variable is required")
    for name in names:
        if not IDENT_RE.match(name):
            raise ValueError(f"invalid variable name {name!r}")
    if len(set(names)) != len(names):
        raise ValueError("duplicate variable names")


def parse_polynomial(text: str, names: Sequence[str]) -> Polynomial:
    check_names(names)
    return _Parser(text, names).parse()


def print_polynomial(p: Polynomial, names: Sequence[str]) -> str:
    return format_polynomial(p, names)


def parse_vars(text: str) -> list[str]:
    names = [s.strip() for s in text.split(",")]
    check_names(names)
    return names


def parse_map(text: str, names: Sequence[str]) -> list[Polynomial]:
    """Semicolon-separated components."""
    comps = []
    offset = 0
    for chunk in text.split(";"):
        try:
            comps.append(parse_polynomial(chunk, names))
        except ParseError as exc:
            raise ParseError(str(exc).rsplit(" at byte", 1)[0], offset + exc.offset) from None
        offset += len(chunk.encode()) + 1
    return comps


def parse_equation(text: str, names: Sequence[str]) -> Polynomial:
    """``lhs = rhs`` (or a bare expression meaning ``expr = 0``) as lhs - rhs."""
    if text.count("=") > 1:
        raise ParseError("more than one '='", text.index("=", text.index("=") + 1))
    if "=" in text:
        lhs, rhs = text.split("=")
        try:
            right = parse_polynomial(rhs, names)
        except ParseError as exc:
            raise ParseError(str(exc).rsplit(" at byte", 1)[0], len(lhs) + 1 + exc.offset) from None
        return parse_polynomial(lhs, names) - right
    return parse_polynomial(text, names)


def parse_pieces(text: str, names: Sequence[str]) -> list[list[Polynomial]]:
    """``eq,eq;eq,eq`` -> one list of equations per piece."""
    pieces = []
    for chunk in text.split(";"):
        if not chunk.strip():
            raise ParseError("empty piece", 0)
        pieces.append([parse_equation(eq, names) for eq in chunk.split(",")])
    return pieces


def parse_rational(text: str) -> Fraction:
    s = text.strip()
    if not re.fullmatch(r"[-+]?\d+(/\d+)?", s):
        raise ParseError(f"invalid rational {s!r}", 0)
    return Fraction(s)


def parse_vector(text: str) -> tuple[Fraction, ...]:
    s = text.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise ParseError("vector must be written as (a,b,...)", 0)
    return tuple(parse_rational(part) for part in s[1:-1].split(","))


_CURVE_TERM = re.compile(r"\s*(?:t(?:\^(\d+))?\s*\*\s*)?(\([^()]*\))\s*")


def parse_curve(text: str) -> list[tuple[Fraction, ...]]:
    """``(a0)+t*(a1)+t^2*(a2)...`` -> dense coefficient list a0, a1, ..."""
    coeffs: dict[int, tuple[Fraction, ...]] = {}
    pos = 0
    first = True
    while pos < len(text):
        if not first:
            if text[pos] != "+":
                raise ParseError("expected '+' between curve terms", pos)
            pos += 1
        m = _CURVE_TERM.match(text, pos)
        if not m:
            raise ParseError("malformed curve term", pos)
        if m.group(0).strip().startswith("t"):
            power = int(m.group(1)) if m.group(1) else 1
        else:
            power = 0
        if power in coeffs:
            raise ParseError(f"repeated power t^{power}", pos)
        try:
            coeffs[power] = parse_vector(m.group(2))
        except ParseError as exc:
            raise ParseError(str(exc).rsplit(" at byte", 1)[0], m.start(2)) from None
        pos = m.end()
        first = False
    if 0 not in coeffs:
        raise ParseError("curve needs a constant term", 0)
    n = len(coeffs[0])
    top = max(coeffs)
    return [coeffs.get(k, (Fraction(0),) * n) for k in range(top + 1)]
