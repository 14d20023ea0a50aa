"""Polynomial text grammar: parsing and canonical printing.

Grammar: integer or a/b rational coefficients, operators + - * ^,
explicit * between factors, parentheses, variables from the ring.
Canonical printing orders terms descending under the ring's monomial
order; print-parse is the identity on canonical forms.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ParseError, UnknownVariableError
from .rings import Polynomial


class _Lexer:
    def __init__(self, text):
        self.text = text
        self.pos = 0
        self.tokens = []
        self._scan()
        self.index = 0

    def _scan(self):
        text = self.text
        i = 0
        n = len(text)
        while i < n:
            ch = text[i]
            if ch.isspace():
                i += 1
                continue
            if ch in "+-*^()":
                self.tokens.append((ch, ch, i))
                i += 1
                continue
            if ch.isdigit():
                start = i
                while i < n and text[i].isdigit():
                    i += 1
                num = int(text[start:i])
                if i < n and text[i] == "/":
                    j = i + 1
                    if j >= n or not text[j].isdigit():
                        raise ParseError("expected denominator digits", i + 1)
                    i = j
                    while i < n and text[i].isdigit():
                        i += 1
                    den = int(text[j:i])
                    if den == 0:
                        raise ParseError("zero denominator", j)
                    self.tokens.append(("num", Fraction(num, den), start))
                else:
                    self.tokens.append(("num", Fraction(num), start))
                continue
            if ch.isalpha() or ch == "_":
                start = i
                while i < n and (text[i].isalnum() or text[i] == "_"):
                    i += 1
                self.tokens.append(("name", text[start:i], start))
                continue
            raise ParseError(f"unexpected character {ch!r}", i)
        self.tokens.append(("end", None, n))

    def peek(self):
        return self.tokens[self.index]

    def advance(self):
        tok = self.tokens[self.index]
        if tok[0] != "end":
            self.index += 1
        return tok


class _Parser:
    def __init__(self, text, ring):
        self.lexer = _Lexer(text)
        self.ring = ring

    def parse(self):
        p = self._expr()
        kind, _, pos = self.lexer.peek()
        if kind != "end":
            raise ParseError("trailing input", pos)
        return p

    def _expr(self):
        sign = 1
        kind, _, _ = self.lexer.peek()
        if kind in "+-":
            self.lexer.advance()
            sign = -1 if kind == "-" else 1
        p = self._term() * sign
        while True:
            kind, _, _ = self.lexer.peek()
            if kind not in "+-":
                return p
            self.lexer.advance()
            q = self._term()
            p = p + q if kind == "+" else p - q

    def _term(self):
        p = self._factor()
        while self.lexer.peek()[0] == "*":
            self.lexer.advance()
            p = p * self._factor()
        return p

    def _factor(self):
        p = self._base()
        if self.lexer.peek()[0] == "^":
            self.lexer.advance()
            kind, value, pos = self.lexer.advance()
            if kind != "num" or value.denominator != 1 or value < 0:
                raise ParseError("exponent must be a nonnegative integer", pos)
            p = p ** int(value)
        return p

    def _base(self):
        kind, value, pos = self.lexer.advance()
        if kind == "num":
            return self.ring.const(value)
        if kind == "name":
            if value not in self.ring.variables:
                raise UnknownVariableError(f"{value!r} not in {self.ring}", pos)
            return self.ring.gen(value)
        if kind == "(":
            p = self._expr()
            kind, _, pos = self.lexer.advance()
            if kind != ")":
                raise ParseError("expected ')'", pos)
            return p
        raise ParseError("expected number, variable, or '('", pos)


def parse_polynomial(text, ring):
    """Parse text into a Polynomial of the given ring."""
    return _Parser(text, ring).parse()


def parse_many(text, ring, sep=";"):
    """Parse a separator-joined generator list; empty text gives []."""
    items = [s for s in (piece.strip() for piece in text.split(sep)) if s]
    return [parse_polynomial(s, ring) for s in items]


def format_polynomial(poly, order=None):
    """Canonical string: terms descending under the ring's order."""
    if poly.is_zero():
        return "0"
    names = poly.ring.variables
    pieces = []
    for m, c in poly.sorted_terms(order):
        factors = []
        for name, e in zip(names, m):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        mono = "*".join(factors)
        a = abs(c)
        if mono:
            body = mono if a == 1 else f"{a}*{mono}"
        else:
            body = str(a)
        pieces.append(("-" if c < 0 else "+", body))
    sign, body = pieces[0]
    out = body if sign == "+" else f"-{body}"
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


def format_gens(polys, order=None):
    return "(" + ", ".join(format_polynomial(p, order) for p in polys) + ")"


def format_rationals(values):
    """Print a tuple of exact rationals like (5, 15/2)."""
    return "(" + ", ".join(str(Fraction(v)) for v in values) + ")"
