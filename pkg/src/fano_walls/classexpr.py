"""Parser for class expressions such as ``-k1+2*k2``, ``ch(1,0,-1,0)`` or ``2*O(-1) - pt``.

Grammar::

    expr   := term (("+" | "-") term)*
    term   := ("+" | "-")* factor ("*" factor)*
    factor := number ["/" number] | "k1" | "k2" | "pt" | "O" "(" int ")"
            | "ch" "(" signed ("," signed){0,3} ")" | "(" expr ")"

Exactly one factor of a product may be a class; the rest are rationals.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .kulattice import kappa1, kappa2
from .numclass import ChernCharacter, FanoContext, line_bundle, point_class


class ClassExpressionError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        self.text, self.pos = text, pos
        super().__init__(f"{message} at position {pos}\n  {text}\n  {' ' * pos}^")


_TOKEN = re.compile(r"\s*(?:(\d+)|(k1|k2|pt|ch|O)|([-+*/(),]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = len(text) - len(text[pos:].lstrip())
            raise ClassExpressionError(f"unexpected character {text[start]!r}", text, start)
        kind = "num" if m.group(1) else "name" if m.group(2) else "op"
        toks.append((kind, m.group(m.lastindex), m.start(m.lastindex)))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, ctx: FanoContext):
        self.text, self.ctx = text, ctx
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, value: str | None = None):
        tok = self.toks[self.i]
        if value is not None and tok[1] != value:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ClassExpressionError(f"expected {value!r}, found {what}", self.text, tok[2])
        self.i += 1
        return tok

    def error(self, msg: str):
        raise ClassExpressionError(msg, self.text, self.peek()[2])

    def expr(self):
        val = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()
            rhs = self.term()
            val = self._combine(val, rhs, op)
        return val

    def _combine(self, a, b, op):
        if isinstance(a, ChernCharacter) != isinstance(b, ChernCharacter):
            raise ClassExpressionError("cannot add a number to a class", self.text, op[2])
        return a + b if op[1] == "+" else a - b

    def term(self):
        sign = 1
        while self.peek()[1] in ("+", "-"):
            if self.take()[1] == "-":
                sign = -sign
        val = self.factor()
        while self.peek()[1] == "*":
            op = self.take()
            rhs = self.factor()
            if isinstance(val, ChernCharacter) and isinstance(rhs, ChernCharacter):
                raise ClassExpressionError("product of two classes", self.text, op[2])
            val = val * rhs
        return -val if sign < 0 else val

    def rational(self) -> Fraction:
        tok = self.peek()
        if tok[0] != "num":
            self.error("expected a number")
        num = int(self.take()[1])
        if self.peek()[1] == "/":
            self.take()
            tok = self.peek()
            if tok[0] != "num":
                self.error("expected a denominator")
            den = int(self.take()[1])
            if den == 0:
                raise ClassExpressionError("zero denominator", self.text, tok[2])
            return Fraction(num, den)
        return Fraction(num)

    def signed(self) -> Fraction:
        sign = 1
        while self.peek()[1] in ("+", "-"):
            if self.take()[1] == "-":
                sign = -sign
        return sign * self.rational()

    def factor(self):
        kind, val, pos = self.peek()
        if kind == "num":
            return self.rational()
        if kind == "name":
            self.take()
            if val == "k1":
                return kappa1(self.ctx)
            if val == "k2":
                return kappa2(self.ctx)
            if val == "pt":
                return point_class(self.ctx)
            self.take("(")
            if val == "O":
                n = self.signed()
                if n.denominator != 1:
                    raise ClassExpressionError("twist must be an integer", self.text, pos)
                self.take(")")
                return line_bundle(int(n))
            coeffs = [self.signed()]
            while self.peek()[1] == ",":
                self.take()
                coeffs.append(self.signed())
            if len(coeffs) > 4:
                raise ClassExpressionError("ch(...) takes at most four entries", self.text, pos)
            self.take(")")
            return ChernCharacter(*coeffs)
        if val == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        what = "end of input" if kind == "end" else repr(val)
        self.error(f"unexpected {what}")


def parse_class(text: str, ctx: FanoContext) -> ChernCharacter:
    p = _Parser(text, ctx)
    val = p.expr()
    if p.peek()[0] != "end":
        p.error(f"unexpected {p.peek()[1]!r}")
    if not isinstance(val, ChernCharacter):
        raise ClassExpressionError("expression is a number, not a class", text, 0)
    return val


def parse_rational(text: str) -> Fraction:
    """``"p/q"``, ``"-3"`` and similar; floats are refused."""
    try:
        if "." in text or "e" in text.lower():
            raise ValueError
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"not an exact rational: {text!r}") from None
