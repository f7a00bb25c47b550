"""Recursive-descent parser for polynomial expressions.

Grammar::

    expr     := sign? term (('+'|'-') term)*
    term     := factor ('*' factor)*
    factor   := base ('^' nat)?
    base     := rational | var | '(' expr ')'
    rational := int ('/' nat)?
    var      := letter (letter | digit | '_')*

Implicit multiplication is rejected.  A single leading sign is accepted so
that the canonical text form (which may start with ``-``) re-parses.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError
from .field import QQ
from .orders import GREVLEX
from .poly import Polynomial, Ring

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|(\S))")
_NAME = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


def _position(text, offset):
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


def _tokenize(text):
    tokens = []
    pos = 0
    while text[pos:].strip():
        m = _TOKEN.match(text, pos)
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", *_position(text, m.start(3)))
            tokens.append((ch, ch, m.start(3)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, ring):
        self.text = text
        self.ring = ring
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            self.fail(f"expected {kind!r}", tok)
        self.i += 1
        return tok

    def fail(self, message, tok=None):
        tok = tok or self.peek()
        found = "end of input" if tok[0] == "end" else repr(tok[1])
        raise ParseError(f"{message}, found {found}", *_position(self.text, tok[2]))

    def parse(self) -> Polynomial:
        f = self.expr()
        if self.peek()[0] != "end":
            self.fail("expected operator")
        return f

    def expr(self):
        sign = 1
        if self.peek()[0] in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self):
        acc = self.factor()
        while self.peek()[0] == "*":
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self):
        base = self.base()
        if self.peek()[0] == "^":
            self.take()
            tok = self.peek()
            if tok[0] != "int":
                self.fail("expected a natural-number exponent")
            self.take()
            base = base ** int(tok[1])
        return base

    def base(self):
        tok = self.peek()
        kind = tok[0]
        if kind == "int":
            self.take()
            value = Fraction(int(tok[1]))
            if self.peek()[0] == "/":
                self.take()
                den = self.peek()
                if den[0] != "int":
                    self.fail("expected a denominator")
                self.take()
                if int(den[1]) == 0:
                    raise ParseError("zero denominator", *_position(self.text, den[2]))
                value = value / int(den[1])
            try:
                return self.ring.const(value)
            except ZeroDivisionError as exc:
                raise ParseError(str(exc), *_position(self.text, tok[2])) from None
        if kind == "name":
            self.take()
            try:
                return self.ring.var(self.ring.index(tok[1]))
            except KeyError:
                raise ParseError(
                    f"unknown variable {tok[1]!r}", *_position(self.text, tok[2])
                ) from None
        if kind == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        self.fail("expected a number, variable or '('")


def parse_polynomial(text: str, ring: Ring) -> Polynomial:
    return _Parser(text, ring).parse()


def _natural_key(name):
    return [int(t) if t.isdigit() else t for t in re.split(r"(\d+)", name)]


def variables_in(*texts: str):
    """Variable names occurring in ``texts``, in natural sort order."""
    names = set()
    for t in texts:
        names.update(_NAME.findall(t))
    return sorted(names, key=_natural_key)


def infer_ring(*texts: str, field=QQ, order=GREVLEX) -> Ring:
    return Ring(variables_in(*texts), field, order)
