"""Text syntax for free-algebra elements.

    expr   := circ (('+' | '-') circ)*
    circ   := term ('o' term)*            left-associative circle product
    term   := unary ('*' unary)*
    unary  := '-' unary | factor
    factor := atom ('^' uint)?
    atom   := 'x' uint | number ('/' uint)? | '(' expr ')' | '[' expr (',' expr)+ ']'

``[a,b,c]`` means ``[[a,b],c]``.  Numbers denote scalars; a bare number
is a constant polynomial and so needs the unital context, but ``2*x1`` is
fine anywhere.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Union

from .coefficients import QQ, FieldSpec, Scalar
from .free_algebra import ContextError, NCPoly, nc_circle, nc_commutator


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


_TOKEN = re.compile(r"\s*(?:(x)(\d+)|(\d+)|(o)(?![A-Za-z0-9])|([-+*^()\[\],/]))")


@dataclass
class _Tok:
    kind: str  # var, num, op, end
    text: str
    pos: int
    value: int = 0


def _tokenize(text: str) -> List[_Tok]:
    out: List[_Tok] = []
    i = 0
    n = len(text)
    while True:
        while i < n and text[i].isspace():
            i += 1
        if i >= n:
            out.append(_Tok("end", "", n))
            return out
        m = _TOKEN.match(text, i)
        if not m:
            raise ParseError(f"unexpected character {text[i]!r}", i)
        start = i
        if m.group(1):
            idx = int(m.group(2))
            if idx < 1:
                raise ParseError("variable indices start at 1", start)
            out.append(_Tok("var", m.group(0).strip(), start, idx))
        elif m.group(3):
            out.append(_Tok("num", m.group(3), start, int(m.group(3))))
        elif m.group(4):
            out.append(_Tok("op", "o", start))
        else:
            out.append(_Tok("op", m.group(5), start))
        i = m.end(0)


# a scalar stays a scalar until it meets a polynomial, so 2*x1 is legal in k_0<X>
_Val = Union[Scalar, NCPoly]


class _Parser:
    def __init__(self, text: str, field: FieldSpec, unital: bool):
        self.toks = _tokenize(text)
        self.k = 0
        self.field = field
        self.unital = unital

    @property
    def tok(self) -> _Tok:
        return self.toks[self.k]

    def eat(self, text: str) -> bool:
        if self.tok.kind == "op" and self.tok.text == text:
            self.k += 1
            return True
        return False

    def expect(self, text: str) -> None:
        if not self.eat(text):
            raise ParseError(f"expected {text!r}", self.tok.pos)

    def poly(self, v: _Val, pos: int) -> NCPoly:
        if isinstance(v, NCPoly):
            return v
        if not self.unital:
            if self.field.reduce(v) == 0:
                return NCPoly.zero(self.field, False)
            raise ParseError("constant term in nonunital context", pos)
        return NCPoly.constant(v, self.field)

    def parse(self) -> NCPoly:
        pos = self.tok.pos
        v = self.expr()
        if self.tok.kind != "end":
            raise ParseError(f"unexpected {self.tok.text!r}", self.tok.pos)
        return self.poly(v, pos)

    def expr(self) -> _Val:
        pos = self.tok.pos
        v = self.circ()
        while True:
            if self.eat("+"):
                rpos = self.tok.pos
                r = self.circ()
                v = self._add(v, r, pos, rpos, 1)
            elif self.eat("-"):
                rpos = self.tok.pos
                r = self.circ()
                v = self._add(v, r, pos, rpos, -1)
            else:
                return v

    def _add(self, a: _Val, b: _Val, apos: int, bpos: int, sign: int) -> _Val:
        if not isinstance(a, NCPoly) and not isinstance(b, NCPoly):
            return self.field.reduce(a + sign * b)
        a = self.poly(a, apos)
        b = self.poly(b, bpos)
        return a + b if sign > 0 else a - b

    def circ(self) -> _Val:
        pos = self.tok.pos
        v = self.term()
        while self.eat("o"):
            rpos = self.tok.pos
            r = self.term()
            v = nc_circle(self.poly(v, pos), self.poly(r, rpos))
        return v

    def term(self) -> _Val:
        v = self.unary()
        while True:
            if self.eat("*"):
                rpos = self.tok.pos
                r = self.unary()
                if isinstance(v, NCPoly) and isinstance(r, NCPoly):
                    v = v * r
                elif isinstance(v, NCPoly):
                    v = v.scale(r)
                elif isinstance(r, NCPoly):
                    v = r.scale(v)
                else:
                    v = self.field.reduce(v * r)
            else:
                return v

    def unary(self) -> _Val:
        if self.eat("-"):
            v = self.unary()
            return -v if isinstance(v, NCPoly) else self.field.reduce(-v)
        return self.factor()

    def factor(self) -> _Val:
        pos = self.tok.pos
        v = self.atom()
        if self.eat("^"):
            t = self.tok
            if t.kind != "num":
                raise ParseError("expected a nonnegative integer exponent", t.pos)
            self.k += 1
            n = t.value
            if isinstance(v, NCPoly):
                if n == 0:
                    if not self.unital:
                        raise ParseError("zeroth power in nonunital context", t.pos)
                    return NCPoly.constant(1, self.field)
                return v ** n
            return self.field.reduce(Fraction(v) ** n)
        return v

    def atom(self) -> _Val:
        t = self.tok
        if t.kind == "var":
            self.k += 1
            return NCPoly.var(t.value, self.field, self.unital)
        if t.kind == "num":
            self.k += 1
            if self.eat("/"):
                d = self.tok
                if d.kind != "num":
                    raise ParseError("expected a denominator", d.pos)
                self.k += 1
                if d.value == 0:
                    raise ParseError("zero denominator", d.pos)
                try:
                    return self.field.reduce(Fraction(t.value, d.value))
                except ZeroDivisionError:
                    raise ParseError(f"denominator not invertible in {self.field}", d.pos) from None
            return self.field.reduce(t.value)
        if self.eat("("):
            v = self.expr()
            self.expect(")")
            return v
        if self.eat("["):
            items = [(self.tok.pos, self.expr())]
            while self.eat(","):
                items.append((self.tok.pos, self.expr()))
            if len(items) < 2:
                raise ParseError("a commutator needs at least two entries", self.tok.pos)
            self.expect("]")
            polys = [self.poly(v, p) for p, v in items]
            return nc_commutator(*polys)
        if t.kind == "end":
            raise ParseError("unexpected end of input", t.pos)
        raise ParseError(f"unexpected {t.text!r}", t.pos)


def parse_expr(text: str, field: FieldSpec = QQ, unital: bool = False) -> NCPoly:
    """Parse ``text`` into an NCPoly in the given context."""
    return _Parser(text, field, unital).parse()
