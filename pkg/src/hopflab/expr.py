"""Parser for cohomology class expressions such as ``z1 + 2*e1*e2`` or ``(t+1)*z2^2``.

Grammar::

    expr    := ['-'] term (('+' | '-') term)*
    term    := scalar ['*' product] | product
    product := factor ('*' factor)*
    factor  := ('e' | 'z') index ['^' exponent] | '1'
    scalar  := integer | [integer] 't' ['^' k] | '(' polynomial in t ')'

``e_i`` is eta_i (degree 1) and ``z_i`` is zeta_i (degree 2; eta_i^2 when p = 2).
Every term must have the same degree.
"""

from __future__ import annotations

import re

from .field import FieldCtx
from .resolution import CohClass


class ExprError(ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<var>[ez]\d+)|(?P<op>[-+*^()])|(?P<t>t))")


def _tokens(text: str):
    pos = 0
    out = []
    while pos < len(text):
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ExprError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        start = m.start(kind)
        out.append((kind, m.group(kind), start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, field: FieldCtx, r: int):
        self.toks = _tokens(text)
        self.i = 0
        self.F = field
        self.r = r

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None, value=None):
        tok = self.toks[self.i]
        if kind and tok[0] != kind or value and tok[1] != value:
            want = value or kind
            raise ExprError(f"expected {want!r}, found {tok[1] or 'end of input'!r}", tok[2])
        self.i += 1
        return tok

    def parse(self) -> CohClass:
        sign = 1
        if self.peek()[1] == "-":
            self.take()
            sign = -1
        total = self.term()
        if sign < 0:
            total = -total
        while self.peek()[1] in "+-" and self.peek()[0] == "op":
            op = self.take()[1]
            pos = self.peek()[2]
            term = self.term()
            if op == "-":
                term = -term
            if term.degree != total.degree:
                raise ExprError(f"term of degree {term.degree} added to degree {total.degree}", pos)
            total = total + term
        end = self.peek()
        if end[0] != "end":
            raise ExprError(f"unexpected {end[1]!r}", end[2])
        return total

    def scalar_poly(self) -> int:
        """Polynomial in t inside parentheses, as an encoded field element."""
        self.take("op", "(")
        coeffs = [0] * self.F.n
        sign = 1
        first = True
        while True:
            tok = self.peek()
            if tok[1] == ")":
                if first:
                    raise ExprError("empty scalar", tok[2])
                self.take()
                break
            if not first or tok[1] in "+-":
                if tok[1] not in "+-":
                    raise ExprError("expected '+' or '-' in scalar", tok[2])
                sign = -1 if self.take()[1] == "-" else 1
            first = False
            c = 1
            tok = self.peek()
            if tok[0] == "num":
                c = int(self.take()[1])
                if self.peek()[1] == "*":
                    self.take()
            deg = 0
            if self.peek()[0] == "t":
                self.take()
                deg = 1
                if self.peek()[1] == "^":
                    self.take()
                    deg = int(self.take("num")[1])
            elif tok[0] != "num":
                raise ExprError("expected a coefficient or t", tok[2])
            if deg >= self.F.n:
                raise ExprError(f"power t^{deg} exceeds the field degree", tok[2])
            coeffs[deg] = (coeffs[deg] + sign * c) % self.F.p
            sign = 1
        return self.F.encode(coeffs)

    def scalar_monomial(self) -> int:
        """c, t^k or c t^k written without parentheses (the form classes print in)."""
        tok = self.peek()
        c = int(self.take()[1]) if tok[0] == "num" else 1
        deg = 0
        if self.peek()[0] == "t":
            t = self.take()
            deg = 1
            if self.peek()[1] == "^":
                self.take()
                deg = int(self.take("num")[1])
            if deg >= self.F.n:
                raise ExprError(f"power t^{deg} exceeds the field degree", t[2])
        coeffs = [0] * self.F.n
        coeffs[deg] = c % self.F.p
        return self.F.encode(coeffs)

    def term(self) -> CohClass:
        F = self.F
        tok = self.peek()
        scalar = 1
        have_scalar = False
        if tok[0] == "num" and (tok[1] != "1" or self.toks[self.i + 1][0] == "t") or tok[0] == "t" \
                or tok[1] == "(":
            have_scalar = True
            scalar = self.scalar_poly() if tok[1] == "(" else self.scalar_monomial()
            if self.peek()[1] != "*":
                return CohClass.unit(F, self.r).scale(scalar)
            self.take()
        elif tok[0] == "num":
            self.take()
            if self.peek()[1] != "*":
                return CohClass.unit(F, self.r)
            self.take()
        cls = self.factor()
        while self.peek()[1] == "*":
            self.take()
            cls = cls.cup(self.factor())
        return cls.scale(scalar) if have_scalar else cls

    def factor(self) -> CohClass:
        F = self.F
        tok = self.peek()
        if tok[0] == "num" and tok[1] == "1":
            self.take()
            return CohClass.unit(F, self.r)
        if tok[0] != "var":
            raise ExprError(f"expected e<i> or z<i>, found {tok[1] or 'end of input'!r}", tok[2])
        self.take()
        kind, idx = tok[1][0], int(tok[1][1:])
        if not 1 <= idx <= self.r:
            raise ExprError(f"index {idx} outside 1..{self.r}", tok[2])
        base = (CohClass.eta if kind == "e" else CohClass.zeta)(F, self.r, idx - 1)
        exp = 1
        if self.peek()[1] == "^":
            self.take()
            exp = int(self.take("num")[1])
        out = CohClass.unit(F, self.r)
        for _ in range(exp):
            out = out.cup(base)
        return out


def parse_class(text: str, field: FieldCtx, r: int) -> CohClass:
    if not text.strip():
        raise ExprError("empty class expression", 0)
    return _Parser(text, field, r).parse()


def parse_scalar(text: str, field: FieldCtx) -> int:
    """A field element written as an integer or a polynomial in t, e.g. ``t+1``."""
    body = text.strip()
    if not body:
        raise ExprError("empty scalar", 0)
    if body.isdigit():
        return int(field.from_int(int(body)))
    wrapped = body if body.startswith("(") and body.endswith(")") else f"({body})"
    offset = 0 if wrapped is body else -1
    try:
        P = _Parser(wrapped, field, 1)
        val = P.scalar_poly()
        end = P.peek()
        if end[0] != "end":
            raise ExprError(f"unexpected {end[1]!r}", end[2])
    except ExprError as e:
        raise ExprError(str(e).rsplit(" at position", 1)[0], max(e.pos + offset, 0)) from None
    return int(val)
