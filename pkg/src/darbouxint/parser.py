"""Expression front end: polynomials, rational functions and 1-forms.

Grammar (``*`` is mandatory between factors)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' INT)?
    atom   := INT | VAR | 'd' VAR | '(' expr ')'

A differential ``d<var>`` has grade 1; a product of two grade-1 factors is
rejected, as is any sum mixing grades.  Division is allowed by nonzero
grade-0 expressions.
"""

from __future__ import annotations

import re

from .algebra import FieldSpec, GF, QQ, MultiPoly, RatFunc
from .errors import BadArguments, ExprSyntaxError, NotGradeOne, UnknownVariable
from .exterior import DiffForm

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def parse_field(text: str) -> FieldSpec:
    """``q`` for the rationals, ``fp:<prime>`` for a prime field."""
    t = text.strip().lower()
    if t in ("q", "qq", "rationals"):
        return QQ
    if t.startswith("fp:"):
        try:
            p = int(t[3:])
        except ValueError:
            raise BadArguments(f"bad prime in field descriptor {text!r}") from None
        return GF(p)
    raise BadArguments(f"unknown field descriptor {text!r} (use q or fp:<prime>)")


def format_field(field: FieldSpec) -> str:
    return "q" if field.characteristic == 0 else f"fp:{field.characteristic}"


def parse_vars(text) -> tuple:
    if isinstance(text, (list, tuple)):
        names = [str(v).strip() for v in text]
    else:
        names = [v.strip() for v in text.split(",")]
    if not names or any(not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", v) for v in names):
        raise BadArguments(f"bad variable list {text!r}")
    if len(set(names)) != len(names):
        raise BadArguments("variables must be distinct")
    return tuple(names)


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.group(0).strip() == "":
            break
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("int", int(m.group(1)), start))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ExprSyntaxError(f"unexpected character {ch!r}", start)
            tokens.append(("op", ch, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Value:
    """Grade-0 value (a RatFunc) or grade-1 value (coefficient list)."""

    __slots__ = ("grade", "f", "w")

    def __init__(self, grade, f=None, w=None):
        self.grade = grade
        self.f = f
        self.w = w


class _Parser:
    def __init__(self, text, field, vars):
        self.text = text
        self.field = field
        self.vars = vars
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def const(self, c):
        return _Value(0, f=RatFunc.constant(self.field, self.vars, c))

    def parse(self):
        v = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ExprSyntaxError(f"unexpected {val!r}", pos)
        return v

    def expr(self):
        v = self.term()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                rhs = self.term()
                v = self.add(v, rhs, val == "-", pos)
            else:
                return v

    def term(self):
        v = self.unary()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val in "*/":
                self.take()
                rhs = self.unary()
                v = self.mul(v, rhs, pos) if val == "*" else self.div(v, rhs, pos)
            else:
                return v

    def unary(self):
        kind, val, pos = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            v = self.unary()
            return self.neg(v) if val == "-" else v
        return self.power()

    def power(self):
        base = self.atom()
        kind, val, pos = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, exp, epos = self.take()
            if kind != "int":
                raise ExprSyntaxError("exponent must be a non-negative integer literal", epos)
            if base.grade != 0:
                raise ExprSyntaxError("cannot raise a differential to a power", pos)
            return _Value(0, f=base.f ** exp)
        return base

    def atom(self):
        kind, val, pos = self.take()
        if kind == "int":
            return self.const(val)
        if kind == "name":
            if val in self.vars:
                return _Value(0, f=RatFunc.from_poly(MultiPoly.var(self.field, self.vars, val)))
            if val.startswith("d") and val[1:] in self.vars:
                i = self.vars.index(val[1:])
                one = RatFunc.constant(self.field, self.vars, 1)
                zero = RatFunc.zero(self.field, self.vars)
                return _Value(1, w=[one if j == i else zero for j in range(len(self.vars))])
            raise UnknownVariable(val)
        if kind == "op" and val == "(":
            v = self.expr()
            k2, v2, p2 = self.take()
            if not (k2 == "op" and v2 == ")"):
                raise ExprSyntaxError("expected ')'", p2)
            return v
        if kind == "end":
            raise ExprSyntaxError("unexpected end of input", pos)
        raise ExprSyntaxError(f"unexpected {val!r}", pos)

    # value arithmetic

    def neg(self, v):
        if v.grade == 0:
            return _Value(0, f=-v.f)
        return _Value(1, w=[-c for c in v.w])

    def add(self, a, b, subtract, pos):
        if subtract:
            b = self.neg(b)
        if a.grade != b.grade:
            if a.grade == 0 and a.f.is_zero():
                return b
            if b.grade == 0 and b.f.is_zero():
                return a
            raise NotGradeOne(f"sum mixes a function and a differential (at position {pos})")
        if a.grade == 0:
            return _Value(0, f=a.f + b.f)
        return _Value(1, w=[x + y for x, y in zip(a.w, b.w)])

    def mul(self, a, b, pos):
        if a.grade == 1 and b.grade == 1:
            raise ExprSyntaxError("product of differentials is not a 1-form", pos)
        if a.grade == 0 and b.grade == 0:
            return _Value(0, f=a.f * b.f)
        if a.grade == 1:
            a, b = b, a
        return _Value(1, w=[a.f * c for c in b.w])

    def div(self, a, b, pos):
        if b.grade != 0:
            raise ExprSyntaxError("cannot divide by a differential", pos)
        if b.f.is_zero():
            raise ExprSyntaxError("division by zero", pos)
        inv = b.f.inverse()
        if a.grade == 0:
            return _Value(0, f=a.f * inv)
        return _Value(1, w=[c * inv for c in a.w])


def _parse(text, vars, field):
    return _Parser(text, field, tuple(vars)).parse()


def parse_ratfunc(text: str, vars, field: FieldSpec = QQ) -> RatFunc:
    v = _parse(text, vars, field)
    if v.grade != 0:
        raise ExprSyntaxError("expected a function, found a differential")
    return v.f


def parse_poly(text: str, vars, field: FieldSpec = QQ) -> MultiPoly:
    f = parse_ratfunc(text, vars, field)
    if not f.is_polynomial():
        raise ExprSyntaxError(f"{text!r} is not a polynomial")
    return f.num


def parse_form(text: str, vars, field: FieldSpec = QQ) -> DiffForm:
    v = _parse(text, vars, field)
    vars = tuple(vars)
    if v.grade == 0:
        if v.f.is_zero():
            return DiffForm.zero(1, field, vars)
        raise NotGradeOne("expression has no differential")
    return DiffForm.one_form(v.w)


def parse_list(text: str):
    """Split a ``;``-separated list, dropping empty entries."""
    return [s.strip() for s in text.split(";") if s.strip()]
