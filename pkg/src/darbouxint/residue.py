"""Univariate Laurent expansions at 0 and residues of logarithmic differentials."""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import FieldSpec, MultiPoly, RatFunc
from .errors import BadArguments


@dataclass(frozen=True)
class LaurentSeries:
    """``sum_{k=valuation}^{truncation} coeffs[k - valuation] * x^k + O(x^(truncation+1))``."""

    field: FieldSpec
    valuation: int
    coeffs: tuple
    truncation: int

    def coefficient(self, k: int):
        if k > self.truncation:
            raise BadArguments(f"x^{k} lies beyond the truncation order {self.truncation}")
        i = k - self.valuation
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.field.zero

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def __mul__(self, other):
        f = self.field
        v = self.valuation + other.valuation
        trunc = min(self.truncation + other.valuation, other.truncation + self.valuation)
        out = [f.zero] * max(0, trunc - v + 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                k = i + j
                if k >= len(out):
                    break
                out[k] = f(out[k] + a * b)
        return LaurentSeries(f, v, tuple(out), trunc)

    def __str__(self):
        terms = [f"{c}*x^{self.valuation + i}" for i, c in enumerate(self.coeffs) if c != 0]
        return " + ".join(terms + [f"O(x^{self.truncation + 1})"])


def _univariate(a: MultiPoly):
    if a.nvars != 1:
        raise BadArguments("expected a univariate polynomial")
    if not a.terms:
        return []
    out = [a.field.zero] * (a.degree() + 1)
    for (k,), c in a.terms.items():
        out[k] = c
    return out


def _split_x(coeffs):
    """(order at 0, remaining coefficients) for a nonzero coefficient list."""
    k = 0
    while coeffs[k] == 0:
        k += 1
    return k, coeffs[k:]


def order_at_zero(g: MultiPoly) -> int:
    c = _univariate(g)
    if not c:
        raise BadArguments("the zero polynomial has infinite order")
    return _split_x(c)[0]


def laurent_of(f: RatFunc, order: int) -> LaurentSeries:
    """Expansion of ``f`` at 0 through ``x^order``."""
    if isinstance(f, MultiPoly):
        f = RatFunc.from_poly(f)
    field = f.field
    num = _univariate(f.num)
    if not num:
        return LaurentSeries(field, order + 1, (), order)
    den = _univariate(f.den)
    a, num = _split_x(num)
    b, den = _split_x(den)
    v = a - b
    count = order - v + 1
    if count <= 0:
        return LaurentSeries(field, v, (), order)
    inv0 = field.inv(den[0])
    s = []
    for k in range(count):
        acc = num[k] if k < len(num) else field.zero
        for j in range(1, min(k, len(den) - 1) + 1):
            acc = acc - den[j] * s[k - j]
        s.append(field(acc * inv0))
    return LaurentSeries(field, v, tuple(s), order)


def residue(f: RatFunc):
    """Coefficient of x^-1 in the expansion of ``f`` at 0."""
    return laurent_of(f, -1).coefficient(-1)


def log_residue(alpha, g: MultiPoly):
    """Res(alpha * dg/g, 0), read from an expansion that reaches x^-1 exactly."""
    if not g.terms:
        raise BadArguments("g must be nonzero")
    if isinstance(alpha, MultiPoly):
        alpha = RatFunc.from_poly(alpha)
    h = alpha * RatFunc(g.diff(0), g)
    if h.is_zero():
        return g.field.zero
    return residue(h)


def x_power(field: FieldSpec, k: int, var="x") -> RatFunc:
    """x^k as a rational function, negative k allowed."""
    one = MultiPoly.one(field, (var,))
    xk = MultiPoly.monomial(field, (var,), (abs(k),))
    return RatFunc(xk, one) if k >= 0 else RatFunc(one, xk)


def residue_vanishing_table(field: FieldSpec, alphas, gs):
    """Evaluate Res(alpha dg/g, 0) on a grid of alpha in K(x^p) and g(0) != 0.

    Rows are ``(alpha, g, residue, vanishes)``; this reports, it does not assert.
    """
    rows = []
    for alpha in alphas:
        for g in gs:
            if g.constant_term() == 0:
                raise BadArguments(f"g(0) must be nonzero, got {g}")
            r = log_residue(alpha, g)
            rows.append((alpha, g, r, r == 0))
    return rows
