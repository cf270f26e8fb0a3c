"""The field of differential constants K(z^p) and the dimension counts built on it.

In characteristic p every polynomial splits uniquely as
``sum_b c_b(z^p) * z^b`` over reduced exponents ``b`` in ``[0, p-1]^n``.
The coefficients ``c_b`` are kept as polynomials in surrogate variables
``y_j`` standing for ``z_j^p``; the embedding back into K[z] happens only when
a logarithmic form is materialized.  In characteristic 0 the constants are
just K and every monomial is its own class.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from math import comb

from .algebra import FieldSpec, MultiPoly, RatFunc
from .errors import BadArguments, MixedGrades, NonPolynomialCoefficient
from .exterior import DiffForm, ext_d
from .linalg import PolyMatrix


def surrogate_vars(vars):
    return tuple(f"{v}_p" for v in vars)


def frobenius_images(field: FieldSpec, vars):
    """Images of the surrogate variables under ``y_j -> z_j^p``."""
    p = field.characteristic
    gens = [MultiPoly.var(field, vars, i) for i in range(len(vars))]
    if p == 0:
        return gens
    return [g ** p for g in gens]


class DConstant:
    """An element of K(z^p), stored as a rational function of the surrogates."""

    __slots__ = ("value", "zvars")

    def __init__(self, value, zvars):
        if isinstance(value, MultiPoly):
            value = RatFunc.from_poly(value)
        self.value = value
        self.zvars = tuple(zvars)
        if value.field.characteristic == 0 and not value.is_constant():
            raise BadArguments("in characteristic 0 the differential constants are scalars")

    @classmethod
    def scalar(cls, field, zvars, c):
        return cls(RatFunc.constant(field, surrogate_vars(zvars), c), zvars)

    @property
    def field(self):
        return self.value.field

    def is_zero(self):
        return self.value.is_zero()

    def embed(self) -> RatFunc:
        images = frobenius_images(self.field, self.zvars)
        return self.value.substitute(images, self.zvars)

    def __eq__(self, other):
        if not isinstance(other, DConstant):
            return NotImplemented
        return self.value == other.value and self.zvars == other.zvars

    def __hash__(self):
        return hash((self.value, self.zvars))

    def __str__(self):
        return str(self.embed())

    def __repr__(self):
        return f"DConstant({self})"


@dataclass(frozen=True)
class ReducedDecomposition:
    """``parts[b]`` is the K[y]-coefficient of the reduced monomial ``z^b``."""

    field: FieldSpec
    zvars: tuple
    parts: dict

    def recompose(self) -> MultiPoly:
        images = frobenius_images(self.field, self.zvars)
        total = MultiPoly.zero(self.field, self.zvars)
        for b, c in self.parts.items():
            zb = MultiPoly.monomial(self.field, self.zvars, b)
            total = total + c.substitute(images, self.zvars) * zb
        return total


def p_decompose(a: MultiPoly) -> ReducedDecomposition:
    field = a.field
    p = field.characteristic
    yvars = surrogate_vars(a.vars)
    zero_e = (0,) * a.nvars
    buckets = {}
    for e, c in a.terms.items():
        if p:
            b = tuple(k % p for k in e)
            q = tuple(k // p for k in e)
        else:
            b, q = e, zero_e
        buckets.setdefault(b, {})[q] = c
    parts = {b: MultiPoly(field, yvars, t) for b, t in buckets.items()}
    return ReducedDecomposition(field, a.vars, parts)


def recompose(decomp: ReducedDecomposition) -> MultiPoly:
    return decomp.recompose()


def is_dconstant(f) -> bool:
    """f lies in K(z^p) iff df = 0."""
    if isinstance(f, MultiPoly):
        f = RatFunc.from_poly(f)
    return ext_d(DiffForm.function(f)).is_zero()


def _check_args(n, d, r):
    if n < 1 or d < 0 or not 0 <= r <= n:
        raise BadArguments(f"need n >= 1, d >= 0, 0 <= r <= n (got n={n}, d={d}, r={r})")


def nk_paper(n: int, d: int, r: int, field: FieldSpec) -> int:
    """C(n, r) * C(n + m, n) with m = min(p - 1, d) in characteristic p, m = d otherwise."""
    _check_args(n, d, r)
    p = field.characteristic
    m = d if p == 0 else min(p - 1, d)
    return comb(n, r) * comb(n + m, n)


def reduced_monomials(n: int, p: int, max_degree: int):
    return [b for b in product(range(p), repeat=n) if sum(b) <= max_degree]


def dim_forms_exact(n: int, d: int, r: int, field: FieldSpec) -> int:
    """K(z^p)-dimension of the span of polynomial r-forms of degree at most d."""
    _check_args(n, d, r)
    p = field.characteristic
    if p == 0:
        return comb(n, r) * comb(n + d, n)
    return comb(n, r) * len(reduced_monomials(n, p, d))


def forms_matrix(forms, field: FieldSpec | None = None, vars=None) -> PolyMatrix:
    """Linearize forms over K(z^p): column k flattens ``p_decompose`` of form k.

    Rows are labelled ``(index tuple, reduced exponent)`` and sorted; the
    labels are kept in ``matrix.row_labels``.
    """
    forms = list(forms)
    if forms:
        field = forms[0].field
        vars = forms[0].vars
        grade = forms[0].grade
        for w in forms[1:]:
            if w.grade != grade:
                raise MixedGrades("all forms must share a grade")
            w._check(forms[0])
    if field is None or vars is None:
        raise BadArguments("an empty form list needs an explicit field and variables")
    yvars = surrogate_vars(vars)
    columns = []
    labels = set()
    for w in forms:
        col = {}
        for idx, c in w.coeffs.items():
            if not c.is_polynomial():
                raise NonPolynomialCoefficient("forms_matrix needs polynomial coefficients")
            for b, part in p_decompose(c.num).parts.items():
                col[(idx, b)] = part
                labels.add((idx, b))
        columns.append(col)
    row_labels = sorted(labels)
    zero = MultiPoly.zero(field, yvars)
    rows = [[col.get(lab, zero) for col in columns] for lab in row_labels]
    return PolyMatrix(rows, len(forms), field, yvars, row_labels=row_labels)


def monomial_forms(n: int, d: int, r: int, field: FieldSpec, vars=None):
    """Every form ``z^e dz_I`` with ``|e| <= d`` and ``|I| = r``."""
    if vars is None:
        vars = tuple(f"z{i + 1}" for i in range(n))
    out = []
    for I in combinations(range(n), r):
        for e in product(range(d + 1), repeat=n):
            if sum(e) <= d:
                out.append(DiffForm(r, field, vars, {I: MultiPoly.monomial(field, vars, e)}))
    return out
