"""Differential forms, the exterior derivative, and polynomial vector fields.

A grade-r form is stored on the increasing-index basis ``dz_I`` with
``I = (i_1 < ... < i_r)``.  The wedge product is the shuffle product, which
agrees with the alternation ``A(f (x) g)`` on pairs of 1-forms and is
associative in every characteristic.
"""

from __future__ import annotations

import itertools

from .algebra import MultiPoly, RatFunc, divides, poly_exact_div
from .errors import (
    ArityTooLarge,
    ConstantInput,
    DimensionMismatch,
    FieldMismatch,
    NonPolynomialCoefficient,
)

NEG_INF = float("-inf")


def _as_ratfunc(c):
    if isinstance(c, RatFunc):
        return c
    if isinstance(c, MultiPoly):
        return RatFunc.from_poly(c)
    raise TypeError(f"expected MultiPoly or RatFunc, got {type(c).__name__}")


def _perm_sign(seq):
    """Sign of the permutation sorting ``seq`` (entries distinct)."""
    inversions = 0
    for a, b in itertools.combinations(seq, 2):
        if a > b:
            inversions += 1
    return -1 if inversions % 2 else 1


class DiffForm:
    """A differential form of fixed grade with rational-function coefficients."""

    __slots__ = ("grade", "field", "vars", "coeffs")

    def __init__(self, grade, field, vars, coeffs=None):
        self.grade = grade
        self.field = field
        self.vars = tuple(vars)
        n = len(self.vars)
        clean = {}
        for idx, c in (coeffs or {}).items():
            idx = tuple(idx)
            if len(idx) != grade or any(a >= b for a, b in zip(idx, idx[1:])):
                raise ValueError(f"index {idx} is not strictly increasing of length {grade}")
            if idx and not 0 <= idx[-1] < n:
                raise ValueError(f"index {idx} out of range")
            c = _as_ratfunc(c)
            if c.field != field or c.vars != self.vars:
                raise FieldMismatch("coefficient ring differs from the form's ring")
            if not c.is_zero():
                clean[idx] = c
        self.coeffs = clean

    @classmethod
    def _raw(cls, grade, field, vars, coeffs):
        obj = cls.__new__(cls)
        obj.grade = grade
        obj.field = field
        obj.vars = vars
        obj.coeffs = coeffs
        return obj

    # constructors -------------------------------------------------------

    @classmethod
    def zero(cls, grade, field, vars):
        return cls._raw(grade, field, tuple(vars), {})

    @classmethod
    def function(cls, f):
        """The grade-0 form of a polynomial or rational function."""
        f = _as_ratfunc(f)
        return cls(0, f.field, f.vars, {(): f})

    @classmethod
    def one_form(cls, coeffs):
        """Grade-1 form from the list of coefficients of ``dz_1 .. dz_n``."""
        coeffs = [_as_ratfunc(c) for c in coeffs]
        f = coeffs[0]
        return cls(1, f.field, f.vars, {(i,): c for i, c in enumerate(coeffs)})

    @classmethod
    def basis(cls, field, vars, idx):
        vars = tuple(vars)
        one = RatFunc.from_poly(MultiPoly.one(field, vars))
        return cls(len(idx), field, vars, {tuple(idx): one})

    # inspection ---------------------------------------------------------

    @property
    def nvars(self):
        return len(self.vars)

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def is_polynomial(self):
        return all(c.is_polynomial() for c in self.coeffs.values())

    def coefficient(self, idx):
        idx = tuple(idx)
        c = self.coeffs.get(idx)
        if c is None:
            return RatFunc.zero(self.field, self.vars)
        return c

    def poly_coefficient(self, idx):
        c = self.coefficient(idx)
        if not c.is_polynomial():
            raise NonPolynomialCoefficient(f"coefficient at {idx} is {c}")
        return c.num

    def components(self):
        """Coefficients of a 1-form as a list indexed by variable."""
        return [self.coefficient((i,)) for i in range(self.nvars)]

    def _check(self, other):
        if self.field != other.field or self.vars != other.vars:
            raise FieldMismatch("forms live over different rings")

    def __eq__(self, other):
        if not isinstance(other, DiffForm):
            return NotImplemented
        return (self.grade == other.grade and self.field == other.field
                and self.vars == other.vars and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.grade, self.vars, frozenset(self.coeffs.items())))

    # linear structure -------------------------------------------------

    def __add__(self, other):
        self._check(other)
        if self.grade != other.grade:
            raise ValueError("cannot add forms of different grades")
        out = dict(self.coeffs)
        for idx, c in other.coeffs.items():
            v = out[idx] + c if idx in out else c
            if v.is_zero():
                out.pop(idx, None)
            else:
                out[idx] = v
        return DiffForm._raw(self.grade, self.field, self.vars, out)

    def __neg__(self):
        return DiffForm._raw(self.grade, self.field, self.vars,
                             {i: -c for i, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        """Multiply every coefficient by a function (or scalar) ``c``."""
        if not isinstance(c, (MultiPoly, RatFunc)):
            c = RatFunc.constant(self.field, self.vars, c)
        c = _as_ratfunc(c)
        out = {}
        for idx, v in self.coeffs.items():
            w = v * c
            if not w.is_zero():
                out[idx] = w
        return DiffForm._raw(self.grade, self.field, self.vars, out)

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def __xor__(self, other):
        return wedge(self, other)

    def __str__(self):
        return format_form(self)

    def __repr__(self):
        return f"DiffForm({self.grade}, {format_form(self)!r})"


def format_form(w: DiffForm) -> str:
    if not w.coeffs:
        return "0"
    parts = []
    for idx in sorted(w.coeffs):
        c = w.coeffs[idx]
        basis = "∧".join(f"d{w.vars[i]}" for i in idx)
        text = str(c)
        if not basis:
            parts.append(text)
            continue
        if text == "1":
            parts.append(basis)
        elif text == "-1":
            parts.append(f"-{basis}")
        elif not c.is_polynomial() or len(c.num.terms) > 1:
            parts.append(f"({text})*{basis}")
        else:
            parts.append(f"{text}*{basis}")
    out = parts[0]
    for p in parts[1:]:
        out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return out


def wedge(f: DiffForm, g: DiffForm) -> DiffForm:
    """Shuffle wedge product; zero whenever the grades exceed ``n``."""
    f._check(g)
    r = f.grade + g.grade
    out = {}
    if r <= f.nvars:
        for I, a in f.coeffs.items():
            for J, b in g.coeffs.items():
                if set(I) & set(J):
                    continue
                sign = _perm_sign(I + J)
                K = tuple(sorted(I + J))
                term = a * b
                if sign < 0:
                    term = -term
                out[K] = out[K] + term if K in out else term
    out = {k: v for k, v in out.items() if not v.is_zero()}
    return DiffForm._raw(r, f.field, f.vars, out)


def ext_d(f: DiffForm) -> DiffForm:
    """Exterior derivative, coefficientwise with the exact quotient rule."""
    out = {}
    n = f.nvars
    for I, c in f.coeffs.items():
        for j in range(n):
            if j in I:
                continue
            dc = c.diff(j)
            if dc.is_zero():
                continue
            before = sum(1 for i in I if i < j)
            K = tuple(sorted(I + (j,)))
            if before % 2:
                dc = -dc
            out[K] = out[K] + dc if K in out else dc
    out = {k: v for k, v in out.items() if not v.is_zero()}
    return DiffForm._raw(f.grade + 1, f.field, f.vars, out)


def d(fn) -> DiffForm:
    """Exact 1-form of a polynomial or rational function."""
    return ext_d(DiffForm.function(fn))


def form_degree(f: DiffForm):
    """Largest total degree among the coefficients; ``-inf`` for the zero form."""
    if not f.coeffs:
        return NEG_INF
    deg = 0
    for idx, c in f.coeffs.items():
        if not c.is_polynomial():
            raise NonPolynomialCoefficient(f"coefficient at {idx} is not polynomial")
        deg = max(deg, c.num.degree())
    return deg


def clear_denominators(f: DiffForm):
    """Return ``(D, P)`` with ``D`` a polynomial and ``P = D*f`` polynomial."""
    from .algebra import poly_gcd

    den = MultiPoly.one(f.field, f.vars)
    for c in f.coeffs.values():
        if not c.den.is_one():
            g = poly_gcd(den, c.den)
            den = den * c.den.exact_div(g)
    out = {}
    for idx, c in f.coeffs.items():
        out[idx] = RatFunc.from_poly(c.num * den.exact_div(c.den))
    return den, DiffForm._raw(f.grade, f.field, f.vars, out)


# ---------------------------------------------------------------------------
# multitensors and the symmetrizing / alternating operators

MAX_OPERATOR_ARITY = 3


class MultiTensor:
    """An r-linear function given by its values on tuples of basis vectors."""

    __slots__ = ("arity", "field", "vars", "entries")

    def __init__(self, arity, field, vars, entries=None):
        self.arity = arity
        self.field = field
        self.vars = tuple(vars)
        clean = {}
        for idx, c in (entries or {}).items():
            c = _as_ratfunc(c)
            if not c.is_zero():
                clean[tuple(idx)] = c
        self.entries = clean

    def __eq__(self, other):
        if not isinstance(other, MultiTensor):
            return NotImplemented
        return self.arity == other.arity and self.entries == other.entries

    def __add__(self, other):
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out[k] + v if k in out else v
        return MultiTensor(self.arity, self.field, self.vars, out)

    def scale(self, c):
        return MultiTensor(self.arity, self.field, self.vars,
                           {k: v * c for k, v in self.entries.items()})

    def is_alternating(self):
        for k in self.entries:
            for sigma in itertools.permutations(range(self.arity)):
                pk = tuple(k[s] for s in sigma)
                want = self.entries[k] if _perm_sign(sigma) > 0 else -self.entries[k]
                if self.entries.get(pk, RatFunc.zero(self.field, self.vars)) != want:
                    return False
        return True

    def is_symmetric(self):
        for k in self.entries:
            for pk in itertools.permutations(k):
                if self.entries.get(pk) != self.entries[k]:
                    return False
        return True

    def __repr__(self):
        return f"MultiTensor({self.arity}, {{{', '.join(f'{k}: {v}' for k, v in sorted(self.entries.items()))}}})"


def tensor_product(f, g) -> MultiTensor:
    """(f (x) g)(v_1..v_{r+s}) = f(v_1..v_r) g(v_{r+1}..v_{r+s})."""
    f = as_tensor(f)
    g = as_tensor(g)
    out = {}
    for I, a in f.entries.items():
        for J, b in g.entries.items():
            out[I + J] = a * b
    return MultiTensor(f.arity + g.arity, f.field, f.vars, out)


def as_tensor(f) -> MultiTensor:
    """View a form as the alternating tensor it defines (shuffle convention)."""
    if isinstance(f, MultiTensor):
        return f
    out = {}
    for I, c in f.coeffs.items():
        for sigma in itertools.permutations(range(len(I))):
            out[tuple(I[s] for s in sigma)] = c if _perm_sign(sigma) > 0 else -c
    return MultiTensor(f.grade, f.field, f.vars, out)


def _operator(t: MultiTensor, signed: bool) -> MultiTensor:
    if t.arity > MAX_OPERATOR_ARITY:
        raise ArityTooLarge(f"arity {t.arity} exceeds {MAX_OPERATOR_ARITY}")
    keys = set()
    for k in t.entries:
        keys.update(itertools.permutations(k))
    zero = RatFunc.zero(t.field, t.vars)
    out = {}
    for k in keys:
        total = zero
        for sigma in itertools.permutations(range(t.arity)):
            v = t.entries.get(tuple(k[s] for s in sigma))
            if v is None:
                continue
            total = total - v if signed and _perm_sign(sigma) < 0 else total + v
        out[k] = total
    return MultiTensor(t.arity, t.field, t.vars, out)


def alt_operator(t: MultiTensor) -> MultiTensor:
    return _operator(t, signed=True)


def sym_operator(t: MultiTensor) -> MultiTensor:
    return _operator(t, signed=False)


# ---------------------------------------------------------------------------
# vector fields


class VectorField:
    """X = sum_i X(z_i) d/dz_i, acting on functions as a derivation."""

    __slots__ = ("components",)

    def __init__(self, components):
        comps = [_as_ratfunc(c) for c in components]
        if not comps:
            raise DimensionMismatch("a vector field needs at least one component")
        for c in comps[1:]:
            c.num._check(comps[0].num)
        self.components = tuple(comps)

    @property
    def field(self):
        return self.components[0].field

    @property
    def vars(self):
        return self.components[0].vars

    def is_polynomial(self):
        return all(c.is_polynomial() for c in self.components)

    def __call__(self, F):
        return vf_apply(self, F)

    def __repr__(self):
        return "VectorField(" + " + ".join(
            f"({c})*d/d{v}" for c, v in zip(self.components, self.vars)) + ")"


def vf_apply(X: VectorField, F) -> RatFunc:
    if isinstance(F, MultiPoly):
        F = RatFunc.from_poly(F)
    if len(X.components) != len(F.vars):
        raise DimensionMismatch(f"field has {len(X.components)} components, function has {len(F.vars)} variables")
    if X.vars != F.vars or X.field != F.field:
        raise FieldMismatch("vector field and function live over different rings")
    total = RatFunc.zero(F.field, F.vars)
    for i, Xi in enumerate(X.components):
        total = total + Xi * F.diff(i)
    return total


def vf_invariant(X: VectorField, F: MultiPoly) -> bool:
    """F divides X(F)."""
    if F.is_constant():
        raise ConstantInput("invariance needs a nonconstant polynomial")
    if not X.is_polynomial():
        raise NonPolynomialCoefficient("vector field must be polynomial")
    XF = vf_apply(X, F)
    if XF.is_zero():
        return True
    return divides(F, XF.num)


def pair(w: DiffForm, X: VectorField) -> RatFunc:
    """omega(X) = sum_i a_i X_i, from dz_i(d/dz_j) = delta_ij."""
    if w.grade != 1:
        raise ValueError("pairing is defined for 1-forms")
    if len(X.components) != w.nvars:
        raise DimensionMismatch("form and vector field dimensions differ")
    total = RatFunc.zero(w.field, w.vars)
    for i, Xi in enumerate(X.components):
        total = total + w.coefficient((i,)) * Xi
    return total


def divide_form(w: DiffForm, F: MultiPoly) -> DiffForm:
    """Exact coefficientwise quotient of a polynomial form; ``NotDivisible`` otherwise."""
    out = {}
    for idx, c in w.coeffs.items():
        if not c.is_polynomial():
            raise NonPolynomialCoefficient("division needs polynomial coefficients")
        out[idx] = RatFunc.from_poly(poly_exact_div(c.num, F))
    return DiffForm._raw(w.grade, w.field, w.vars, out)

