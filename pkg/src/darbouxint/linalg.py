"""Fraction-free linear algebra over K[y].

Elimination is Bareiss-style Gauss-Jordan: after processing a pivot every
entry is a minor of the input, so each division is exact and all
intermediates stay polynomial.
"""

from __future__ import annotations

from .algebra import MultiPoly, poly_gcd
from .errors import DimensionMismatch


class PolyMatrix:
    """Dense matrix of MultiPoly entries sharing one ring."""

    def __init__(self, rows, cols, field, vars, row_labels=None):
        self.rows = [list(r) for r in rows]
        self.cols = cols
        self.field = field
        self.vars = tuple(vars)
        self.row_labels = row_labels
        for r in self.rows:
            if len(r) != cols:
                raise DimensionMismatch("matrix is not rectangular")
            for e in r:
                if e.field != field or e.vars != self.vars:
                    raise DimensionMismatch("entries live over different rings")

    @classmethod
    def from_values(cls, values, field, vars=()):
        """Build from nested lists of ints/Fractions/MultiPolys."""
        vars = tuple(vars)
        rows = []
        for r in values:
            rows.append([v if isinstance(v, MultiPoly) else MultiPoly.constant(field, vars, v)
                         for v in r])
        cols = len(rows[0]) if rows else 0
        return cls(rows, cols, field, vars)

    @property
    def nrows(self):
        return len(self.rows)

    def __repr__(self):
        body = "; ".join(", ".join(str(e) for e in r) for r in self.rows)
        return f"PolyMatrix([{body}])"


def _pivot_row(a, start, col):
    best = None
    for i in range(start, len(a)):
        e = a[i][col]
        if e.terms:
            key = (e.degree(), i)
            if best is None or key < best[0]:
                best = (key, i)
    return None if best is None else best[1]


def ff_rref(M: PolyMatrix):
    """Fraction-free reduced echelon form.

    Returns ``(rows, pivots, D)``: each pivot row ``i`` has ``D`` in column
    ``pivots[i]`` and zeros in every other pivot column.
    """
    a = [list(r) for r in M.rows]
    zero = MultiPoly.zero(M.field, M.vars)
    prev = MultiPoly.one(M.field, M.vars)
    pivots = []
    r = 0
    for c in range(M.cols):
        if r >= len(a):
            break
        i = _pivot_row(a, r, c)
        if i is None:
            continue
        a[r], a[i] = a[i], a[r]
        piv = a[r][c]
        for k in range(len(a)):
            if k == r:
                continue
            akc = a[k][c]
            row = a[k]
            if not akc.terms and piv == prev:
                continue
            prow = a[r]
            for j in range(M.cols):
                if j == c or (k < r and j in pivots):
                    continue
                x = row[j]
                if akc.terms and prow[j].terms:
                    v = piv * x - akc * prow[j] if x.terms else -(akc * prow[j])
                elif x.terms:
                    v = piv * x
                else:
                    continue
                row[j] = v.exact_div(prev) if v.terms else zero
            row[c] = zero
        for k, pc in enumerate(pivots):
            a[k][pc] = piv
        pivots.append(c)
        prev = piv
        r += 1
    return a, pivots, prev


def rank(M: PolyMatrix) -> int:
    return len(ff_rref(M)[1])


def _normalize_vector(v):
    nz = [e for e in v if e.terms]
    g = nz[0].monic()
    for e in nz[1:]:
        if g.is_one():
            break
        g = poly_gcd(g, e)
    if not g.is_one():
        v = [e.exact_div(g) for e in v]
    lead = next(e for e in v if e.terms)
    c = lead.leading_coefficient()
    if c != 1:
        inv = lead.field.inv(c)
        v = [e.scale(inv) for e in v]
    return v


def ff_kernel(M: PolyMatrix):
    """Polynomial spanning set of the right kernel over the fraction field.

    One vector per non-pivot column, content removed and leading entry
    made monic.  Empty iff ``M`` has full column rank.
    """
    rows, pivots, D = ff_rref(M)
    zero = MultiPoly.zero(M.field, M.vars)
    free = [j for j in range(M.cols) if j not in pivots]
    basis = []
    for f in free:
        v = [zero] * M.cols
        v[f] = D
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][f]
        basis.append(_normalize_vector(v))
    return basis


def mat_vec(M: PolyMatrix, v):
    if len(v) != M.cols:
        raise DimensionMismatch(f"vector has {len(v)} entries, matrix has {M.cols} columns")
    zero = MultiPoly.zero(M.field, M.vars)
    out = []
    for r in M.rows:
        s = zero
        for a, b in zip(r, v):
            if a.terms and b.terms:
                s = s + a * b
        out.append(s)
    return out


def verify_kernel(M: PolyMatrix, v) -> bool:
    return all(not e.terms for e in mat_vec(M, v))
