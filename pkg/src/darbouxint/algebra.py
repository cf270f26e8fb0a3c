"""Exact coefficient fields and multivariate polynomial / rational-function arithmetic.

Coefficients are plain Python values: :class:`fractions.Fraction` over the
rationals and ``int`` residues in ``[0, p-1]`` over a prime field.  A
polynomial is a sparse mapping from exponent tuples to nonzero coefficients.
Monomials are compared in graded lexicographic order with the declared
variable order (first variable largest).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import comb, gcd as igcd, lcm

from .errors import (
    BadArguments,
    BadIndex,
    BothZero,
    ConstantInput,
    DimensionMismatch,
    DivisionByZero,
    FieldMismatch,
    NotDivisible,
    ZeroInversion,
)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The coefficient field: the rationals (characteristic 0) or F_p."""

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if p != 0 and not is_prime(p):
            raise BadArguments(f"characteristic must be 0 or a prime, got {p}")

    @property
    def kind(self) -> str:
        return "rationals" if self.characteristic == 0 else "prime_field"

    @property
    def zero(self):
        return Fraction(0) if self.characteristic == 0 else 0

    @property
    def one(self):
        return Fraction(1) if self.characteristic == 0 else 1

    def __call__(self, x):
        """Coerce an int, Fraction or field element to its canonical form."""
        p = self.characteristic
        if p == 0:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise ZeroInversion(f"denominator {x.denominator} vanishes mod {p}")
            return x.numerator * pow(x.denominator, -1, p) % p
        return int(x) % p

    def inv(self, x):
        if x == 0:
            raise ZeroInversion("0 has no inverse")
        if self.characteristic == 0:
            return 1 / Fraction(x)
        return pow(x, -1, self.characteristic)

    def elements(self):
        """All elements of a prime field, in increasing residue order."""
        if self.characteristic == 0:
            raise BadArguments("the rationals are not enumerable")
        return range(self.characteristic)

    def __str__(self):
        return "Q" if self.characteristic == 0 else f"F_{self.characteristic}"


QQ = FieldSpec(0)


def GF(p: int) -> FieldSpec:
    if p < 2:
        raise BadArguments(f"prime field needs p >= 2, got {p}")
    return FieldSpec(p)


def field_inverse(x, field: FieldSpec):
    """Multiplicative inverse of ``x`` in ``field``; ``ZeroInversion`` for 0."""
    return field.inv(field(x))


def grlex_key(exps):
    return (sum(exps), exps)


class MultiPoly:
    """Sparse multivariate polynomial over a :class:`FieldSpec`.

    Values are immutable; every arithmetic operation returns a new object.
    """

    __slots__ = ("field", "vars", "terms", "_hash")

    def __init__(self, field: FieldSpec, vars, terms=None):
        self.field = field
        self.vars = tuple(vars)
        if terms is None:
            terms = {}
        clean = {}
        n = len(self.vars)
        for e, c in terms.items():
            e = tuple(e)
            if len(e) != n:
                raise BadArguments(f"exponent {e} does not match {n} variables")
            c = field(c)
            if c != 0:
                clean[e] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, field, vars, terms):
        # terms already canonical and free of zeros
        obj = cls.__new__(cls)
        obj.field = field
        obj.vars = vars
        obj.terms = terms
        obj._hash = None
        return obj

    # construction -------------------------------------------------------

    @classmethod
    def zero(cls, field, vars):
        return cls._raw(field, tuple(vars), {})

    @classmethod
    def constant(cls, field, vars, c):
        vars = tuple(vars)
        return cls(field, vars, {(0,) * len(vars): c})

    @classmethod
    def one(cls, field, vars):
        return cls.constant(field, vars, 1)

    @classmethod
    def var(cls, field, vars, which):
        vars = tuple(vars)
        i = vars.index(which) if isinstance(which, str) else which
        e = [0] * len(vars)
        e[i] = 1
        return cls._raw(field, vars, {tuple(e): field.one})

    @classmethod
    def monomial(cls, field, vars, exps, c=1):
        return cls(field, vars, {tuple(exps): c})

    def gens(self):
        return [MultiPoly.var(self.field, self.vars, i) for i in range(self.nvars)]

    @property
    def nvars(self):
        return len(self.vars)

    def _like(self, terms):
        return MultiPoly._raw(self.field, self.vars, terms)

    def _check(self, other):
        if self.field != other.field or self.vars != other.vars:
            raise FieldMismatch(
                f"{self.field}[{','.join(self.vars)}] vs {other.field}[{','.join(other.vars)}]"
            )

    def _lift(self, other):
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.constant(self.field, self.vars, other)
        return NotImplemented

    # predicates ---------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def is_one(self):
        if len(self.terms) != 1:
            return False
        e, c = next(iter(self.terms.items()))
        return c == 1 and not any(e)

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, self.field.zero)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(self.field, self.vars, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.field == other.field and self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.vars, frozenset(self.terms.items())))
        return self._hash

    # degree data --------------------------------------------------------

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, i):
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def variables_used(self):
        used = set()
        for e in self.terms:
            used.update(i for i, k in enumerate(e) if k)
        return sorted(used)

    def sorted_terms(self):
        """Terms in decreasing graded-lex order."""
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def leading_monomial(self):
        if not self.terms:
            raise BadArguments("zero polynomial has no leading monomial")
        return max(self.terms, key=grlex_key)

    def leading_coefficient(self):
        if not self.terms:
            return self.field.zero
        return self.terms[self.leading_monomial()]

    def monic(self):
        if not self.terms:
            return self
        c = self.leading_coefficient()
        if c == 1:
            return self
        return self.scale(self.field.inv(c))

    # arithmetic ---------------------------------------------------------

    def __neg__(self):
        f = self.field
        return self._like({e: f(-c) for e, c in self.terms.items()})

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if not other.terms:
            return self
        if not self.terms:
            return other
        f = self.field
        p = f.characteristic
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if p:
                v %= p
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return self._like(out)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c):
        f = self.field
        c = f(c)
        if c == 0:
            return self._like({})
        if c == 1:
            return self
        p = f.characteristic
        if p:
            return self._like({e: v * c % p for e, v in self.terms.items()})
        return self._like({e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return self._like({})
        p = self.field.characteristic
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        if p:
            out = {e: c % p for e, c in out.items() if c % p}
        else:
            out = {e: c for e, c in out.items() if c}
        return self._like(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise BadArguments("exponent must be a non-negative int")
        result = MultiPoly.one(self.field, self.vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def exact_div(self, other):
        return poly_exact_div(self, other)

    def __floordiv__(self, other):
        return poly_exact_div(self, self._lift(other))

    def diff(self, i):
        """Formal partial derivative in the ``i``-th variable (0-based)."""
        if not 0 <= i < self.nvars:
            raise BadIndex(f"variable index {i} out of range for {self.nvars} variables")
        f = self.field
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k == 0:
                continue
            v = f(c * k)
            if v:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = v
        return self._like(out)

    def __call__(self, *point):
        return poly_eval(self, point)

    def substitute(self, images, target_vars=None):
        """Replace variable ``i`` by ``images[i]`` (polynomials over ``target_vars``)."""
        if len(images) != self.nvars:
            raise DimensionMismatch(f"expected {self.nvars} images, got {len(images)}")
        if target_vars is None:
            target_vars = images[0].vars if images else self.vars
        result = MultiPoly.zero(self.field, target_vars)
        cache = {}
        for e, c in self.terms.items():
            term = MultiPoly.constant(self.field, target_vars, c)
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    if key not in cache:
                        cache[key] = images[i] ** k
                    term = term * cache[key]
            result = result + term
        return result

    def with_vars(self, vars):
        """Same coefficients, relabelled variables (same count)."""
        if len(vars) != self.nvars:
            raise BadArguments("variable count mismatch")
        return MultiPoly._raw(self.field, tuple(vars), dict(self.terms))

    # display ------------------------------------------------------------

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"MultiPoly({self.field}, {self.vars}, {format_poly(self)!r})"


def _format_scalar(c, field):
    if field.characteristic == 0:
        return str(c)
    return str(int(c))


def format_poly(a: MultiPoly) -> str:
    """Render in the parser's grammar (``*`` between factors, ``^`` for powers)."""
    if not a.terms:
        return "0"
    pieces = []
    for e, c in a.sorted_terms():
        factors = []
        for name, k in zip(a.vars, e):
            if k == 1:
                factors.append(name)
            elif k > 1:
                factors.append(f"{name}^{k}")
        neg = a.field.characteristic == 0 and c < 0
        mag = -c if neg else c
        if factors:
            body = "*".join(factors)
            if mag != 1:
                body = f"{_format_scalar(mag, a.field)}*{body}"
        else:
            body = _format_scalar(mag, a.field)
        pieces.append(("-" if neg else "+", body))
    sign, body = pieces[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


# ---------------------------------------------------------------------------
# module-level operations


def poly_mul(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    a._check(b)
    return a * b


def poly_diff(a: MultiPoly, i: int) -> MultiPoly:
    return a.diff(i)


def poly_eval(a: MultiPoly, point):
    if len(point) != a.nvars:
        raise DimensionMismatch(f"point has {len(point)} coordinates, expected {a.nvars}")
    f = a.field
    pt = []
    for x in point:
        if isinstance(x, float):
            raise FieldMismatch("floating point values are not field elements")
        pt.append(f(x))
    total = f.zero
    p = f.characteristic
    for e, c in a.terms.items():
        v = c
        for x, k in zip(pt, e):
            if k:
                v = v * (pow(x, k, p) if p else x ** k)
        total = total + v
    return f(total)


def poly_exact_div(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Exact quotient ``q`` with ``a = q*b``; raises ``NotDivisible`` otherwise."""
    a._check(b)
    if not b.terms:
        raise DivisionByZero("division by the zero polynomial")
    if not a.terms:
        return a
    f = a.field
    p = f.characteristic
    lm_b = b.leading_monomial()
    inv_lc = f.inv(b.terms[lm_b])
    if len(b.terms) == 1:
        out = {}
        for e, c in a.terms.items():
            d = tuple(x - y for x, y in zip(e, lm_b))
            if any(k < 0 for k in d):
                raise NotDivisible(f"{b} does not divide {a}")
            out[d] = f(c * inv_lc)
        return a._like(out)
    rem = dict(a.terms)
    quot = {}
    b_items = list(b.terms.items())
    while rem:
        lm = max(rem, key=grlex_key)
        d = tuple(x - y for x, y in zip(lm, lm_b))
        if any(k < 0 for k in d):
            raise NotDivisible(f"{b} does not divide {a}")
        q = rem[lm] * inv_lc
        if p:
            q %= p
        quot[d] = q
        for e, c in b_items:
            m = tuple(x + y for x, y in zip(e, d))
            v = rem.get(m, 0) - q * c
            if p:
                v %= p
            if v:
                rem[m] = v
            else:
                rem.pop(m, None)
    return a._like(quot)


def divides(b: MultiPoly, a: MultiPoly) -> bool:
    try:
        poly_exact_div(a, b)
    except NotDivisible:
        return False
    return True


# -- gcd ---------------------------------------------------------------------


def _to_univariate(a: MultiPoly, k: int):
    """Coefficient list in variable ``k``; coefficients are free of ``k``."""
    if not a.terms:
        return []
    deg = a.degree_in(k)
    buckets = [dict() for _ in range(deg + 1)]
    for e, c in a.terms.items():
        ne = list(e)
        ne[k] = 0
        buckets[e[k]][tuple(ne)] = c
    return [a._like(t) for t in buckets]


def _from_univariate(coeffs, k, like: MultiPoly):
    out = {}
    for j, c in enumerate(coeffs):
        for e, v in c.terms.items():
            ne = list(e)
            ne[k] = j
            out[tuple(ne)] = v
    return like._like(out)


def _trim(u):
    while u and not u[-1].terms:
        u.pop()
    return u


def _content(coeffs):
    g = None
    for c in coeffs:
        if not c.terms:
            continue
        g = c.monic() if g is None else _gcd(g, c)
        if g.is_constant():
            return g
    return g


def _is_const_list(u):
    return all(c.is_constant() for c in u)


def _univ_field_gcd(u, v):
    """Euclid over the base field for coefficient lists of constants."""
    f = u[0].field
    a = [c.constant_term() for c in u]
    b = [c.constant_term() for c in v]

    def rem(x, y):
        x = list(x)
        inv = f.inv(y[-1])
        while len(x) >= len(y) and x:
            q = f(x[-1] * inv)
            shift = len(x) - len(y)
            for i, yc in enumerate(y):
                x[shift + i] = f(x[shift + i] - q * yc)
            while x and x[-1] == 0:
                x.pop()
        return x

    if f.characteristic == 0:
        a = _int_primitive_prs(a, b)
    else:
        while b:
            a, b = b, rem(a, b)
    like = u[0]
    return [MultiPoly.constant(f, like.vars, c) for c in a]


def _int_primitive(x):
    den = reduce(lcm, (Fraction(c).denominator for c in x), 1)
    ints = [int(Fraction(c) * den) for c in x]
    g = reduce(igcd, ints, 0)
    return [i // g for i in ints]


def _int_primitive_prs(a, b):
    """Univariate gcd over Q via integer pseudo-remainders (no coefficient blow-up)."""
    a, b = _int_primitive(a), _int_primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        x = list(a)
        lc = b[-1]
        while len(x) >= len(b) and x:
            lx = x[-1]
            shift = len(x) - len(b)
            x = [c * lc for c in x]
            for i, bc in enumerate(b):
                x[shift + i] -= lx * bc
            while x and x[-1] == 0:
                x.pop()
        a, b = b, (_int_primitive(x) if x else [])
    return [Fraction(c) for c in a]


def _prim(u):
    c = _content(u)
    if c is None or c.is_one():
        out = u
    else:
        out = [x.exact_div(c) for x in u]
    # fix the unit: leading coefficient's graded-lex leading coefficient becomes 1
    lc = out[-1].leading_coefficient()
    if lc != 1:
        inv = out[-1].field.inv(lc)
        out = [x.scale(inv) for x in out]
    return out


def _pseudo_rem(u, v):
    u = list(u)
    lc = v[-1]
    dv = len(v) - 1
    while len(u) - 1 >= dv and u:
        lu = u[-1]
        shift = len(u) - 1 - dv
        u = [x * lc for x in u]
        for i, vc in enumerate(v):
            u[shift + i] = u[shift + i] - lu * vc
        _trim(u)
    return u


def _gcd(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    one = MultiPoly.one(a.field, a.vars)
    if a.is_constant() or b.is_constant():
        return one
    used = set(a.variables_used()) | set(b.variables_used())
    k = max(used)
    ua = _to_univariate(a, k)
    ub = _to_univariate(b, k)
    ca = _content(ua)
    cb = _content(ub)
    c = _gcd(ca, cb)
    pa = [x.exact_div(ca) for x in ua]
    pb = [x.exact_div(cb) for x in ub]
    if len(pa) < len(pb):
        pa, pb = pb, pa
    if len(pb) == 1:
        return c
    if _is_const_list(pa) and _is_const_list(pb):
        g = _univ_field_gcd(pa, pb)
    else:
        while len(pb) > 1:
            r = _pseudo_rem(pa, pb)
            if not r:
                break
            pa, pb = pb, _prim(r)
        g = pb if len(pb) > 1 else [one]
    g = _prim(_trim(list(g)))
    if len(g) == 1:
        return c
    return c * _from_univariate(g, k, a)


def poly_gcd(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Monic greatest common divisor (graded-lex leading coefficient 1)."""
    a._check(b)
    if not a.terms and not b.terms:
        raise BothZero("gcd(0, 0) is undefined")
    if not a.terms:
        return b.monic()
    if not b.terms:
        return a.monic()
    return _gcd(a, b).monic()


# -- irreducibility ------------------------------------------------------------


def _up_trim(u):
    while u and u[-1] == 0:
        u.pop()
    return u


def _up_mulmod(a, b, m, p):
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    return _up_mod([c % p for c in prod], m, p)


def _up_mod(a, m, p):
    a = _up_trim(list(a))
    inv = pow(m[-1], -1, p)
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        q = a[-1] * inv % p
        shift = len(a) - 1 - dm
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - q * c) % p
        _up_trim(a)
    return a


def _up_gcd(a, b, p):
    a, b = _up_trim(list(a)), _up_trim(list(b))
    while b:
        a, b = b, _up_mod(a, b, p)
    return a


def _up_powmod(base, e, m, p):
    result = [1]
    while e:
        if e & 1:
            result = _up_mulmod(result, base, m, p)
        e >>= 1
        if e:
            base = _up_mulmod(base, base, m, p)
    return result


def _prime_factors(n):
    out, k = [], 2
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            while n % k == 0:
                n //= k
        k += 1
    if n > 1:
        out.append(n)
    return out


def _univariate_irreducible_fp(coeffs, p):
    """Rabin's test: x^(p^n) = x mod f and gcd(x^(p^(n/q)) - x, f) = 1."""
    n = len(coeffs) - 1
    if n == 1:
        return True
    x = [0, 1]

    def frob_iter(k):
        h = _up_mod(x, coeffs, p)
        for _ in range(k):
            h = _up_powmod(h, p, coeffs, p)
        return h

    for q in _prime_factors(n):
        h = frob_iter(n // q)
        diff = list(h) + [0] * max(0, 2 - len(h))
        diff[1] = (diff[1] - 1) % p
        if len(_up_gcd(coeffs, diff, p)) > 1:
            return False
    h = frob_iter(n)
    diff = list(h) + [0] * max(0, 2 - len(h))
    diff[1] = (diff[1] - 1) % p
    return not _up_trim(diff)


DEFAULT_TRIAL_BUDGET = 200_000


def monic_candidates(field, vars, max_degree, allowed_vars=None, degree_caps=None,
                     min_degree=1):
    """Yield every polynomial with graded-lex leading coefficient 1 and
    total degree in ``[min_degree, max_degree]``.

    ``allowed_vars`` restricts support to those variable indices and
    ``degree_caps`` bounds the degree in each variable.
    """
    n = len(vars)
    allowed = set(range(n)) if allowed_vars is None else set(allowed_vars)
    monos = []
    for total in range(max_degree + 1):
        for e in _compositions(total, n):
            if any(e[i] for i in range(n) if i not in allowed):
                continue
            if degree_caps is not None and any(e[i] > degree_caps[i] for i in range(n)):
                continue
            monos.append(e)
    monos.sort(key=grlex_key)
    elems = list(field.elements())
    for li, lead in enumerate(monos):
        if sum(lead) < min_degree:
            continue
        lower = monos[:li]
        for coeffs in itertools.product(elems, repeat=len(lower)):
            terms = {lead: 1}
            for e, c in zip(lower, coeffs):
                if c:
                    terms[e] = c
            yield MultiPoly._raw(field, tuple(vars), terms)


def _compositions(total, n):
    if n == 0:
        if total == 0:
            yield ()
        return
    if n == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, n - 1):
            yield (first,) + rest


def count_monic_candidates(p, n_allowed, max_degree, degree_caps=None):
    """Number of candidates :func:`monic_candidates` would yield (upper bound with caps)."""
    m = comb(n_allowed + max_degree, n_allowed)
    return sum(p ** k for k in range(1, m)) if m > 1 else 0


def _rational_root_candidates(coeffs):
    # coeffs are Fractions, ascending; clear denominators
    den = 1
    for c in coeffs:
        den = den * c.denominator // igcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    a0, an = ints[0], ints[-1]
    if a0 == 0:
        return [Fraction(0)]
    if abs(a0) > 10 ** 6 or abs(an) > 10 ** 6:
        return None
    nums = [d for d in range(1, abs(a0) + 1) if a0 % d == 0]
    dens = [d for d in range(1, abs(an) + 1) if an % d == 0]
    roots = set()
    for u in nums:
        for v in dens:
            roots.add(Fraction(u, v))
            roots.add(Fraction(-u, v))
    return sorted(roots)


def is_irreducible(a: MultiPoly, budget: int = DEFAULT_TRIAL_BUDGET):
    """``True``, ``False`` or ``None`` (unknown) per field and shape.

    Over F_p: exact for univariate input (Rabin), and for multivariate input
    by exhaustive trial division while the candidate count fits ``budget``.
    Over Q only cheap tests are made; inconclusive cases give ``None``.
    """
    if a.is_constant():
        raise ConstantInput("irreducibility of a constant is undefined")
    if a.degree() == 1:
        return True
    used = a.variables_used()
    # a monomial factor or nontrivial content in any variable means reducible
    for i in used:
        if all(e[i] > 0 for e in a.terms):
            return False
    if len(used) > 1:
        for k in used:
            u = _to_univariate(a, k)
            c = _content(u)
            if c is not None and not c.is_constant():
                return False
    p = a.field.characteristic
    if p and len(used) == 1:
        k = used[0]
        coeffs = [0] * (a.degree() + 1)
        for e, c in a.terms.items():
            coeffs[e[k]] = c
        return _univariate_irreducible_fp(coeffs, p)
    if p:
        deg = a.degree()
        caps = [a.degree_in(i) for i in range(a.nvars)]
        n_allowed = len(used)
        if count_monic_candidates(p, n_allowed, deg // 2) > budget:
            return None
        for cand in monic_candidates(a.field, a.vars, deg // 2, used, caps):
            if divides(cand, a):
                return False
        return True
    # rationals
    if len(used) == 1:
        k = used[0]
        deg = a.degree()
        coeffs = [Fraction(0)] * (deg + 1)
        for e, c in a.terms.items():
            coeffs[e[k]] = c
        roots = _rational_root_candidates(coeffs)
        if roots is None:
            return None
        for r in roots:
            if sum(c * r ** j for j, c in enumerate(coeffs)) == 0:
                return False
        if deg <= 3:
            return True
    return None


# ---------------------------------------------------------------------------
# rational functions


class RatFunc:
    """Normalized fraction ``num/den``: coprime, ``den`` graded-lex monic."""

    __slots__ = ("num", "den")

    def __init__(self, num: MultiPoly, den: MultiPoly | None = None, *, normalized=False):
        if den is None:
            den = MultiPoly.one(num.field, num.vars)
        num._check(den)
        if not den.terms:
            raise DivisionByZero("zero denominator")
        if not normalized:
            num, den = _normalize(num, den)
        self.num = num
        self.den = den

    @classmethod
    def from_poly(cls, a: MultiPoly):
        return cls(a, MultiPoly.one(a.field, a.vars), normalized=True)

    @classmethod
    def zero(cls, field, vars):
        return cls.from_poly(MultiPoly.zero(field, vars))

    @classmethod
    def constant(cls, field, vars, c):
        return cls.from_poly(MultiPoly.constant(field, vars, c))

    @property
    def field(self):
        return self.num.field

    @property
    def vars(self):
        return self.num.vars

    def is_zero(self):
        return not self.num.terms

    def __bool__(self):
        return bool(self.num.terms)

    def is_polynomial(self):
        return self.den.is_one()

    def is_constant(self):
        return self.den.is_one() and self.num.is_constant()

    def _lift(self, other):
        if isinstance(other, RatFunc):
            self.num._check(other.num)
            return other
        if isinstance(other, MultiPoly):
            return RatFunc.from_poly(self.num._lift(other))
        if isinstance(other, (int, Fraction)):
            return RatFunc.constant(self.field, self.vars, other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, MultiPoly)):
            other = self._lift(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __neg__(self):
        return RatFunc(-self.num, self.den, normalized=True)

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if not other.num.terms:
            return self
        if not self.num.terms:
            return other
        if self.den.is_one() and other.den.is_one():
            return RatFunc(self.num + other.num, self.den, normalized=True)
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if not self.num.terms or not other.num.terms:
            return RatFunc.zero(self.field, self.vars)
        if self.den.is_one() and other.den.is_one():
            return RatFunc(self.num * other.num, self.den, normalized=True)
        # cross-cancel before multiplying
        g1 = _gcd(self.num, other.den)
        g2 = _gcd(other.num, self.den)
        n = self.num.exact_div(g1) * other.num.exact_div(g2)
        d = self.den.exact_div(g2) * other.den.exact_div(g1)
        return RatFunc(n, d)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num.terms:
            raise DivisionByZero("division by the zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc(self.num ** k, self.den ** k, normalized=True)

    def diff(self, i):
        """Quotient rule: (N' D - N D') / D^2."""
        if self.den.is_one():
            return RatFunc(self.num.diff(i), self.den, normalized=True)
        n = self.num.diff(i) * self.den - self.num * self.den.diff(i)
        return RatFunc(n, self.den * self.den)

    def substitute(self, images, target_vars=None):
        return RatFunc(self.num.substitute(images, target_vars),
                       self.den.substitute(images, target_vars))

    def __str__(self):
        if self.den.is_one():
            return format_poly(self.num)
        n, d = format_poly(self.num), format_poly(self.den)
        if len(self.num.terms) > 1:
            n = f"({n})"
        if len(self.den.terms) > 1 or "*" in d or "^" in d:
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self):
        return f"RatFunc({self})"


def _normalize(num: MultiPoly, den: MultiPoly):
    if not num.terms:
        return num, MultiPoly.one(num.field, num.vars)
    if den.is_constant():
        c = den.leading_coefficient()
        inv = num.field.inv(c)
        return num.scale(inv), MultiPoly.one(num.field, num.vars)
    g = _gcd(num, den)
    if not g.is_constant():
        num = num.exact_div(g)
        den = den.exact_div(g)
    c = den.leading_coefficient()
    if c != 1:
        inv = num.field.inv(c)
        num, den = num.scale(inv), den.scale(inv)
    return num, den


def ratfunc_arith(a: RatFunc, b: RatFunc, op: str) -> RatFunc:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b.is_zero():
            raise DivisionByZero("division by the zero rational function")
        return a / b
    raise BadArguments(f"unknown operation {op!r}")


def poly_ring(field: FieldSpec, names):
    """Convenience: the generators of ``field[names]`` as MultiPoly values."""
    if isinstance(names, str):
        names = [s.strip() for s in names.replace(",", " ").split()]
    vars = tuple(names)
    return [MultiPoly.var(field, vars, i) for i in range(len(vars))]
