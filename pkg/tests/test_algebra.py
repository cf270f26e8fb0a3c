import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from darbouxint.algebra import (
    GF,
    QQ,
    MultiPoly,
    RatFunc,
    field_inverse,
    is_irreducible,
    poly_diff,
    poly_eval,
    poly_exact_div,
    poly_gcd,
    poly_mul,
    poly_ring,
    ratfunc_arith,
)
from darbouxint.errors import (
    BadIndex,
    BothZero,
    ConstantInput,
    DivisionByZero,
    FieldMismatch,
    NotDivisible,
    ZeroInversion,
)

from conftest import FIELDS, random_nonzero_poly, random_poly


def test_field_inverse_examples():
    assert field_inverse(3, GF(7)) == 5
    for f in FIELDS:
        assert field_inverse(1, f) == 1
    with pytest.raises(ZeroInversion):
        field_inverse(0, GF(5))


def test_field_inverse_all_residues():
    for p in (2, 3, 5, 7, 11):
        F = GF(p)
        for x in range(1, p):
            assert x * field_inverse(x, F) % p == 1


def test_non_prime_characteristic_rejected():
    with pytest.raises(ValueError):
        GF(4)


def test_rationals_lowest_terms():
    x, = poly_ring(QQ, "x")
    a = x.scale(Fraction(6, 4))
    assert a.leading_coefficient() == Fraction(3, 2)


def test_poly_mul_examples():
    x, y = poly_ring(QQ, "x y")
    assert poly_mul(x + 1, x - 1) == x ** 2 - 1
    X, Y = poly_ring(GF(2), "x y")
    assert poly_mul(X + Y, X + Y) == X ** 2 + Y ** 2
    assert poly_mul(x + y, MultiPoly.zero(QQ, ("x", "y"))).is_zero()


def test_field_mismatch():
    x, = poly_ring(QQ, "x")
    X, = poly_ring(GF(2), "x")
    with pytest.raises(FieldMismatch):
        poly_mul(x, X)
    z, = poly_ring(QQ, "z")
    with pytest.raises(FieldMismatch):
        x + z


def test_exact_div_examples():
    x, y = poly_ring(QQ, "x y")
    assert poly_exact_div(x ** 2 - y ** 2, x - y) == x + y
    X, = poly_ring(GF(2), "x")
    q = poly_exact_div(X ** 2 + 1, X + 1)
    # oracle: multiply back
    assert q * (X + 1) == X ** 2 + 1
    assert q == X + 1
    with pytest.raises(NotDivisible):
        poly_exact_div(x ** 2 + 1, x)
    with pytest.raises(DivisionByZero):
        poly_exact_div(x, MultiPoly.zero(QQ, ("x", "y")))


def test_gcd_examples():
    x, y = poly_ring(QQ, "x y")
    assert poly_gcd(x ** 2 - y ** 2, x - y) == x - y
    assert poly_gcd(x, y) == 1
    f = 2 * x ** 2 + 4 * y
    assert poly_gcd(f, MultiPoly.zero(QQ, x.vars)) == f.monic()
    with pytest.raises(BothZero):
        poly_gcd(x - x, y - y)


@pytest.mark.parametrize("field", FIELDS, ids=str)
def test_gcd_of_products(field):
    rng = random.Random(7)
    vars = ("x", "y", "z")
    for _ in range(40):
        a = random_nonzero_poly(rng, field, vars)
        b = random_nonzero_poly(rng, field, vars)
        c = random_nonzero_poly(rng, field, vars)
        g = poly_gcd(a * c, b * c)
        poly_exact_div(a * c, g)
        poly_exact_div(b * c, g)
        poly_exact_div(g, c.monic())  # c divides the gcd
        assert g.leading_coefficient() == 1


def test_diff_examples():
    x, y = poly_ring(QQ, "x y")
    assert poly_diff(x * y, 0) == y
    for p in (2, 3, 5):
        X, = poly_ring(GF(p), "x")
        assert poly_diff(X ** p, 0).is_zero()
    assert poly_diff(MultiPoly.constant(QQ, ("x",), 7), 0).is_zero()
    with pytest.raises(BadIndex):
        poly_diff(x, 2)


def test_eval_examples():
    x, y = poly_ring(QQ, "x y")
    assert poly_eval(x ** 2 + y, (2, 3)) == 7
    a = 3 * x * y + x + 5
    assert poly_eval(a, (0, 0)) == a.constant_term() == 5
    X, = poly_ring(GF(2), "x")
    assert poly_eval(X + 1, (1,)) == 0


def _irreducible_oracle(coeffs, p):
    """Trial division of a univariate F_p polynomial by every monic of degree <= n/2."""
    F = GF(p)
    x, = poly_ring(F, "x")
    f = sum((x ** k * c for k, c in enumerate(coeffs)), MultiPoly.zero(F, ("x",)))
    n = len(coeffs) - 1
    import itertools

    for deg in range(1, n // 2 + 1):
        for low in itertools.product(range(p), repeat=deg):
            g = x ** deg + sum((x ** k * c for k, c in enumerate(low)), MultiPoly.zero(F, ("x",)))
            try:
                poly_exact_div(f, g)
                return False
            except NotDivisible:
                pass
    return True


def test_irreducible_examples():
    X, = poly_ring(GF(2), "x")
    assert _irreducible_oracle([1, 1, 1], 2) is True
    assert is_irreducible(X ** 2 + X + 1) is True
    assert _irreducible_oracle([1, 0, 1], 2) is False
    assert is_irreducible(X ** 2 + 1) is False
    for f in FIELDS:
        x, = poly_ring(f, "x")
        assert is_irreducible(x) is True
    with pytest.raises(ConstantInput):
        is_irreducible(MultiPoly.constant(QQ, ("x",), 3))


@pytest.mark.parametrize("p", [2, 3])
def test_univariate_irreducible_matches_trial_division(p):
    import itertools

    F = GF(p)
    x, = poly_ring(F, "x")
    for deg in range(2, 6 if p == 2 else 5):
        for low in itertools.product(range(p), repeat=deg):
            f = x ** deg + sum((x ** k * c for k, c in enumerate(low)), MultiPoly.zero(F, ("x",)))
            assert is_irreducible(f) == _irreducible_oracle(list(low) + [1], p), f


def test_irreducible_multivariate_fp():
    X, Y = poly_ring(GF(2), "x y")
    assert is_irreducible(X * Y + 1) is True
    assert is_irreducible(X ** 2 + Y ** 2) is False
    assert is_irreducible(X * Y) is False
    A, B = poly_ring(GF(3), "x y")
    assert is_irreducible(A ** 2 - B ** 2) is False
    assert is_irreducible(A ** 2 + B ** 2 + 1) is True


def test_irreducible_rationals_advisory():
    x, y = poly_ring(QQ, "x y")
    assert is_irreducible(x ** 2 + 1) is True
    assert is_irreducible(x ** 2 - 1) is False
    assert is_irreducible(x ** 2 + y ** 2 + 1) is None
    assert is_irreducible(x * y + x) is False


def test_ratfunc_examples():
    x, y = poly_ring(QQ, "x y")
    r = RatFunc(x ** 2 - 1, x - 1)
    assert r.num == x + 1 and r.den.is_one()
    a = RatFunc(x, y + 1)
    z = ratfunc_arith(a, a, "sub")
    assert z.is_zero() and z.den.is_one()
    one = ratfunc_arith(RatFunc(x.one(QQ, x.vars), x), RatFunc(x), "mul")
    assert one == 1
    with pytest.raises(DivisionByZero):
        ratfunc_arith(a, RatFunc.zero(QQ, x.vars), "div")


def _is_normalized(r: RatFunc):
    return (not r.den.is_zero() and r.den.leading_coefficient() == 1
            and poly_gcd(r.num, r.den).is_one())


@pytest.mark.parametrize("field", FIELDS, ids=str)
def test_ratfunc_normalization(field):
    rng = random.Random(11)
    vars = ("x", "y")
    for _ in range(60):
        a = RatFunc(random_poly(rng, field, vars), random_nonzero_poly(rng, field, vars))
        b = RatFunc(random_poly(rng, field, vars), random_nonzero_poly(rng, field, vars))
        assert _is_normalized(a)
        assert RatFunc(a.num, a.den) == a  # idempotent
        for op in ("add", "sub", "mul"):
            assert _is_normalized(ratfunc_arith(a, b, op))
        if not b.is_zero():
            q = ratfunc_arith(a, b, "div")
            assert _is_normalized(q)
            assert q * b == a


@pytest.mark.parametrize("field", FIELDS, ids=str)
def test_ring_axioms(field):
    rng = random.Random(3)
    vars = ("x", "y")
    for _ in range(200):
        a, b, c = (random_poly(rng, field, vars) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert a - a == 0


@pytest.mark.parametrize("field", FIELDS, ids=str)
def test_exact_div_round_trip(field):
    rng = random.Random(5)
    vars = ("x", "y")
    for _ in range(200):
        a = random_poly(rng, field, vars)
        b = random_nonzero_poly(rng, field, vars)
        assert poly_exact_div(a * b, b) == a


@pytest.mark.parametrize("p", [2, 3, 5])
def test_freshmans_dream(p):
    rng = random.Random(p)
    F = GF(p)
    vars = ("x", "y")
    for _ in range(50):
        a = random_poly(rng, F, vars)
        b = random_poly(rng, F, vars)
        assert (a + b) ** p == a ** p + b ** p


@pytest.mark.parametrize("field", FIELDS, ids=str)
def test_leibniz(field):
    rng = random.Random(9)
    vars = ("x", "y")
    for _ in range(200):
        a = random_poly(rng, field, vars)
        b = random_poly(rng, field, vars)
        i = rng.randrange(2)
        assert (a * b).diff(i) == a * b.diff(i) + b * a.diff(i)


@pytest.mark.parametrize("field", FIELDS, ids=str)
def test_eval_is_homomorphism(field):
    rng = random.Random(13)
    vars = ("x", "y")
    for _ in range(50):
        a = random_poly(rng, field, vars)
        b = random_poly(rng, field, vars)
        pt = (rng.randint(-4, 4), rng.randint(-4, 4))
        assert poly_eval(a * b, pt) == field(poly_eval(a, pt) * poly_eval(b, pt))


coeff = st.integers(-5, 5)
exps = st.tuples(st.integers(0, 3), st.integers(0, 3))
polys = st.dictionaries(exps, coeff, max_size=5).map(lambda t: MultiPoly(QQ, ("x", "y"), t))


@settings(max_examples=60, deadline=None)
@given(polys, polys)
def test_gcd_divides_both(a, b):
    if a.is_zero() and b.is_zero():
        return
    g = poly_gcd(a, b)
    poly_exact_div(a, g)
    poly_exact_div(b, g)
