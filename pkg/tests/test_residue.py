import random
from fractions import Fraction

import pytest

from darbouxint.algebra import GF, QQ, MultiPoly, RatFunc, poly_ring
from darbouxint.errors import BadArguments
from darbouxint.residue import (
    laurent_of,
    log_residue,
    order_at_zero,
    residue,
    residue_vanishing_table,
    x_power,
)

from conftest import FIELDS


def test_laurent_examples():
    F2 = GF(2)
    x, = poly_ring(F2, "x")
    s = laurent_of(RatFunc(MultiPoly.one(F2, ("x",)), 1 + x), 3)
    assert [s.coefficient(k) for k in range(4)] == [1, 1, 1, 1]
    q, = poly_ring(QQ, "x")
    s = laurent_of(x_power(QQ, -1), 1)
    assert s.valuation == -1 and s.coeffs == (1, 0, 0)
    s = laurent_of(RatFunc(q ** 2, 1 - q), 4)
    assert [s.coefficient(k) for k in range(5)] == [0, 0, 1, 1, 1]
    with pytest.raises(BadArguments):
        s.coefficient(5)


def test_residue_examples():
    for field in FIELDS:
        x, = poly_ring(field, "x")
        assert log_residue(MultiPoly.one(field, ("x",)), x) == 1
    F3 = GF(3)
    x, = poly_ring(F3, "x")
    assert log_residue(MultiPoly.one(F3, ("x",)), x ** 2 * (1 + x)) == 2


@pytest.mark.parametrize("p", [2, 3, 5])
def test_residue_of_x_minus_p_is_one(p):
    F = GF(p)
    x, = poly_ring(F, "x")
    assert log_residue(x_power(F, -p), 1 + x) == 1


def test_residue_table_reports():
    F2 = GF(2)
    x, = poly_ring(F2, "x")
    alphas = [x_power(F2, 0), x_power(F2, 2), x_power(F2, -2)]
    rows = residue_vanishing_table(F2, alphas, [1 + x, 1 + x + x ** 2])
    assert [r[2] for r in rows] == [0, 0, 0, 0, 1, 1]
    with pytest.raises(BadArguments):
        residue_vanishing_table(F2, alphas, [x])


def naive_residue(num, den, field):
    """Residue at 0 of num/den by solving den * s = num * x^k term by term (independent oracle)."""
    k = 0
    while den[k] == 0:
        k += 1
    # f = num / (x^k * u), with u(0) != 0; the residue is the x^(k-1) coefficient of num/u
    u = den[k:]
    target = k - 1
    if target < 0:
        return field.zero
    s = []
    for i in range(target + 1):
        acc = Fraction(num[i]) if i < len(num) else Fraction(0)
        for j in range(1, min(i, len(u) - 1) + 1):
            acc -= u[j] * s[i - j]
        v = acc / u[0] if field.characteristic == 0 else acc * pow(int(u[0]), -1, field.characteristic)
        s.append(field(v) if field.characteristic == 0 else int(v) % field.characteristic)
    return s[target]


@pytest.mark.parametrize("field", FIELDS, ids=str)
def test_log_residue_is_order(field):
    rng = random.Random(17)
    x, = poly_ring(field, "x")
    for _ in range(100):
        k = rng.randint(0, 6)
        u = MultiPoly(field, ("x",), {(i,): rng.randint(-4, 4) for i in range(rng.randint(1, 4))})
        if u.constant_term() == 0:
            u = u + 1
        g = x ** k * u
        assert order_at_zero(g) == k
        assert log_residue(MultiPoly.one(field, ("x",)), g) == field(k)


@pytest.mark.parametrize("field", FIELDS, ids=str)
def test_residue_matches_naive_oracle(field):
    rng = random.Random(23)
    for _ in range(60):
        num = [rng.randint(-3, 3) for _ in range(rng.randint(1, 4))]
        k = rng.randint(0, 3)
        u = [rng.randint(-3, 3) for _ in range(rng.randint(1, 3))]
        if field(u[0]) == 0:
            u[0] = 1
        den = [0] * k + u
        N = MultiPoly(field, ("x",), {(i,): c for i, c in enumerate(num)})
        D = MultiPoly(field, ("x",), {(i,): c for i, c in enumerate(den)})
        if N.is_zero():
            continue
        den_f = [field(c) for c in den]
        num_f = [field(c) for c in num]
        assert residue(RatFunc(N, D)) == naive_residue(num_f, den_f, field)


def _random_univariate(rng, field, max_deg=4):
    while True:
        a = MultiPoly(field, ("x",), {(i,): rng.randint(-4, 4) for i in range(rng.randint(1, max_deg + 1))})
        if not a.is_zero():
            return a


@pytest.mark.parametrize("field", FIELDS, ids=str)
def test_laurent_round_trip(field):
    rng = random.Random(29)
    x, = poly_ring(field, "x")
    for _ in range(100):
        f = RatFunc(_random_univariate(rng, field) * x ** rng.randint(0, 2),
                    _random_univariate(rng, field) * x ** rng.randint(0, 2))
        order = 6
        s = laurent_of(f, order)
        t = laurent_of(f.inverse(), order)
        prod = s * t
        assert prod.valuation == 0
        for k in range(prod.truncation + 1):
            assert prod.coefficient(k) == (1 if k == 0 else 0)


@pytest.mark.parametrize("field", FIELDS, ids=str)
def test_residue_of_derivative_vanishes(field):
    rng = random.Random(37)
    for _ in range(100):
        # Laurent polynomial h = sum c_k x^k, k in [-5, 5]
        h = RatFunc.zero(field, ("x",))
        for k in range(-5, 6):
            c = rng.randint(-3, 3)
            if c:
                h = h + x_power(field, k) * RatFunc.constant(field, ("x",), c)
        dh = h.diff(0)
        if not dh.is_zero():
            assert residue(dh) == 0
