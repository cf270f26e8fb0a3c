import random

import pytest

from darbouxint.algebra import GF, QQ, MultiPoly

FIELDS = [QQ, GF(2), GF(3), GF(5)]

_acceptance_lines = []


def random_poly(rng, field, vars, max_deg=2, max_terms=4, coeff_range=3):
    n = len(vars)
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        total = rng.randint(0, max_deg)
        e = [0] * n
        for _ in range(total):
            e[rng.randrange(n)] += 1
        terms[tuple(e)] = rng.randint(-coeff_range, coeff_range)
    return MultiPoly(field, vars, terms)


def random_nonzero_poly(rng, field, vars, **kw):
    while True:
        a = random_poly(rng, field, vars, **kw)
        if a.terms:
            return a


@pytest.fixture
def rng():
    return random.Random(20261019)


@pytest.fixture
def criterion(request):
    """Record one pass/fail line per acceptance criterion."""
    name = request.node.name

    def record(label):
        request.node.criterion_label = label

    yield record
    label = getattr(request.node, "criterion_label", name)
    rep = getattr(request.node, "rep_call", None)
    passed = rep is not None and rep.passed
    _acceptance_lines.append(f"[{'PASS' if passed else 'FAIL'}] {label}")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)


def random_irreducibles(rng, field, vars, k):
    """k distinct monic irreducible polynomials of degree 1 or 2 with dF != 0."""
    from darbouxint.algebra import is_irreducible
    from darbouxint.exterior import d

    out = []
    while len(out) < k:
        deg = 1 if rng.random() < 0.6 else 2
        F = random_poly(rng, field, vars, max_deg=deg, max_terms=4)
        if F.degree() < 1 or d(F).is_zero():
            continue
        F = F.monic()
        if F in out or is_irreducible(F) is not True:
            continue
        out.append(F)
    return out


def log_injectivity_instance(rng, field, vars=("x", "y")):
    """Random (lambdas, Fs) with lambda_i in K[z^p] of z-degree <= p, not all zero."""
    from darbouxint.dconst import DConstant, surrogate_vars

    k = rng.randint(1, 4)
    if len(vars) == 1 and field.characteristic == 2:
        k = min(k, 3)  # x, x + 1, x^2 + x + 1 are all there is up to degree 2
    Fs = random_irreducibles(rng, field, vars, k)
    yvars = surrogate_vars(vars)
    while True:
        lams = []
        for _ in range(k):
            if field.characteristic == 0:
                lam = MultiPoly.constant(field, yvars, rng.randint(-3, 3))
            else:
                lam = random_poly(rng, field, yvars, max_deg=1, max_terms=3)
            lams.append(DConstant(lam, vars))
        if any(not lam.is_zero() for lam in lams):
            return lams, Fs


def cleared_logarithmic_form(lams, Fs):
    """sum lambda_i (prod_{j != i} F_j) dF_i with lambda_i mapped into K[z]."""
    from darbouxint.exterior import DiffForm, d

    F0 = Fs[0]
    total = DiffForm.zero(1, F0.field, F0.vars)
    for i, (lam, F) in enumerate(zip(lams, Fs)):
        e = lam.embed()
        assert e.is_polynomial()
        mult = e.num
        for j, G in enumerate(Fs):
            if j != i:
                mult = mult * G
        total = total + d(F).scale(mult)
    return total
