"""Darboux integration for polynomial 1-forms.

Pipeline: invariance (F | omega ^ dF) -> cofactors -> linear dependence of
cofactors over K(z^p) -> tangent logarithmic forms -> first integrals.
Every positive answer carries a :class:`Certificate` that re-runs the exact
check from its witnesses.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field as dc_field
from functools import reduce

from .algebra import MultiPoly, RatFunc, is_irreducible
from .dconst import DConstant, dim_forms_exact, forms_matrix, nk_paper
from .errors import (
    BadArguments,
    DegenerateRatio,
    ExpandedToZero,
    IdenticalPolarSupport,
    NoConstantDependence,
    NoDependence,
    NotDivisible,
    NotInvariant,
    NotTangent,
    ZeroDifferential,
    ZeroVector,
)
from .exterior import DiffForm, d, divide_form, form_degree, wedge
from .linalg import PolyMatrix, ff_kernel, verify_kernel

log = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# data


@dataclass
class Certificate:
    """Exact witness data for one claim; ``verified`` mirrors :func:`recheck`."""

    claim: str
    witnesses: dict
    verified: bool
    notes: dict = dc_field(default_factory=dict)

    def recheck(self) -> bool:
        return recheck(self)


@dataclass
class Cofactor:
    form: DiffForm
    source: MultiPoly
    omega: DiffForm
    certificate: Certificate | None = None


@dataclass
class LogForm:
    """eta = sum lambda_i dF_i / F_i with lambda_i in K(z^p)."""

    terms: list  # (DConstant, MultiPoly)

    @property
    def polys(self):
        return [F for _, F in self.terms]

    def support(self):
        """Indices of the terms with a nonzero coefficient (the polar support)."""
        return tuple(i for i, (lam, _) in enumerate(self.terms) if not lam.is_zero())

    def support_polys(self):
        return frozenset(self.terms[i][1] for i in self.support())

    def expansion(self) -> DiffForm:
        F0 = self.terms[0][1]
        total = DiffForm.zero(1, F0.field, F0.vars)
        for lam, F in self.terms:
            if lam.is_zero():
                continue
            coef = lam.embed() / RatFunc.from_poly(F)
            total = total + d(F).scale(coef)
        return total

    def cleared(self):
        """``(D, P)``: polynomial D and polynomial 1-form ``P = D * eta``.

        D is the product of the F_i in the support and of the lambda
        denominators, so ``P = sum a_i (prod_{k != i} b_k)(prod_{j != i} F_j) dF_i``.
        """
        sup = self.support()
        F0 = self.terms[0][1]
        one = MultiPoly.one(F0.field, F0.vars)
        lams = [self.terms[i][0].embed() for i in sup]
        Fs = [self.terms[i][1] for i in sup]
        D = reduce(lambda a, b: a * b, [lam.den for lam in lams] + Fs, one)
        P = DiffForm.zero(1, F0.field, F0.vars)
        for k, (lam, F) in enumerate(zip(lams, Fs)):
            mult = lam.num
            for j, (mu, G) in enumerate(zip(lams, Fs)):
                if j != k:
                    mult = mult * mu.den * G
            P = P + d(F).scale(mult)
        return D, P

    def __str__(self):
        parts = []
        for lam, F in self.terms:
            if lam.is_zero():
                continue
            s = str(F)
            dlog = f"d{s}/{s}" if s in F.vars else f"d({s})/({s})"
            c = str(lam)
            if c == "1":
                parts.append(("+", dlog))
            elif c == "-1":
                parts.append(("-", dlog))
            elif c.lstrip("-").replace("_", "").isalnum():
                sign = "-" if c.startswith("-") else "+"
                parts.append((sign, f"{c.lstrip('-')}*{dlog}"))
            else:
                parts.append(("+", f"({c})*{dlog}"))
        if not parts:
            return "0"
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


@dataclass
class FirstIntegral:
    kind: str  # "rational" | "multiplicative"
    rational: RatFunc | None = None
    factors: list | None = None  # [(F, exponent)]
    certificate: Certificate | None = None
    eta1: LogForm | None = None
    eta2: LogForm | None = None
    diagnostics: list = dc_field(default_factory=list)

    def as_ratfunc(self) -> RatFunc:
        if self.kind == "rational":
            return self.rational
        return multiplicative_to_ratfunc(self.factors)

    def __str__(self):
        if self.kind == "rational":
            return str(self.rational)
        return "*".join(f"({F})^{e}" for F, e in self.factors)


def multiplicative_to_ratfunc(factors) -> RatFunc:
    F0 = factors[0][0]
    num = MultiPoly.one(F0.field, F0.vars)
    den = MultiPoly.one(F0.field, F0.vars)
    for F, e in factors:
        if e >= 0:
            num = num * F ** e
        else:
            den = den * F ** (-e)
    return RatFunc(num, den)


# ---------------------------------------------------------------------------
# exact checks (shared by the operations and by recheck)


def _check_invariance(omega, F, quotient):
    if quotient is None:
        return False
    if not quotient.is_polynomial():
        return False
    return quotient.scale(F) == wedge(omega, d(F))


def _dependence_residual(cofactor_forms, vector):
    total = DiffForm.zero(2, cofactor_forms[0].field, cofactor_forms[0].vars)
    for lam, theta in zip(vector, cofactor_forms):
        if not lam.is_zero():
            total = total + theta.scale(lam.embed())
    return total


def _check_dependence(omega, Fs, cofactor_forms, vector):
    if all(lam.is_zero() for lam in vector):
        return False
    for F, theta in zip(Fs, cofactor_forms):
        if not _check_invariance(omega, F, theta):
            return False
    return _dependence_residual(cofactor_forms, vector).is_zero()


def _tangency_residual(omega, eta: LogForm):
    _, P = eta.cleared()
    return wedge(omega, P)


def _check_tangency(omega, eta):
    return _tangency_residual(omega, eta).is_zero()


def _first_integral_residual(omega, f: RatFunc):
    """``(df is zero, omega ^ (den^2 df))`` with everything polynomial."""
    N, D = f.num, f.den
    cleared_df = d(N).scale(D) - d(D).scale(N)
    return cleared_df.is_zero(), wedge(omega, cleared_df)


def _check_first_integral(omega, f):
    df_zero, residual = _first_integral_residual(omega, f)
    return (not df_zero) and residual.is_zero()


def _check_multiplicative(omega, factors):
    eta = LogForm([(DConstant.scalar(F.field, F.vars, e), F) for F, e in factors])
    _, P = eta.cleared()
    if P.is_zero():
        return False
    if not wedge(omega, P).is_zero():
        return False
    return _check_first_integral(omega, multiplicative_to_ratfunc(factors))


def recheck(cert: Certificate) -> bool:
    """Re-run the exact check a certificate claims, from its witnesses only."""
    w = cert.witnesses
    claim = cert.claim
    if claim == "invariance":
        return _check_invariance(w["omega"], w["F"], w.get("quotient"))
    if claim == "dependence":
        return _check_dependence(w["omega"], w["polys"], w["cofactors"], w["vector"])
    if claim == "tangency":
        return _check_tangency(w["omega"], w["eta"])
    if claim == "first_integral":
        if w["kind"] == "multiplicative":
            return _check_multiplicative(w["omega"], w["factors"])
        ok = _check_first_integral(w["omega"], w["f"])
        if ok and "eta1" in w:
            ok = _proportional(w["eta1"], w["eta2"], w["f"])
        return ok
    raise BadArguments(f"unknown claim {claim!r}")


# ---------------------------------------------------------------------------
# operations


def _require_one_form(omega):
    if omega.grade != 1:
        raise BadArguments("omega must be a 1-form")
    if not omega.is_polynomial():
        raise BadArguments("omega must have polynomial coefficients")


def irreducibility_note(F):
    try:
        res = is_irreducible(F)
    except Exception:  # constant input is rejected elsewhere
        return "unchecked"
    return {True: "irreducible", False: "reducible", None: "unchecked"}[res]


def form_invariant(omega: DiffForm, F: MultiPoly) -> Certificate:
    """Does F divide omega ^ dF?  The quotient (the cofactor) is the witness."""
    _require_one_form(omega)
    if F.is_constant():
        raise BadArguments("invariance needs a nonconstant polynomial")
    dF = d(F)
    if dF.is_zero():
        raise ZeroDifferential(f"d({F}) = 0")
    try:
        quotient = divide_form(wedge(omega, dF), F)
    except NotDivisible:
        quotient = None
    wit = {"omega": omega, "F": F, "quotient": quotient}
    verified = _check_invariance(omega, F, quotient)
    return Certificate("invariance", wit, verified, {"irreducibility": irreducibility_note(F)})


def cofactor(omega: DiffForm, F: MultiPoly) -> Cofactor:
    cert = form_invariant(omega, F)
    if not cert.verified:
        raise NotInvariant(f"{F} does not divide omega ^ d({F})")
    return Cofactor(cert.witnesses["quotient"], F, omega, cert)


def _as_dconstants(vec, zvars):
    return [DConstant(v, zvars) for v in vec]


def cofactor_dependence(cofactors) -> list:
    """Spanning set of lambda in K(z^p)^m with sum lambda_i Theta_i = 0.

    Each returned vector comes with a verified dependence certificate in
    ``dependence_certificates``; vectors failing the direct 2-form check are
    never returned.
    """
    vecs, _ = _dependence_with_certs(cofactors)
    return vecs


def _dependence_with_certs(cofactors):
    if not cofactors:
        return [], []
    forms = [c.form for c in cofactors]
    omega = cofactors[0].omega
    zvars = omega.vars
    M = forms_matrix(forms, omega.field, omega.vars)
    vecs, certs = [], []
    for v in ff_kernel(M):
        if not verify_kernel(M, v):
            raise NotTangent("kernel vector failed matrix verification")
        lam = _as_dconstants(v, zvars)
        wit = {"omega": omega, "polys": [c.source for c in cofactors],
               "cofactors": forms, "vector": lam}
        cert = Certificate("dependence", wit, _check_dependence(omega, wit["polys"], forms, lam))
        if not cert.verified:
            raise NotTangent("dependence vector failed direct 2-form check")
        vecs.append(lam)
        certs.append(cert)
    return vecs, certs


def build_logform(lam, Fs) -> LogForm:
    if len(lam) != len(Fs):
        raise BadArguments("coefficient and polynomial lists differ in length")
    Fs = list(Fs)
    zvars = Fs[0].vars
    lam = [l if isinstance(l, DConstant) else _coerce_dconstant(l, Fs[0].field, zvars) for l in lam]
    if all(l.is_zero() for l in lam):
        raise ZeroVector("all logarithmic coefficients vanish")
    eta = LogForm(list(zip(lam, Fs)))
    _, P = eta.cleared()
    if P.is_zero():
        raise ExpandedToZero(f"nonzero coefficients gave a zero logarithmic form: {eta}")
    return eta


def _coerce_dconstant(value, field, zvars):
    if isinstance(value, (MultiPoly, RatFunc)):
        if value.vars == tuple(zvars):
            raise BadArguments("logarithmic coefficients must be given in the surrogate variables")
        return DConstant(value, zvars)
    return DConstant.scalar(field, zvars, value)


def tangency_check(omega: DiffForm, eta: LogForm) -> Certificate:
    residual = _tangency_residual(omega, eta)
    return Certificate("tangency", {"omega": omega, "eta": eta, "residual": residual},
                       residual.is_zero())


def first_integral_check(omega: DiffForm, f) -> Certificate:
    if isinstance(f, MultiPoly):
        f = RatFunc.from_poly(f)
    df_zero, residual = _first_integral_residual(omega, f)
    verified = (not df_zero) and residual.is_zero()
    notes = {"df_zero": df_zero}
    return Certificate("first_integral",
                       {"omega": omega, "kind": "rational", "f": f, "residual": residual},
                       verified, notes)


# -- thresholds -------------------------------------------------------------


def thresholds(omega: DiffForm) -> dict:
    """Invariant counts needed for a tangent logarithmic form (+1) and a rational first integral (+2)."""
    n = omega.nvars
    deg = form_degree(omega)
    dm1 = int(deg) - 1 if deg != float("-inf") else -1
    if dm1 < 0 or n < 2:
        nk = exact = 0
    else:
        nk = nk_paper(n, dm1, 2, omega.field)
        exact = dim_forms_exact(n, dm1, 2, omega.field)
    return {
        "degree": None if deg == float("-inf") else int(deg),
        "nk_paper": nk,
        "dim_forms_exact": exact,
        "tangent_form_count_paper": nk + 1,
        "tangent_form_count_exact": exact + 1,
        "first_integral_count_paper": nk + 2,
        "first_integral_count_exact": exact + 2,
        "disagree": nk != exact,
    }


# -- multiplicative first integrals -----------------------------------------


def _constant_matrix(forms, field, vars):
    """Rows (index, monomial) with coefficients in K: dependence over K itself."""
    labels = set()
    cols = []
    for w in forms:
        col = {}
        for idx, c in w.coeffs.items():
            for e, v in c.num.terms.items():
                col[(idx, e)] = v
                labels.add((idx, e))
        cols.append(col)
    row_labels = sorted(labels)
    rows = [[MultiPoly.constant(field, (), col.get(lab, 0)) for col in cols] for lab in row_labels]
    return PolyMatrix(rows, len(forms), field, (), row_labels=row_labels)


def _integer_exponents(vec, field):
    """Prime-subfield vector -> integer exponents.

    Over Q: the primitive integer multiple with positive leading entry.
    Over F_p: the scaling with representatives in [0, p-1] minimizing the
    largest exponent, ties broken lexicographically (keeps G a polynomial).
    """
    p = field.characteristic
    vals = [v.constant_term() for v in vec]
    if p == 0:
        from math import gcd, lcm

        den = reduce(lcm, (v.denominator for v in vals), 1)
        ints = [int(v * den) for v in vals]
        g = reduce(gcd, (abs(i) for i in ints if i), 0)
        ints = [i // g for i in ints]
        lead = next(i for i in ints if i)
        return [-i for i in ints] if lead < 0 else ints
    best = None
    for c in range(1, p):
        cand = [v * c % p for v in vals]
        key = (max(cand), cand)
        if best is None or key < best:
            best = key
    return best[1]


def multiplicative_integral(omega: DiffForm, Fs) -> FirstIntegral:
    """G = prod F_i^{delta_i} from a prime-subfield relation among cofactors."""
    _require_one_form(omega)
    Fs = list(Fs)
    cofs = [cofactor(omega, F) for F in Fs]
    if not _dependence_with_certs(cofs)[0]:
        raise NoDependence("cofactors are independent over the differential constants")
    forms = [c.form for c in cofs]
    M = _constant_matrix(forms, omega.field, omega.vars)
    kernel = ff_kernel(M)
    if not kernel:
        raise NoConstantDependence("no relation with coefficients in the prime subfield")
    exps = _integer_exponents(kernel[0], omega.field)
    factors = [(F, e) for F, e in zip(Fs, exps) if e != 0]
    G = multiplicative_to_ratfunc(factors)
    wit = {"omega": omega, "kind": "multiplicative", "factors": factors, "G": G}
    cert = Certificate("first_integral", wit, _check_multiplicative(omega, factors),
                       {"irreducibility": {str(F): c.certificate.notes["irreducibility"]
                                           for F, c in zip(Fs, cofs)}})
    if not cert.verified:
        raise NotTangent(f"multiplicative candidate {G} failed its certificate")
    return FirstIntegral("multiplicative", factors=factors, certificate=cert)


# -- rational first integrals ------------------------------------------------


def _ratio(eta1: LogForm, eta2: LogForm):
    e1 = eta1.expansion()
    e2 = eta2.expansion()
    for i in range(e1.nvars):
        c1 = e1.coefficient((i,))
        if not c1.is_zero():
            c2 = e2.coefficient((i,))
            if c2.is_zero():
                return None
            return c1 / c2
    return None


def _proportional(eta1, eta2, f):
    e1 = eta1.expansion()
    e2 = eta2.expansion()
    return e1 == e2.scale(f)


@dataclass
class _Candidate:
    label: str
    eta: LogForm
    subset: tuple


def _subset_order(m, strategy):
    literal = [tuple(range(m - 1)), tuple(range(1, m))]
    if strategy == "paper":
        return literal
    rest = [tuple(j for j in range(m) if j != k) for k in range(1, m - 1)]
    return literal + rest + [tuple(range(m))]


def _subset_candidates(cofs, Fs, subset):
    sub_cofs = [cofs[i] for i in subset]
    vecs, _ = _dependence_with_certs(sub_cofs)
    zvars = Fs[0].vars
    zero = DConstant.scalar(Fs[0].field, zvars, 0)
    out = []
    for v in vecs:
        full = [zero] * len(Fs)
        for i, lam in zip(subset, v):
            full[i] = lam
        out.append(build_logform(full, Fs))
    return out


def rational_first_integral(omega: DiffForm, Fs, strategy: str = "exhaustive") -> FirstIntegral:
    """Two tangent logarithmic forms with distinct polar support; their ratio f.

    The literal choice (drop the last / drop the first invariant, requiring
    the second form to involve the last invariant) is tried first; with
    ``strategy="exhaustive"`` the search continues over the other subsets
    and every kernel-basis pair in a fixed order.  The lowest-indexed
    successful pair wins.
    """
    _require_one_form(omega)
    Fs = list(Fs)
    m = len(Fs)
    if m < 2:
        raise BadArguments("need at least two invariant polynomials")
    if strategy not in ("paper", "exhaustive"):
        raise BadArguments(f"unknown strategy {strategy!r}")
    cofs = [cofactor(omega, F) for F in Fs]
    diagnostics = []
    reasons = set()

    def attempt(eta1, eta2):
        log.debug("trying pair %s | %s", eta1, eta2)
        if eta1.support_polys() == eta2.support_polys():
            reasons.add("identical")
            return None
        f = _ratio(eta1, eta2)
        if f is None or not _proportional(eta1, eta2, f):
            reasons.add("not_proportional")
            diagnostics.append(f"forms not proportional: {eta1} vs {eta2}")
            return None
        cert = first_integral_check(omega, f)
        if cert.notes["df_zero"]:
            reasons.add("degenerate")
            diagnostics.append(f"ratio {f} is a differential constant")
            return None
        if not cert.verified:
            reasons.add("not_tangent")
            return None
        cert.witnesses["eta1"] = eta1
        cert.witnesses["eta2"] = eta2
        cert.verified = recheck(cert)
        return FirstIntegral("rational", rational=f, certificate=cert,
                             eta1=eta1, eta2=eta2, diagnostics=diagnostics)

    subsets = _subset_order(m, strategy)
    per_subset = {}

    def cands(subset):
        if subset not in per_subset:
            per_subset[subset] = _subset_candidates(cofs, Fs, subset)
        return per_subset[subset]

    # literal construction
    c1, c2 = cands(subsets[0]), cands(subsets[1])
    c2_with_last = [e for e in c2 if m - 1 in e.support()]
    if not (c1 and c2) and strategy == "paper":
        raise NoDependence("a literal subset admits no tangent logarithmic form")
    if c1 and c2_with_last:
        res = attempt(c1[0], c2_with_last[0])
        if res is not None:
            return res
    elif strategy == "paper":
        raise IdenticalPolarSupport("no tangent form from the second subset involves the last invariant")

    if strategy == "exhaustive":
        pool = []
        for s in subsets:
            pool.extend(cands(s))
        if not pool:
            raise NoDependence("no subset of the invariants has dependent cofactors")
        for a, b in itertools.combinations(range(len(pool)), 2):
            res = attempt(pool[a], pool[b])
            if res is not None:
                return res

    if "not_tangent" in reasons:
        raise NotTangent("a proportional ratio failed omega ^ df = 0")
    if "degenerate" in reasons:
        raise DegenerateRatio("every ratio of tangent forms is a differential constant")
    if "not_proportional" in reasons:
        raise NotTangent("tangent forms were found but none are proportional: "
                         + "; ".join(diagnostics[:3]))
    raise IdenticalPolarSupport("all tangent forms share the same polar support")


# ---------------------------------------------------------------------------


def analyze(omega: DiffForm, Fs, strategy="exhaustive") -> dict:
    """Run every stage and collect results plus all certificates."""
    out = {"thresholds": thresholds(omega), "invariance": [], "cofactors": [],
           "dependence": [], "logforms": [], "tangency": [], "multiplicative": None,
           "rational": None, "diagnostics": []}
    good = []
    for F in Fs:
        try:
            cert = form_invariant(omega, F)
        except ZeroDifferential as exc:
            out["diagnostics"].append(f"skipped {F}: {exc}")
            continue
        out["invariance"].append(cert)
        if cert.verified:
            good.append(F)
    cofs = [cofactor(omega, F) for F in good]
    out["cofactors"] = cofs
    vecs, certs = _dependence_with_certs(cofs)
    out["dependence"] = certs
    for v in vecs:
        eta = build_logform(v, good)
        out["logforms"].append(eta)
        out["tangency"].append(tangency_check(omega, eta))
    if good:
        try:
            out["multiplicative"] = multiplicative_integral(omega, good)
        except (NoDependence, NoConstantDependence) as exc:
            out["diagnostics"].append(f"multiplicative: {type(exc).__name__}: {exc}")
    if len(good) >= 2:
        try:
            out["rational"] = rational_first_integral(omega, good, strategy)
        except (NoDependence, IdenticalPolarSupport, DegenerateRatio, NotTangent) as exc:
            out["diagnostics"].append(f"rational: {type(exc).__name__}: {exc}")
    return out


def all_certificates(report: dict):
    certs = list(report["invariance"]) + list(report["dependence"]) + list(report["tangency"])
    for key in ("multiplicative", "rational"):
        if report.get(key) is not None:
            certs.append(report[key].certificate)
    return certs

