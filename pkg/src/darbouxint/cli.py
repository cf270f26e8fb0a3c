"""Command-line front end.

Exit codes: 0 verified success, 2 well-formed but negative result,
1 input error.  ``--output machine`` prints a JSON report carrying
``schema_version``; ``--recheck`` re-parses every emitted certificate from
that serialized form and re-verifies it through the library.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import darboux
from .algebra import FieldSpec, MultiPoly, RatFunc
from .darboux import Certificate, LogForm
from .dconst import DConstant, dim_forms_exact, is_dconstant, nk_paper, p_decompose, surrogate_vars
from .errors import (
    DarbouxError,
    DegenerateRatio,
    IdenticalPolarSupport,
    NoConstantDependence,
    NoDependence,
    NotInvariant,
    NotTangent,
)
from .exterior import DiffForm, format_form
from .parser import (
    format_field,
    parse_field,
    parse_form,
    parse_list,
    parse_poly,
    parse_ratfunc,
    parse_vars,
)
from .residue import log_residue, order_at_zero
from .search import SearchBudget, search_invariants

SCHEMA_VERSION = 1

NEGATIVE = (NoDependence, NoConstantDependence, IdenticalPolarSupport, DegenerateRatio,
            NotInvariant, NotTangent)


# ---------------------------------------------------------------------------
# serialization of certificates


def _form_record(w: DiffForm):
    return {",".join(w.vars[i] for i in idx): str(c) for idx, c in sorted(w.coeffs.items())}


def _form_from_record(rec, grade, field, vars):
    coeffs = {}
    for key, text in rec.items():
        idx = tuple(vars.index(v) for v in key.split(",")) if key else ()
        coeffs[idx] = parse_ratfunc(text, vars, field)
    return DiffForm(grade, field, vars, coeffs)


def _logform_record(eta: LogForm):
    return [[str(lam.value), str(F)] for lam, F in eta.terms]


def _logform_from_record(rec, field, vars):
    yv = surrogate_vars(vars)
    return LogForm([(DConstant(parse_ratfunc(lam, yv, field), vars), parse_poly(F, vars, field))
                    for lam, F in rec])


def certificate_to_record(cert: Certificate) -> dict:
    w = cert.witnesses
    out = {"claim": cert.claim, "verified": cert.verified, "notes": _jsonable(cert.notes)}
    wit = {"omega": str(w["omega"])}
    if cert.claim == "invariance":
        wit["F"] = str(w["F"])
        wit["quotient"] = None if w["quotient"] is None else _form_record(w["quotient"])
    elif cert.claim == "dependence":
        wit["polys"] = [str(F) for F in w["polys"]]
        wit["cofactors"] = [_form_record(t) for t in w["cofactors"]]
        wit["vector"] = [str(lam.value) for lam in w["vector"]]
        wit["vector_embedded"] = [str(lam) for lam in w["vector"]]
    elif cert.claim == "tangency":
        wit["eta"] = _logform_record(w["eta"])
        wit["residual"] = _form_record(w["residual"])
    elif cert.claim == "first_integral":
        wit["kind"] = w["kind"]
        if w["kind"] == "multiplicative":
            wit["factors"] = [[str(F), e] for F, e in w["factors"]]
            wit["G"] = str(w["G"])
        else:
            wit["f"] = str(w["f"])
            if "eta1" in w:
                wit["eta1"] = _logform_record(w["eta1"])
                wit["eta2"] = _logform_record(w["eta2"])
    out["witnesses"] = wit
    return out


def certificate_from_record(rec: dict, field: FieldSpec, vars) -> Certificate:
    vars = tuple(vars)
    w = rec["witnesses"]
    wit = {"omega": parse_form(w["omega"], vars, field)}
    claim = rec["claim"]
    if claim == "invariance":
        wit["F"] = parse_poly(w["F"], vars, field)
        q = w["quotient"]
        wit["quotient"] = None if q is None else _form_from_record(q, 2, field, vars)
    elif claim == "dependence":
        yv = surrogate_vars(vars)
        wit["polys"] = [parse_poly(F, vars, field) for F in w["polys"]]
        wit["cofactors"] = [_form_from_record(t, 2, field, vars) for t in w["cofactors"]]
        wit["vector"] = [DConstant(parse_ratfunc(v, yv, field), vars) for v in w["vector"]]
    elif claim == "tangency":
        wit["eta"] = _logform_from_record(w["eta"], field, vars)
    elif claim == "first_integral":
        wit["kind"] = w["kind"]
        if w["kind"] == "multiplicative":
            wit["factors"] = [(parse_poly(F, vars, field), int(e)) for F, e in w["factors"]]
        else:
            wit["f"] = parse_ratfunc(w["f"], vars, field)
            if "eta1" in w:
                wit["eta1"] = _logform_from_record(w["eta1"], field, vars)
                wit["eta2"] = _logform_from_record(w["eta2"], field, vars)
    return Certificate(claim, wit, bool(rec["verified"]), rec.get("notes", {}))


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    return str(x)


def recheck_report(report: dict) -> dict:
    """Re-verify every serialized certificate in a report document."""
    field = parse_field(report["inputs"]["field"])
    vars = parse_vars(report["inputs"]["vars"])
    passed = failed = 0
    problems = []
    for i, rec in enumerate(report.get("certificates", [])):
        cert = certificate_from_record(rec, field, vars)
        ok = darboux.recheck(cert)
        if ok == rec["verified"]:
            passed += 1
        else:
            failed += 1
            problems.append(f"certificate {i} ({rec['claim']}): claimed {rec['verified']}, recheck {ok}")
    return {"passed": passed, "failed": failed, "problems": problems}


# ---------------------------------------------------------------------------
# argument handling


def _common(p):
    p.add_argument("--field", default="q", help="q or fp:<prime>")
    p.add_argument("--vars", default="x,y", help="comma-separated variable names")
    p.add_argument("--form", help="polynomial 1-form, e.g. 'y*dx - x*dy'")
    p.add_argument("--poly", help="polynomial expression")
    p.add_argument("--invariants", help="';'-separated polynomial list, e.g. 'x;y;x+y'")
    p.add_argument("--max-degree", type=int, default=1)
    p.add_argument("--max-candidates", type=int, default=100_000)
    p.add_argument("--strategy", choices=["paper", "exhaustive"], default="exhaustive")
    p.add_argument("--output", choices=["text", "machine"], default="text")
    p.add_argument("--recheck", action="store_true",
                   help="re-verify every emitted certificate from its serialized form")
    p.add_argument("--problem", help="JSON problem file; its entries override the flags")


class _ArgParser(argparse.ArgumentParser):
    """Usage errors are input errors: exit 1, keeping 2 for negative results."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser():
    ap = _ArgParser(prog="darbouxint",
                                 description="Darboux integration of polynomial 1-forms over Q and F_p.")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in ("check-invariant", "cofactor", "dependence", "logform", "tangency",
                 "first-integral", "multiplicative-integral", "search", "parse"):
        p = sub.add_parser(name)
        _common(p)
        if name == "tangency":
            p.add_argument("--coeffs", required=False,
                           help="';'-separated differential constants, one per invariant")
    for name in ("nk", "dim-exact"):
        p = sub.add_parser(name)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--d", type=int, required=True)
        p.add_argument("--r", type=int, required=True)
        p.add_argument("--char", type=int, default=None)
        p.add_argument("--field", default=None)
        p.add_argument("--output", choices=["text", "machine"], default="text")
    p = sub.add_parser("residue")
    p.add_argument("--field", default="q")
    p.add_argument("--var", default="x")
    p.add_argument("--alpha", default="1", help="rational function of the variable")
    p.add_argument("--poly", required=True, help="g in Res(alpha*dg/g, 0)")
    p.add_argument("--output", choices=["text", "machine"], default="text")
    return ap


def _load_problem(args):
    if not getattr(args, "problem", None):
        return
    with open(args.problem) as fh:
        prob = json.load(fh)
    if "field" in prob:
        args.field = prob["field"]
    if "vars" in prob:
        args.vars = ",".join(prob["vars"]) if isinstance(prob["vars"], list) else prob["vars"]
    if "form" in prob:
        args.form = prob["form"]
    if "poly" in prob:
        args.poly = prob["poly"]
    if "invariants" in prob:
        inv = prob["invariants"]
        args.invariants = ";".join(inv) if isinstance(inv, list) else inv
    opts = prob.get("options", {})
    if "max_degree" in opts:
        args.max_degree = int(opts["max_degree"])
    if "strategy" in opts:
        args.strategy = opts["strategy"]


def _need(args, name):
    val = getattr(args, name)
    if val is None:
        raise _InputError(f"--{name.replace('_', '-')} is required for {args.command}")
    return val


class _InputError(Exception):
    pass


# ---------------------------------------------------------------------------
# commands


def _base_report(args, field, vars):
    inputs = {"field": format_field(field), "vars": ",".join(vars)}
    for key in ("form", "poly", "invariants"):
        if getattr(args, key, None) is not None:
            inputs[key] = getattr(args, key)
    return {"schema_version": SCHEMA_VERSION, "command": args.command, "inputs": inputs,
            "status": None, "certificates": [], "diagnostics": []}


def _thresholds_record(omega):
    t = darboux.thresholds(omega)
    if t["disagree"]:
        t["flag"] = "nk_paper and dim_forms_exact differ"
    return t


def _cmd_pipeline(args):
    field = parse_field(args.field)
    vars = parse_vars(args.vars)
    report = _base_report(args, field, vars)
    args.partial_report = report
    cmd = args.command

    if cmd == "parse":
        if args.form is not None:
            report["result"] = format_form(parse_form(args.form, vars, field))
        else:
            report["result"] = str(parse_poly(_need(args, "poly"), vars, field))
        report["status"] = "ok"
        return 0, report

    omega = parse_form(_need(args, "form"), vars, field)
    if not omega.is_polynomial():
        raise _InputError("the 1-form must have polynomial coefficients")

    if cmd == "search":
        budget = SearchBudget(args.max_degree, field, args.max_candidates)
        res = search_invariants(omega, budget)
        report["invariants"] = [str(F) for F in res.invariants]
        report["skipped_zero_differential"] = res.skipped_zero_differential
        report["skipped_not_irreducible"] = res.skipped_reducible
        report["examined"] = res.examined
        for F in res.invariants:
            report["certificates"].append(certificate_to_record(darboux.form_invariant(omega, F)))
        report["status"] = "ok" if res.invariants else "none_found"
        return (0 if res.invariants else 2), report

    if cmd in ("check-invariant", "cofactor"):
        F = parse_poly(_need(args, "poly"), vars, field)
        if F.is_constant():
            raise _InputError("the polynomial must be nonconstant")
        cert = darboux.form_invariant(omega, F)
        report["certificates"].append(certificate_to_record(cert))
        report["invariant"] = cert.verified
        report["irreducibility"] = cert.notes["irreducibility"]
        if cmd == "cofactor" and cert.verified:
            report["cofactor"] = format_form(cert.witnesses["quotient"])
        report["status"] = "invariant" if cert.verified else "not_invariant"
        return (0 if cert.verified else 2), report

    Fs = [parse_poly(s, vars, field) for s in parse_list(_need(args, "invariants"))]
    if not Fs:
        raise _InputError("--invariants is empty")
    if any(F.is_constant() for F in Fs):
        raise _InputError("invariants must be nonconstant")
    report["thresholds"] = _thresholds_record(omega)

    if cmd == "tangency":
        texts = parse_list(_need(args, "coeffs"))
        if len(texts) != len(Fs):
            raise _InputError("--coeffs and --invariants differ in length")
        lams = [_dconstant_from_text(t, vars, field) for t in texts]
        eta = darboux.build_logform(lams, Fs)
        cert = darboux.tangency_check(omega, eta)
        report["logform"] = str(eta)
        report["certificates"].append(certificate_to_record(cert))
        report["status"] = "tangent" if cert.verified else "not_tangent"
        return (0 if cert.verified else 2), report

    # every remaining command needs verified invariants
    for F in Fs:
        cert = darboux.form_invariant(omega, F)
        report["certificates"].append(certificate_to_record(cert))
        if not cert.verified:
            report["status"] = "not_invariant"
            report["diagnostics"].append(f"{F} is not invariant")
            return 2, report
    cofs = [darboux.cofactor(omega, F) for F in Fs]
    report["cofactors"] = {str(c.source): format_form(c.form) for c in cofs}

    if cmd in ("dependence", "logform"):
        vecs, certs = darboux._dependence_with_certs(cofs)
        report["dependence"] = [[str(l) for l in v] for v in vecs]
        for c in certs:
            report["certificates"].append(certificate_to_record(c))
        if not vecs:
            report["status"] = "no_dependence"
            return 2, report
        if cmd == "logform":
            report["logforms"] = []
            for v in vecs:
                eta = darboux.build_logform(v, Fs)
                tc = darboux.tangency_check(omega, eta)
                report["logforms"].append(str(eta))
                report["certificates"].append(certificate_to_record(tc))
        report["status"] = "dependent"
        return 0, report

    if cmd == "multiplicative-integral":
        fi = darboux.multiplicative_integral(omega, Fs)
        report["first_integral"] = {"kind": "multiplicative", "G": str(fi.as_ratfunc()),
                                    "exponents": [[str(F), e] for F, e in fi.factors]}
        report["certificates"].append(certificate_to_record(fi.certificate))
        report["status"] = "first_integral"
        return 0, report

    if cmd == "first-integral":
        vecs, certs = darboux._dependence_with_certs(cofs)
        report["dependence"] = [[str(l) for l in v] for v in vecs]
        for c in certs:
            report["certificates"].append(certificate_to_record(c))
        fi = darboux.rational_first_integral(omega, Fs, args.strategy)
        report["logforms"] = {"eta1": str(fi.eta1), "eta2": str(fi.eta2)}
        for eta in (fi.eta1, fi.eta2):
            report["certificates"].append(certificate_to_record(darboux.tangency_check(omega, eta)))
        report["first_integral"] = {"kind": "rational", "f": str(fi.rational)}
        report["certificates"].append(certificate_to_record(fi.certificate))
        report["diagnostics"].extend(fi.diagnostics)
        report["status"] = "first_integral"
        return 0, report

    raise _InputError(f"unknown command {cmd}")


def _dconstant_from_text(text, vars, field):
    f = parse_ratfunc(text, vars, field)
    if not is_dconstant(f):
        raise _InputError(f"{text!r} is not a differential constant")
    yv = surrogate_vars(vars)

    def to_surrogate(a: MultiPoly):
        parts = p_decompose(a).parts
        if field.characteristic == 0:
            return MultiPoly.constant(field, yv, a.constant_term())
        if set(parts) - {(0,) * len(vars)}:
            raise _InputError(f"{text!r} is not a polynomial in p-th powers")
        return parts.get((0,) * len(vars), MultiPoly.zero(field, yv))

    return DConstant(RatFunc(to_surrogate(f.num), to_surrogate(f.den)), vars)


def _cmd_numbers(args):
    if args.field is not None:
        field = parse_field(args.field)
    else:
        field = FieldSpec(args.char or 0)
    fn = nk_paper if args.command == "nk" else dim_forms_exact
    value = fn(args.n, args.d, args.r, field)
    report = {"schema_version": SCHEMA_VERSION, "command": args.command,
              "inputs": {"n": args.n, "d": args.d, "r": args.r, "field": format_field(field)},
              "result": value, "status": "ok", "certificates": [], "diagnostics": []}
    other = dim_forms_exact if fn is nk_paper else nk_paper
    alt = other(args.n, args.d, args.r, field)
    if alt != value:
        report["diagnostics"].append(
            f"nk_paper={nk_paper(args.n, args.d, args.r, field)} and "
            f"dim_forms_exact={dim_forms_exact(args.n, args.d, args.r, field)} disagree")
    return 0, report


def _cmd_residue(args):
    field = parse_field(args.field)
    vars = (args.var,)
    alpha = parse_ratfunc(args.alpha, vars, field)
    g = parse_poly(args.poly, vars, field)
    if g.is_zero():
        raise _InputError("g must be nonzero")
    value = log_residue(alpha, g)
    report = {"schema_version": SCHEMA_VERSION, "command": "residue",
              "inputs": {"field": format_field(field), "var": args.var, "alpha": args.alpha,
                         "poly": args.poly},
              "result": str(value), "order_at_zero": order_at_zero(g),
              "alpha_is_dconstant": is_dconstant(alpha), "g0_nonzero": g.constant_term() != 0,
              "status": "ok", "certificates": [], "diagnostics": []}
    if report["alpha_is_dconstant"] and report["g0_nonzero"] and value != 0:
        report["diagnostics"].append("nonzero residue for alpha in K(x^p) with g(0) != 0")
    return 0, report


def _render_text(report) -> str:
    lines = []

    def emit(prefix, value):
        if isinstance(value, dict):
            for k, v in value.items():
                emit(f"{prefix}.{k}" if prefix else str(k), v)
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            for i, v in enumerate(value):
                emit(f"{prefix}[{i}]", v)
        else:
            lines.append(f"{prefix}: {value}")

    for key, value in report.items():
        if key == "certificates":
            for i, rec in enumerate(value):
                lines.append(f"certificate[{i}]: {rec['claim']} verified={rec['verified']}")
            continue
        emit(key, value)
    return "\n".join(lines)


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:  # usage error or --help
        return exc.code if isinstance(exc.code, int) else 1
    try:
        if args.command in ("nk", "dim-exact"):
            code, report = _cmd_numbers(args)
        elif args.command == "residue":
            code, report = _cmd_residue(args)
        else:
            _load_problem(args)
            code, report = _cmd_pipeline(args)
    except NEGATIVE as exc:
        report = getattr(args, "partial_report", None) or {
            "schema_version": SCHEMA_VERSION, "command": args.command,
            "certificates": [], "diagnostics": []}
        report["status"] = type(exc).__name__
        report["diagnostics"].append(str(exc))
        code = 2
    except (DarbouxError, _InputError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1

    if getattr(args, "recheck", False) and report.get("certificates") and "inputs" in report:
        rc = recheck_report(report)
        report["recheck"] = rc
        if rc["failed"]:
            code = 1

    if args.output == "machine":
        stdout.write(json.dumps(_jsonable(report), indent=2, sort_keys=False) + "\n")
    else:
        stdout.write(_render_text(report) + "\n")
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
