import io
import json
import random
from pathlib import Path

import pytest

from darbouxint import cli
from darbouxint.algebra import GF, QQ, MultiPoly, RatFunc, poly_ring
from darbouxint.errors import BadArguments, ExprSyntaxError, NotGradeOne, UnknownVariable
from darbouxint.exterior import DiffForm, d, format_form
from darbouxint.parser import parse_field, parse_form, parse_poly, parse_ratfunc, parse_vars

from conftest import FIELDS, random_poly

V = ("x", "y")


def run(*argv):
    out = io.StringIO()
    code = cli.run(list(argv), stdout=out)
    return code, out.getvalue()


def run_machine(*argv):
    code, text = run(*argv, "--output", "machine")
    return code, json.loads(text)


def test_parse_examples():
    x, y = poly_ring(QQ, "x y")
    assert parse_poly("x^2 - y^2", V) == x ** 2 - y ** 2
    assert parse_poly("x + x", V, GF(2)).is_zero()
    with pytest.raises(UnknownVariable):
        parse_poly("x*z", V)
    assert parse_form("y*dx - x*dy", V) == d(x) * y - d(y) * x
    X, Y = poly_ring(GF(5), "x y")
    assert parse_form("2*y*dx + 3*x*dy", V, GF(5)) == d(X) * (2 * Y) + d(Y) * (3 * X)
    with pytest.raises(ExprSyntaxError):
        parse_form("dx*dy", V)


def test_parse_errors():
    for bad in ["x +", "(x", "x ^ y", "x $ y", "2 x", ""]:
        with pytest.raises(ExprSyntaxError):
            parse_poly(bad, V)
    with pytest.raises(NotGradeOne):
        parse_form("x + dx", V)
    with pytest.raises(NotGradeOne):
        parse_form("x^2", V)
    with pytest.raises(ExprSyntaxError):
        parse_poly("1/x", V)
    with pytest.raises(BadArguments):
        parse_field("fp:4")
    with pytest.raises(BadArguments):
        parse_vars("x,x")


def test_syntax_error_position():
    with pytest.raises(ExprSyntaxError) as ei:
        parse_poly("x + * y", V)
    assert ei.value.pos == 4


def test_ratfunc_parsing():
    x, y = poly_ring(QQ, "x y")
    assert parse_ratfunc("(x^2 - 1)/(x - 1)", V) == RatFunc(x + 1, MultiPoly.one(QQ, V))
    assert parse_ratfunc("1/2*x", V) == RatFunc(x.scale(QQ(1) / 2), MultiPoly.one(QQ, V))


@pytest.mark.parametrize("field", FIELDS, ids=str)
def test_print_parse_round_trip(field):
    rng = random.Random(41)
    for _ in range(200):
        a = random_poly(rng, field, V, max_deg=3, max_terms=5)
        assert parse_poly(str(a), V, field) == a
        b = random_poly(rng, field, V, max_deg=2)
        if not b.is_zero():
            r = RatFunc(a, b)
            assert parse_ratfunc(str(r), V, field) == r
        w = DiffForm.one_form([a, random_poly(rng, field, V)])
        assert parse_form(format_form(w), V, field) == w


# -- CLI


def test_cli_first_integral():
    code, rep = run_machine("first-integral", "--field", "q", "--vars", "x,y",
                            "--form", "y*dx - x*dy", "--invariants", "x;y;x+y", "--recheck")
    assert code == 0
    assert rep["schema_version"] == 1
    f = parse_ratfunc(rep["first_integral"]["f"], V)
    x, y = poly_ring(QQ, "x y")
    assert f == RatFunc(-(x + y), x)
    assert rep["recheck"]["failed"] == 0
    assert all(c["verified"] for c in rep["certificates"])


def test_cli_numbers():
    code, text = run("nk", "--n", "2", "--d", "1", "--r", "2", "--char", "0")
    assert code == 0 and "3" in text
    code, rep = run_machine("nk", "--n", "2", "--d", "3", "--r", "2", "--char", "2")
    assert rep["result"] == 3
    code, rep = run_machine("dim-exact", "--n", "2", "--d", "3", "--r", "2", "--field", "fp:2")
    assert rep["result"] == 4


def test_cli_negative_and_errors(capsys):
    code, rep = run_machine("check-invariant", "--field", "fp:2", "--vars", "x,y",
                            "--form", "y*dx + x*dy", "--poly", "x+1")
    assert code == 2 and rep["invariant"] is False
    code, rep = run_machine("first-integral", "--form", "y*dx - x*dy", "--invariants", "x;y")
    assert code == 2 and rep["status"] == "IdenticalPolarSupport"
    code, rep = run_machine("first-integral", "--form", "y*dx - x*dy", "--invariants", "x;y",
                            "--strategy", "paper")
    assert code == 2 and rep["status"] == "NoDependence"
    assert run("parse", "--poly", "x*z")[0] == 1
    assert run("parse", "--form", "dx*dy")[0] == 1
    assert run("cofactor", "--form", "y*dx")[0] == 1
    assert run("search", "--field", "q", "--form", "y*dx")[0] == 1
    err = capsys.readouterr().err
    assert "UnknownVariable" in err and "ExprSyntaxError" in err


def test_cli_search_and_tangency():
    code, rep = run_machine("search", "--field", "fp:3", "--form", "y*dx - x*dy",
                            "--max-degree", "1", "--recheck")
    assert code == 0
    assert rep["invariants"] == ["y", "x", "x + y", "x + 2*y"]
    assert rep["recheck"]["passed"] == 4
    code, rep = run_machine("tangency", "--field", "fp:5", "--form", "2*y*dx + 3*x*dy",
                            "--invariants", "x;y", "--coeffs", "2;3", "--recheck")
    assert code == 0 and rep["status"] == "tangent"


def test_cli_multiplicative_and_logform():
    code, rep = run_machine("multiplicative-integral", "--field", "fp:5",
                            "--form", "2*y*dx + 3*x*dy", "--invariants", "x;y", "--recheck")
    assert code == 0 and rep["first_integral"]["G"] == "x^2*y^3"
    code, rep = run_machine("logform", "--form", "y*dx - x*dy", "--invariants", "x;y;x+y",
                            "--recheck")
    assert code == 0 and len(rep["logforms"]) == 2
    assert rep["recheck"]["failed"] == 0


def test_cli_residue():
    code, rep = run_machine("residue", "--field", "fp:2", "--alpha", "1/x^2", "--poly", "1+x")
    assert code == 0 and rep["result"] == "1"
    assert rep["diagnostics"]


def test_cli_problem_file(tmp_path):
    prob = {"field": "q", "vars": ["x", "y"], "form": "y*dx - x*dy",
            "invariants": ["x", "y", "x+y"], "options": {"strategy": "exhaustive"}}
    path = tmp_path / "problem.json"
    path.write_text(json.dumps(prob))
    code, rep = run_machine("first-integral", "--problem", str(path), "--recheck")
    assert code == 0 and rep["recheck"]["failed"] == 0
    assert run("first-integral", "--problem", str(tmp_path / "missing.json"))[0] == 1


def test_recheck_detects_tampering():
    code, rep = run_machine("first-integral", "--form", "y*dx - x*dy", "--invariants", "x;y;x+y")
    assert code == 0
    rec = rep["certificates"][-1]
    rec["witnesses"]["f"] = "x*y"
    res = cli.recheck_report(rep)
    assert res["failed"] == 1


def test_cli_usage_errors_exit_one():
    assert run("first-integral", "--form")[0] == 1
    assert run("no-such-command")[0] == 1
    code, rep = run_machine("parse", "--form=-x*dx")
    assert code == 0 and rep["result"] == "-x*dx"


GOLDEN = json.loads((Path(__file__).parent / "golden" / "cases.json").read_text())


@pytest.mark.parametrize("case", GOLDEN, ids=lambda c: " ".join(c["argv"][:1] + c["argv"][-2:]))
def test_golden_exit_codes(case):
    code, text = run(*case["argv"], "--output", "machine")
    assert code == case["exit"]
    if code == 1:
        assert text == ""
        return
    rep = json.loads(text)
    assert rep["schema_version"] == 1
    for key, want in case.get("expect", {}).items():
        val = rep
        for part in key.split("."):
            val = val[part]
        assert val == want
