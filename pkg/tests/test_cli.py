import json

from click.testing import CliRunner

from bielliptic.cli import main, verify_tuple
from bielliptic.quartic import MONOMIAL_TABLE


def run(*args):
    return CliRunner().invoke(main, list(args))


def test_construct_test_tuple():
    r = run("construct", "4", "9", "25", "+")
    assert r.exit_code == 0
    q = json.loads(r.stdout)["quartic"]
    assert (q["a"], q["b"]) == ("48", "576")


def test_construct_is_deterministic():
    assert run("construct", "4", "9", "25", "+").stdout == run("construct", "4", "9", "25", "--l-sign", "+").stdout


def test_construct_vanishing_e_exits_3():
    assert run("construct", "4", "2", "3", "+").exit_code == 3


def test_bad_input_exits_2():
    assert run("construct", "4", "4", "3", "+").exit_code == 2
    assert run("construct", "4", "x", "3", "+").exit_code == 2
    assert run("construct", "4", "9", "25", "?").exit_code == 2


def test_construct_special_points():
    r = run("construct", "4", "9", "25", "+", "--special-points")
    rows = json.loads(r.stdout)["special_points"]
    assert len(rows) == 6 and all(row["smooth"] for row in rows)


def test_heights_command():
    r = run("heights", "4", "9", "25", "+")
    assert r.exit_code == 0
    assert json.loads(r.stdout)["diff"] == []


def test_pencil_report_census():
    r = run("pencil-report", "4", "9", "25", "-")
    census = json.loads(r.stdout)["census"]
    assert (census["elliptic"]["total"], census["genus2"]["total"], census["eprime"]["total"]) == (12, 16, 6)


def test_theta_command(tmp_path):
    tau = [[{"re": 0, "im": 1.2}, {"re": 0.3, "im": 0.1}], [{"re": 0.3, "im": 0.1}, {"re": 0, "im": 1.5}]]
    path = tmp_path / "tau.json"
    path.write_text(json.dumps(tau))
    out = tmp_path / "report.json"
    r = run("theta", "--tau", str(path), "--output", str(out))
    assert r.exit_code == 0
    assert json.loads(out.read_text())["passed"]


def test_verify_all_single_tuple(tmp_path):
    path = tmp_path / "tuples.json"
    path.write_text(json.dumps([["4", "9", "25", "+"]]))
    r = run("verify-all", "--tuples", str(path))
    assert r.exit_code == 0, r.stderr
    assert json.loads(r.stdout)["passed"]


def test_perturbed_table_reports_witness():
    terms = list(MONOMIAL_TABLE["d"])
    coeff, exps = terms[0]
    terms[0] = (coeff + 1, exps)
    table = {**MONOMIAL_TABLE, "d": tuple(terms)}
    report = verify_tuple(("4", "9", "25", 1), table=table, skip=("heights", "kummer", "covers", "genus3_pencil"))
    rows = {c["check"]: c for c in report["checks"]}
    assert not rows["central_quartic"]["passed"]
    assert rows["central_quartic"]["detail"]["error"] == "BranchMismatch"
    assert not rows["special_points"]["passed"]
