"""Command-line entry point: JSON on stdout (or --output), a short summary on stderr.

Exit codes: 0 pass, 1 failed invariant, 2 bad input, 3 degenerate construction.
"""

from __future__ import annotations

import functools
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

import click

from .exactalg import AlgebraicScalar
from .genus2 import DegenerateCurve, make_rosenhain

EXIT_FAIL, EXIT_INPUT, EXIT_DEGENERATE = 1, 2, 3

DEFAULT_TUPLES = (
    ("4", "9", "25", 1),
    ("4", "9", "25", -1),
    ("2", "5", "7", 1),
    ("3", "-2", "7/2", -1),
)


# ---------------------------------------------------------------- serialization


def to_jsonable(x):
    if isinstance(x, AlgebraicScalar) or hasattr(x, "to_json"):
        return x.to_json()
    if isinstance(x, complex):
        return {"re": x.real, "im": x.imag}
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    if hasattr(x, "tolist"):
        return to_jsonable(x.tolist())
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    return str(x)


def emit(report, output):
    text = json.dumps(to_jsonable(report), indent=2)
    if output:
        with open(output, "w") as fh:
            fh.write(text + "\n")
    else:
        click.echo(text)


def parse_rational(s):
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise click.BadParameter(f"{s!r} is not a rational number") from exc


def parse_sign(s):
    if s in ("+", "+1", "1", "plus"):
        return 1
    if s in ("-", "-1", "minus"):
        return -1
    raise click.BadParameter(f"l-sign must be + or -, got {s!r}")


def curve_from_args(l1, l2, l3, sign, symbolic_lambda0=False):
    try:
        return make_rosenhain(parse_rational(l1), parse_rational(l2), parse_rational(l3), sign,
                              symbolic_lambda0=symbolic_lambda0)
    except DegenerateCurve as exc:
        click.echo(f"degenerate curve: {exc}", err=True)
        sys.exit(EXIT_INPUT)


# ---------------------------------------------------------------- checks


def _run(name, fn):
    """Run one check; any exception is a failure with its message as witness."""
    t = time.perf_counter()
    try:
        passed, detail = fn()
    except Exception as exc:  # noqa: BLE001 - every failure becomes a report row
        passed, detail = False, {"error": type(exc).__name__, "witness": str(exc)}
    return {"check": name, "passed": bool(passed), "seconds": round(time.perf_counter() - t, 3), "detail": detail}


def _closed_forms(curve):
    from .elliptic import closed_form_2p1_p1pm_p2

    out = closed_form_2p1_p1pm_p2(curve)
    return True, {k: v.to_json() for k, v in out.items()}


def _covers(curve):
    from .genus2 import cover_identities

    res = cover_identities(curve, raise_on_fail=False)
    return all(r == 0 for r in res.values()), {k: str(r) for k, r in res.items()}


def _central_quartic(curve, table=None):
    from .elliptic import curve_from_rosenhain
    from .quartic import MONOMIAL_TABLE, branch_locus, build_quartic, expected_branch_points

    Q = build_quartic(curve, table or MONOMIAL_TABLE)
    branch_locus(Q, curve_from_rosenhain(curve), expected_branch_points(curve))
    return True, Q.to_json()


def _pencil_symmetry(curve):
    from .pencil import ab_symmetry_residuals, pencil_AB

    bad = ab_symmetry_residuals(pencil_AB(curve))
    return not any(bad.values()), {k: [x.to_json() for x in v] for k, v in bad.items()}


def _genus3(curve):
    from .pencil import genus3_pencil

    out = genus3_pencil(curve)
    return out["residual"] == 0, {"residual": str(out["residual"])}


def _census(curve):
    from .pencil import fiber_census, pencil_AB

    c = fiber_census(pencil_AB(curve))
    ok = (
        c["elliptic"].total == 12
        and [r["roots"] for r in c["elliptic"].records] == [4, 4, 4]
        and c["genus2"].total == 16
        and [r["roots"] for r in c["genus2"].records] == [12, 4]
        and c["eprime"].total == 6
    )
    return ok, {k: v.to_json() for k, v in c.items()}


def _special_points(curve, table=None):
    from .pencil import pencil_CDE, six_base_points, special_point_report
    from .quartic import MONOMIAL_TABLE

    P = pencil_CDE(curve, table or MONOMIAL_TABLE)
    reports = [special_point_report(P, pt) for pt in six_base_points(curve)]
    ok = all(r["section_sum_is_O"] and all(r["section_identities"].values()) for r in reports)
    return ok, reports


def _heights(curve):
    from .pencil import height_tables, pencil_CDE, table_mismatches

    inter, heights = height_tables(pencil_CDE(curve))
    bad = table_mismatches(inter, heights)
    return not bad, {"intersections": inter, "heights": heights, "diff": [list(map(str, b)) for b in bad]}


def _kummer(curve):
    from .kummer import ShiodaSextic, psi_cover_check, shioda_coordinate_bridge, six_lines_tangency

    psi = psi_cover_check(curve, raise_on_fail=False)
    bridge = shioda_coordinate_bridge(curve, raise_on_fail=False)
    lines = six_lines_tangency(ShiodaSextic(curve))
    ok = all(r == 0 for r in psi.values()) and bridge["residual"] == 0 and lines["all_tangent"]
    return ok, {"psi": {k: str(v) for k, v in psi.items()}, "bridge": str(bridge["residual"]), "six_lines": lines}


def _goepel():
    from .genus2 import TwoTorsionPoint, enumerate_goepel

    groups = enumerate_goepel()
    target = {TwoTorsionPoint(), TwoTorsionPoint.pair(0, 1), TwoTorsionPoint.pair(2, 3), TwoTorsionPoint.pair(4, 5)}
    return len(groups) == 15 and target in groups, {"count": len(groups)}


TUPLE_CHECKS = {
    "closed_forms": _closed_forms,
    "covers": _covers,
    "central_quartic": _central_quartic,
    "pencil_symmetry": _pencil_symmetry,
    "genus3_pencil": _genus3,
    "census": _census,
    "special_points": _special_points,
    "heights": _heights,
    "kummer": _kummer,
}


def verify_tuple(args, symbolic_lambda0=False, table=None, skip=()):
    """All per-tuple checks for (l1, l2, l3, sign); ``table`` overrides the quartic coefficient table."""
    l1, l2, l3, sign = args
    curve = make_rosenhain(Fraction(l1), Fraction(l2), Fraction(l3), sign, symbolic_lambda0=symbolic_lambda0)
    rows = []
    for name, fn in TUPLE_CHECKS.items():
        if name in skip:
            continue
        if table is not None and name in ("central_quartic", "special_points"):
            rows.append(_run(name, lambda fn=fn: fn(curve, table)))
        else:
            rows.append(_run(name, lambda fn=fn: fn(curve)))
    return {"tuple": [str(l1), str(l2), str(l3), "+" if sign > 0 else "-"], "checks": rows}


def theta_report(tau, tolerance, tail):
    from .theta import numeric_pipeline, rational_snapshot, validate_characteristics

    worst = validate_characteristics(20, tolerance=tolerance)
    out = numeric_pipeline(tau, tolerance, tail)
    snap = rational_snapshot(out["lambda"], out["l"])
    out["characteristic_table_worst_residuals"] = worst
    out["rational_snapshot"] = snap
    out["passed"] = out["passed"] and snap["max_relative_discrepancy"] < 1e-6
    return out


def read_tau(path):
    import numpy as np

    with open(path) as fh:
        raw = json.load(fh)
    try:
        return np.array([[complex(e["re"], e["im"]) for e in row] for row in raw])
    except (KeyError, TypeError) as exc:
        raise click.BadParameter("tau must be a 2x2 array of {re, im} entries") from exc


# ---------------------------------------------------------------- commands


@click.group()
def main():
    """Bielliptic genus-three quartics from Rosenhain parameters."""


def common_options(f):
    """--output, --tolerance, --tail and --jobs, collected into one dict argument."""

    @click.option("--output", type=click.Path(dir_okay=False), default=None, help="Write JSON here instead of stdout.")
    @click.option("--tolerance", type=click.FloatRange(min=0, min_open=True), default=1e-8, show_default=True)
    @click.option("--tail", type=click.FloatRange(min=0, min_open=True), default=1e-14, show_default=True)
    @click.option("--jobs", type=click.IntRange(min=1), default=1, show_default=True)
    @functools.wraps(f)
    def wrapper(*args, output, tolerance, tail, jobs, **kwargs):
        return f({"output": output, "tolerance": tolerance, "tail": tail, "jobs": jobs}, *args, **kwargs)

    return wrapper


def _tuple_args(f):
    f = click.argument("sign", required=False)(f)
    f = click.argument("l3")(f)
    f = click.argument("l2")(f)
    f = click.argument("l1")(f)
    f = click.option("--l-sign", "l_sign_opt", default="+", show_default=True, help="Sign of l = sqrt(l0 l1 l2 l3).")(f)
    return f


def _sign(sign, l_sign_opt):
    return parse_sign(sign if sign is not None else l_sign_opt)


@main.command()
@_tuple_args
@click.option("--special-points", is_flag=True, help="Also emit the six special-fiber quartics.")
@common_options
def construct(obj, l1, l2, l3, sign, l_sign_opt, special_points):
    """Central quartic (a, b, c, d, e) for lambda = (1, L1, L2, L3)."""
    from .quartic import SingularOrReducible, build_quartic

    curve = curve_from_args(l1, l2, l3, _sign(sign, l_sign_opt))
    try:
        Q = build_quartic(curve)
    except SingularOrReducible as exc:
        click.echo(f"degenerate construction: {exc}", err=True)
        sys.exit(EXIT_DEGENERATE)
    report = {"curve": curve.to_json(), "quartic": Q.to_json(), "smooth": True}
    if special_points:
        report["special_points"] = _special_point_rows(curve)
    emit(report, obj["output"])
    click.echo(f"a = {Q.a}, b = {Q.b}, smooth", err=True)


def _special_point_rows(curve):
    from .pencil import pencil_CDE, six_base_points, fiber_quartic

    P = pencil_CDE(curve)
    rows = []
    for pt in six_base_points(curve):
        Q = fiber_quartic(P, pt.s0, pt.s1, check=False)
        rows.append({"point": pt.to_json(), "quartic": Q.to_json(), "smooth": Q.is_smooth()})
    return rows


@main.command("special-points")
@_tuple_args
@common_options
def special_points_cmd(obj, l1, l2, l3, sign, l_sign_opt):
    """The six special fibers with branch-locus and section-sum certificates."""
    curve = curve_from_args(l1, l2, l3, _sign(sign, l_sign_opt))
    row = _run("special_points", lambda: _special_points(curve))
    emit(row, obj["output"])
    click.echo(f"special points: {'pass' if row['passed'] else 'FAIL'}", err=True)
    sys.exit(0 if row["passed"] else EXIT_FAIL)


@main.command()
@_tuple_args
@common_options
def heights(obj, l1, l2, l3, sign, l_sign_opt):
    """Intersection and height matrices of the ten sections, diffed against the reference table."""
    curve = curve_from_args(l1, l2, l3, _sign(sign, l_sign_opt))
    row = _run("heights", lambda: _heights(curve))
    emit(row["detail"], obj["output"])
    diff = row["detail"].get("diff", [])
    for d in diff:
        click.echo(" ".join(d), err=True)
    click.echo(f"heights: {'match' if row['passed'] else 'MISMATCH'}", err=True)
    sys.exit(0 if row["passed"] else EXIT_FAIL)


@main.command("pencil-report")
@_tuple_args
@common_options
def pencil_report(obj, l1, l2, l3, sign, l_sign_opt):
    """Pencil coefficients, basic sections and the singular-fiber census."""
    from .pencil import basic_sections, fiber_census, pencil_CDE

    curve = curve_from_args(l1, l2, l3, _sign(sign, l_sign_opt))
    P = pencil_CDE(curve)
    census = fiber_census(P)
    report = {
        "pencil": P.to_json(),
        "sections": {k: S.to_json() for k, S in basic_sections(P).items()},
        "census": {k: v.to_json() for k, v in census.items()},
    }
    emit(report, obj["output"])
    click.echo(", ".join(f"{k}: {v.total}" for k, v in census.items()), err=True)


@main.command()
@click.option("--tau", "tau_path", type=click.Path(exists=True, dir_okay=False), default=None)
@common_options
def theta(obj, tau_path):
    """Theta constants, Rosenhain data and the floating quartic pipeline for a period matrix."""
    import numpy as np

    from .theta import NearVanishingTheta, NotPositiveDefinite

    tau = read_tau(tau_path) if tau_path else np.array([[1.2j, 0.3 + 0.1j], [0.3 + 0.1j, 1.5j]])
    try:
        out = theta_report(tau, obj["tolerance"], obj["tail"])
    except (NotPositiveDefinite, NearVanishingTheta) as exc:
        click.echo(f"bad period matrix: {exc}", err=True)
        sys.exit(EXIT_INPUT)
    emit(out, obj["output"])
    click.echo(f"theta pipeline: {'pass' if out['passed'] else 'FAIL'}; m variants {out['m_variant_matches']}", err=True)
    sys.exit(0 if out["passed"] else EXIT_FAIL)


@main.command("verify-all")
@click.option("--tuples", "tuples_path", type=click.Path(exists=True, dir_okay=False), default=None,
              help='JSON list of ["l1", "l2", "l3", "+"|"-"].')
@click.option("--symbolic-lambda0", is_flag=True, help="Treat lambda0 as an indeterminate in the certified identities.")
@click.option("--tau", "tau_path", type=click.Path(exists=True, dir_okay=False), default=None)
@common_options
def verify_all(obj, tuples_path, symbolic_lambda0, tau_path):
    """Every invariant suite over a set of tuples; exit 1 on any failure."""
    if tuples_path:
        with open(tuples_path) as fh:
            raw = json.load(fh)
        tuples = [(str(a), str(b), str(c), parse_sign(str(s))) for a, b, c, s in raw]
    else:
        tuples = list(DEFAULT_TUPLES)
    for t in tuples:
        curve_from_args(*t)
    kwargs = {"symbolic_lambda0": symbolic_lambda0}
    if obj["jobs"] > 1:
        with ProcessPoolExecutor(obj["jobs"]) as pool:
            results = list(pool.map(_verify_star, [(t, kwargs) for t in tuples]))
    else:
        results = [verify_tuple(t, **kwargs) for t in tuples]
    report = {"tuples": results, "goepel": _run("goepel", _goepel)}
    if tau_path:
        report["theta"] = theta_report(read_tau(tau_path), obj["tolerance"], obj["tail"])
    failed = [(r["tuple"], c["check"]) for r in results for c in r["checks"] if not c["passed"]]
    if not report["goepel"]["passed"]:
        failed.append(("-", "goepel"))
    if tau_path and not report["theta"]["passed"]:
        failed.append(("-", "theta"))
    report["passed"] = not failed
    emit(report, obj["output"])
    n = sum(len(r["checks"]) for r in results) + 1 + bool(tau_path)
    click.echo(f"{n - len(failed)}/{n} checks passed", err=True)
    for t, name in failed:
        click.echo(f"FAILED {name} at {t}", err=True)
    sys.exit(0 if not failed else EXIT_FAIL)


def _verify_star(item):
    t, kwargs = item
    return verify_tuple(t, **kwargs)


if __name__ == "__main__":
    main()
