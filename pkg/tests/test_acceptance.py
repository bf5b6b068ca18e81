"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` or ``python3 tests/test_acceptance.py``.
"""

import itertools
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from bielliptic.elliptic import (  # noqa: E402
    closed_form_2p1_p1pm_p2,
    closed_form_points,
    curve_from_rosenhain,
    ec_add,
    ec_double,
    ec_sub,
    named_points,
)
from bielliptic.genus2 import (  # noqa: E402
    ALL_TWO_TORSION,
    IDENTITY,
    TwoTorsionPoint,
    cover_identities,
    enumerate_goepel,
    make_rosenhain,
    weil_pairing,
)
from bielliptic.kummer import psi_cover_check, shioda_coordinate_bridge  # noqa: E402
from bielliptic.pencil import (  # noqa: E402
    ab_symmetry_residuals,
    basic_sections,
    fiber_census,
    height_tables,
    pencil_AB,
    pencil_CDE,
    six_base_points,
    special_fiber_polynomials,
    special_point_report,
    table_mismatches,
)
from bielliptic.quartic import (  # noqa: E402
    MONOMIAL_TABLE,
    EPSILON_TABLE,
    BiellipticQuartic,
    BranchMismatch,
    SingularOrReducible,
    cde_coefficients,
    build_quartic,
    common_quotient_form,
    epsilon_quartic_parts,
    extra_involution_residual,
)
from bielliptic.theta import random_tau, rosenhain_from_tau  # noqa: E402

from conftest import random_generic_curves  # noqa: E402

RESULTS = {}


def report(number, title, passed, seconds, note=""):
    line = f"criterion {number} [{'PASS' if passed else 'FAIL'}] {title} ({seconds:.1f} s){' - ' + note if note else ''}"
    RESULTS[number] = line
    return passed


def smooth_central(c):
    try:
        build_quartic(c)
        return True
    except SingularOrReducible:
        return False


# ---------------------------------------------------------------- 1


def rational_l_tuples(rng, n):
    """Tuples with lambda1 lambda2 lambda3 a rational square."""
    out = []
    while len(out) < n:
        l1 = Fraction(rng.randint(-20, 20), rng.randint(1, 6))
        l2 = Fraction(rng.randint(-20, 20), rng.randint(1, 6))
        r = Fraction(rng.randint(1, 30), rng.randint(1, 6))
        if 0 in (l1, l2):
            continue
        l3 = r * r / (l1 * l2)
        if len({1, l1, l2, l3}) == 4:
            out.append((l1, l2, l3))
    return out


def criterion_1():
    t = time.perf_counter()
    c = make_rosenhain(4, 9, 25, 1)
    C = curve_from_rosenhain(c)
    cf = closed_form_2p1_p1pm_p2(c)
    pinned = cf["twoP1"] == C.point(841, 7163) and cf["p1_plus_p2"] == C.point(676, -728)
    rng = random.Random(101)
    tuples = rational_l_tuples(rng, 50)
    while len(tuples) < 100:
        lam = tuple(Fraction(rng.randint(-30, 30), rng.randint(1, 9)) for _ in range(3))
        if len({1, *lam}) == 4 and 0 not in lam:
            tuples.append(lam)
    checked = 0
    for lam in tuples:
        for sign in (1, -1):
            c = make_rosenhain(*lam, sign)
            C = curve_from_rosenhain(c)
            p = named_points(c)
            closed = closed_form_points(c)
            assert closed["twoP1"] == ec_double(C, p["p1"])
            assert closed["p1_plus_p2"] == ec_add(C, p["p1"], p["p2"])
            assert closed["p1_minus_p2"] == ec_sub(C, p["p1"], p["p2"])
            checked += 1
    dt = time.perf_counter() - t
    ok = pinned and checked == 200 and dt < 10
    return ok, dt, f"{checked} curves, 50 with rational l"


# ---------------------------------------------------------------- 2


def criterion_2():
    t = time.perf_counter()
    curves = random_generic_curves(5, seed=202)
    bad = []
    for c in curves:
        inter, heights = height_tables(pencil_CDE(c))
        bad += table_mismatches(inter, heights)
    dt = time.perf_counter() - t
    return not bad and dt < 120, dt, f"{len(bad)} mismatching entries"


# ---------------------------------------------------------------- 3


def special_point_pipeline(c, table=MONOMIAL_TABLE):
    P = pencil_CDE(c, table)
    S = basic_sections(P)
    polys = special_fiber_polynomials(c)
    pts = six_base_points(c)
    assert len(pts) == 6
    for pt in pts:
        assert polys["p2_%d%d%d" % pt.triple](pt.s0, pt.s1).is_zero()
        r = special_point_report(P, pt, S)  # raises on a singular quartic or a branch mismatch
        assert r["smooth"] and r["branch_points_match"] and r["section_sum_is_O"]
        assert all(r["section_identities"].values())
    return True


def criterion_3():
    t = time.perf_counter()
    curves = [make_rosenhain(4, 9, 25, 1)] + random_generic_curves(10, seed=303, accept=smooth_central)
    for c in curves:
        special_point_pipeline(c)
    dt = time.perf_counter() - t
    return dt < 300, dt, f"{len(curves)} tuples x 6 special points"


# ---------------------------------------------------------------- 4


def criterion_4():
    t = time.perf_counter()
    ok = True
    for c in random_generic_curves(10, seed=404):
        census = fiber_census(pencil_AB(c))
        e, g, ep = census["elliptic"], census["genus2"], census["eprime"]
        ok &= e.total == 12 and [r["roots"] for r in e.records] == [4, 4, 4] and e.extra["coprime"]
        ok &= all(r["multiplicity_in_discriminant"] == 2 for r in e.records)
        ok &= g.total == 16 and [r["roots"] for r in g.records] == [12, 4]
        ok &= ep.total == 6
    return ok, time.perf_counter() - t, "12 = 4+4+4, 12+4, 6"


# ---------------------------------------------------------------- 5


def criterion_5():
    t = time.perf_counter()
    c = make_rosenhain(4, 9, 25, 1)
    checks = {}
    checks["covers"] = all(r == 0 for r in cover_identities(c).values())
    checks["covers_symbolic_lambda0"] = all(
        r == 0 for r in cover_identities(make_rosenhain(4, 9, 25, symbolic_lambda0=True)).values()
    )
    checks["pencil_symmetry"] = not any(ab_symmetry_residuals(pencil_AB(c)).values())
    checks["psi_cover"] = psi_cover_check(c) == {"psi_E": 0, "psi_Q": 0}
    checks["shioda_bridge"] = shioda_coordinate_bridge(c)["residual"] == 0
    C = curve_from_rosenhain(c)
    cf = closed_form_points(c)
    q1, q2 = cf["twoP1"], cf["p1_plus_p2"]
    quotient = common_quotient_form(C, q1, q2)
    checks["epsilon_common_quotient"] = all(
        (lambda a2, a4: a2 * a2 - a4 == quotient)(*epsilon_quartic_parts(C, q1, q2, row[0])) for row in EPSILON_TABLE
    )
    c36 = make_rosenhain(4, 9, 36, 1)
    C36 = curve_from_rosenhain(c36)
    cde = cde_coefficients(c36)
    Q36 = BiellipticQuartic(C36.a, C36.b, cde["c"], cde["d"], cde["e"])
    checks["extra_involution"] = extra_involution_residual(Q36).is_zero()
    failed = [k for k, v in checks.items() if not v]
    return not failed, time.perf_counter() - t, f"failed: {failed}" if failed else f"{len(checks)} identities"


# ---------------------------------------------------------------- 6


def criterion_6():
    t = time.perf_counter()
    groups = enumerate_goepel()
    target = {IDENTITY, TwoTorsionPoint.pair(0, 1), TwoTorsionPoint.pair(2, 3), TwoTorsionPoint.pair(4, 5)}
    bilinear = all(
        weil_pairing(P + Q, R) == (weil_pairing(P, R) + weil_pairing(Q, R)) % 2
        and weil_pairing(R, P + Q) == (weil_pairing(R, P) + weil_pairing(R, Q)) % 2
        for P, Q, R in itertools.product(ALL_TWO_TORSION, repeat=3)
    )
    dt = time.perf_counter() - t
    return len(groups) == 15 and target in groups and bilinear and dt < 1, dt, f"{len(groups)} groups"


# ---------------------------------------------------------------- 7


def criterion_7():
    t = time.perf_counter()
    rng = np.random.default_rng(707)
    ok = True
    worst = 0.0
    for _ in range(20):
        tau = random_tau(rng)
        full = rosenhain_from_tau(tau, target_tail=1e-14)
        half = rosenhain_from_tau(tau, target_tail=5e-15)
        res = full["residuals"]
        ok &= res["l^2"] < 1e-8
        worst = max(worst, res["l^2"])
        for triple in ("123", "213", "312"):
            below = [v for v in ("first", "second") if res[f"m{triple}^2 {v}"] < 1e-8]
            ok &= len(below) == 1
        ok &= all(half["residuals"][k] <= v for k, v in res.items() if "second" not in k)
    dt = time.perf_counter() - t
    return ok and dt < 30, dt, f"max |l^2 - prod| = {worst:.1e}; the first m^2 variant holds"


# ---------------------------------------------------------------- 8


def perturbed_table():
    terms = list(MONOMIAL_TABLE["d"])
    coeff, exps = terms[3]
    terms[3] = (coeff + 1, exps)
    return {**MONOMIAL_TABLE, "d": tuple(terms)}


def criterion_8():
    t = time.perf_counter()
    c = make_rosenhain(4, 9, 25, 1)
    witness = None
    try:
        special_point_pipeline(c, perturbed_table())
    except BranchMismatch as exc:
        witness = exc.point
    dt = time.perf_counter() - t
    return witness is not None, dt, f"witness {witness}"


CRITERIA = {
    1: ("closed forms agree with the group law", criterion_1),
    2: ("height table reproduced", criterion_2),
    3: ("special-fiber pipeline", criterion_3),
    4: ("fiber census", criterion_4),
    5: ("certified identities", criterion_5),
    6: ("Goepel combinatorics", criterion_6),
    7: ("theta identities", criterion_7),
    8: ("fault injection detected", criterion_8),
}


def run_criterion(n):
    title, fn = CRITERIA[n]
    t = time.perf_counter()
    try:
        ok, dt, note = fn()
    except Exception as exc:  # noqa: BLE001 - any exception is a failure of the criterion
        ok, dt, note = False, time.perf_counter() - t, f"{type(exc).__name__}: {exc}"
    return report(n, title, ok, dt, note)


@pytest.mark.parametrize("number", sorted(CRITERIA), ids=lambda n: f"criterion_{n}")
def test_criterion(number, capsys):
    passed = run_criterion(number)
    with capsys.disabled():
        print("\n" + RESULTS[number])
    assert passed, RESULTS[number]


if __name__ == "__main__":
    results = []
    for n in sorted(CRITERIA):
        results.append(run_criterion(n))
        print(RESULTS[n], flush=True)
    sys.exit(0 if all(results) else 1)
