import functools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from bielliptic.genus2 import make_rosenhain
from bielliptic.pencil import (
    REFERENCE_HEIGHTS,
    AffineChart,
    SingularFiber,
    antisymplectic_table_failures,
    base_points_distinct,
    basic_sections,
    choice_sum_vector,
    choice_table,
    derived_section,
    elliptic_census,
    fiber_census,
    genus2_census,
    genus3_pencil,
    height_tables,
    p_formulas,
    pencil_AB,
    pencil_CDE,
    section_eval,
    section_relations,
    six_base_points,
    special_fiber_polynomials,
    special_point_report,
    symplectic_failures,
    table_mismatches,
    ab_symmetry_residuals,
)

from conftest import random_generic_curves, rosenhain_tuples


@pytest.fixture(scope="module")
def pencil():
    return reference_pencil()


def test_degrees(pencil):
    assert [f.degree for f in (pencil.A, pencil.B, pencil.C, pencil.D, pencil.E)] == [4, 4, 12, 14, 10]


@given(rosenhain_tuples())
def test_ab_symmetry(t):
    P = pencil_AB(make_rosenhain(*t))
    assert not any(ab_symmetry_residuals(P).values())


@functools.lru_cache(maxsize=None)
def reference_pencil():
    return pencil_CDE(make_rosenhain(4, 9, 25, 1))


@given(st.integers(-9, 9), st.integers(1, 9))
@settings(max_examples=15)
def test_section_relations_on_fibers(a, b):
    P = reference_pencil()
    s0, s1 = P.field.coerce(a), P.field.coerce(b)
    if not P.smooth_at(s0, s1):
        return
    try:
        assert section_relations(P, s0, s1) == []
    except SingularFiber:
        pass


def test_p3_over_infinity_is_reported(pencil):
    one = pencil.field.one()
    with pytest.raises(SingularFiber):
        p_formulas(pencil, one, one)


def test_choice_rows_sum(pencil):
    F = pencil.field
    S = basic_sections(pencil)
    s0, s1 = F.coerce(3), F.coerce(7)
    C = pencil.fiber_curve(s0, s1)
    for row in (1, 2, 3, 4):
        for sign in (1, -1):
            vec = choice_sum_vector(row, sign)
            Sp = choice_table(pencil, row, sign, S)
            total = section_eval(pencil, derived_section("sum", *((1, v) for v in Sp.values())), s0, s1)
            combo = derived_section("c", *((k, S[f"S{j}"]) for j, k in enumerate(vec, 1) if k))
            expect = section_eval(pencil, combo, s0, s1) if any(vec) else C.zero()
            assert total == expect


@pytest.mark.parametrize("s", [Fraction(2, 3), Fraction(-5, 7)])
def test_involution_tables(pencil, s):
    chart = AffineChart(pencil)
    S = basic_sections(pencil)
    assert antisymplectic_table_failures(chart, s, S) == []
    pt = chart.section(derived_section("x", (1, S["S1"]), (1, S["S2"])), s)
    assert symplectic_failures(chart, s, pt) == []


def test_special_points(pencil, test_curve):
    polys = special_fiber_polynomials(test_curve)
    pts = six_base_points(test_curve)
    assert len(pts) == 6 and base_points_distinct(test_curve)
    S = basic_sections(pencil)
    for pt in pts:
        assert polys["p2_%d%d%d" % pt.triple](pt.s0, pt.s1).is_zero()
        assert pt.m_squared_matches == {"first": True, "second": False}
        r = special_point_report(pencil, pt, S)
        assert r["smooth"] and r["branch_points_match"] and r["section_sum_is_O"]
        assert all(r["section_identities"].values())


def test_p4_is_pole_locus_of_2S1_plus_S3(test_curve, pencil):
    p4 = special_fiber_polynomials(test_curve)["p4"]
    S = basic_sections(pencil)
    D = derived_section("D", (2, S["S1"]), (1, S["S3"]))
    F = pencil.field
    # away from p4 the section is finite; on a rational root of p4 it would be O
    for s0, s1 in ((2, 3), (5, -1), (1, 4)):
        s0, s1 = F.coerce(s0), F.coerce(s1)
        if pencil.smooth_at(s0, s1) and not p4(s0, s1).is_zero():
            assert not section_eval(pencil, D, s0, s1).is_zero()


def test_census(pencil):
    e = elliptic_census(pencil)
    assert e.total == 12 and [r["roots"] for r in e.records] == [4, 4, 4] and e.extra["coprime"]
    g = genus2_census(pencil)
    assert [r["roots"] for r in g.records] == [12, 4]
    assert fiber_census(pencil)["eprime"].total == 6


def test_genus3_pencil_factorises(test_curve):
    assert genus3_pencil(test_curve)["residual"] == 0


def test_height_table_test_tuple(pencil):
    inter, heights = height_tables(pencil)
    assert table_mismatches(inter, heights) == []
    assert all(heights[i][j] == heights[j][i] for i in range(10) for j in range(10))


def test_torsion_rows_vanish(pencil):
    _, heights = height_tables(pencil)
    for i in range(4):
        assert all(x == 0 for x in heights[i])
    assert REFERENCE_HEIGHTS[0] == (0,) * 10


def test_height_table_other_lambda0():
    (c,) = random_generic_curves(1, seed=11, accept=lambda c: c.l.field.level == 0)
    c = make_rosenhain(*c.lam[1:], lambda0=Fraction(3, 2))
    inter, heights = height_tables(pencil_CDE(c))
    assert table_mismatches(inter, heights) == []
