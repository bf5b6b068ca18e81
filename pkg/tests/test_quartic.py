import pytest
from hypothesis import assume, given

from bielliptic.elliptic import closed_form_points, curve_from_rosenhain
from bielliptic.genus2 import make_rosenhain
from bielliptic.quartic import (
    MONOMIAL_TABLE,
    EPSILON_TABLE,
    BiellipticQuartic,
    BranchMismatch,
    SingularOrReducible,
    cde_coefficients,
    branch_locus,
    build_quartic,
    common_quotient_form,
    delta_D,
    epsilon_branch_expected,
    epsilon_family,
    epsilon_quartic_parts,
    epsilon_table_row,
    expected_branch_points,
    extra_involution,
    extra_involution_residual,
    satellite_tests,
)

from conftest import rosenhain_tuples


def perturbed_table(key="d", index=0, delta=1):
    terms = list(MONOMIAL_TABLE[key])
    coeff, exps = terms[index]
    terms[index] = (coeff + delta, exps)
    return {**MONOMIAL_TABLE, key: tuple(terms)}


def test_test_tuple_quartic(test_curve):
    Q = build_quartic(test_curve)
    assert (Q.a.to_fraction(), Q.b.to_fraction()) == (48, 576)
    branch_locus(Q, curve_from_rosenhain(test_curve), expected_branch_points(test_curve))


@given(rosenhain_tuples())
def test_branch_locus_generic(t):
    c = make_rosenhain(*t)
    try:
        Q = build_quartic(c)
    except SingularOrReducible:
        assume(False)
    branch_locus(Q, curve_from_rosenhain(c), expected_branch_points(c))


def test_e_vanishes_on_product_locus():
    # lambda0 lambda1 = lambda2 lambda3 with l = +lambda0 lambda1
    with pytest.raises(SingularOrReducible) as err:
        build_quartic(make_rosenhain(6, 2, 3, 1))
    assert err.value.which == "e"
    cde = cde_coefficients(make_rosenhain(6, 2, 3, -1))
    assert not cde["e"].is_zero()


def test_delta_d_on_product_locus_depends_on_tuple():
    for lam, sign, vanishes in (((6, 2, 3), -1, False), ((10, 2, 5), 1, True), ((10, 2, 5), -1, True)):
        c = make_rosenhain(*lam, sign)
        C = curve_from_rosenhain(c)
        cde = cde_coefficients(c)
        assert delta_D(C.a, C.b, cde["c"], cde["d"], cde["e"]).is_zero() == vanishes


def test_construct_example_with_vanishing_e():
    with pytest.raises(SingularOrReducible):
        build_quartic(make_rosenhain(4, 2, 3, 1))


@pytest.mark.parametrize("key,index", [("c", 0), ("d", 0), ("d", 5), ("e", 2)])
def test_perturbed_table_fails_branch_locus(test_curve, key, index):
    table = perturbed_table(key, index)
    C = curve_from_rosenhain(test_curve)
    try:
        Q = build_quartic(test_curve, table)
    except SingularOrReducible:
        pytest.skip("perturbation produced a singular quartic")
    with pytest.raises(BranchMismatch) as err:
        branch_locus(Q, C, expected_branch_points(test_curve))
    assert err.value.point is not None


def test_wrong_candidates_rejected(test_curve):
    Q = build_quartic(test_curve)
    C = curve_from_rosenhain(test_curve)
    pts = expected_branch_points(test_curve)
    T1 = C.two_torsion()["T1"]
    with pytest.raises(BranchMismatch):
        branch_locus(Q, C, [pts[0], pts[1], pts[2], T1])


def test_satellite_characterisation(test_curve):
    assert satellite_tests(build_quartic(test_curve))["passes"]


def test_epsilon_family_rows(test_curve):
    C = curve_from_rosenhain(test_curve)
    cf = closed_form_points(test_curve)
    q1, q2 = cf["twoP1"], cf["p1_plus_p2"]
    quotient = common_quotient_form(C, q1, q2)
    seen = set()
    for row in EPSILON_TABLE:
        eps, listed = epsilon_table_row(C, q1, q2, row)
        expected = epsilon_branch_expected(C, q1, q2, eps)
        assert set(map(repr, listed)) == set(map(repr, expected))
        branch_locus(epsilon_family(C, q1, q2, eps), C, expected)
        a2, a4 = epsilon_quartic_parts(C, q1, q2, eps)
        assert a2 * a2 - a4 == quotient
        seen.add(eps)
    assert len(seen) == 8


def test_extra_involution_for_square_tuple():
    c = make_rosenhain(4, 9, 36, 1)
    C = curve_from_rosenhain(c)
    cde = cde_coefficients(c)
    Q = BiellipticQuartic(C.a, C.b, cde["c"], cde["d"], cde["e"])
    alpha_sq = extra_involution(Q)
    assert alpha_sq is not None and alpha_sq.to_fraction() == 81
    assert extra_involution_residual(Q).is_zero()
    cm = make_rosenhain(4, 9, 36, -1)
    cde = cde_coefficients(cm)
    assert extra_involution(BiellipticQuartic(C.a, C.b, cde["c"], cde["d"], cde["e"])) is None


def test_ternary_form_is_even_in_w(test_curve):
    T = build_quartic(test_curve).ternary()
    assert T.degree == 4 and all(m[2] % 2 == 0 for m in T.coeffs)
