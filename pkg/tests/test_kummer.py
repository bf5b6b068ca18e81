from fractions import Fraction

import pytest

from bielliptic.genus2 import IdentityFailed, make_rosenhain
from bielliptic.kummer import (
    ShiodaSextic,
    eprime_census,
    eprime_fibration,
    eprime_normal_form_residual,
    line_tangency,
    psi_cover_check,
    shioda_coordinate_bridge,
    six_lines_tangency,
)


@pytest.fixture(scope="module", params=[False, True], ids=["fixed_lambda0", "symbolic_lambda0"])
def curve(request):
    return make_rosenhain(4, 9, 25, symbolic_lambda0=request.param)


def test_six_lines_tangent(curve):
    assert six_lines_tangency(ShiodaSextic(curve))["all_tangent"]


def test_tangency_contact_point_and_perturbed_line(test_curve):
    F = test_curve.field
    disc, point = line_tangency((F.coerce(16), F.coerce(-4), F.coerce(1)))
    assert disc.is_zero() and point is not None
    z1, z2, z3 = point
    assert z2 * z2 == 4 * z1 * z3
    disc, point = line_tangency((F.coerce(16), F.coerce(-4), F.coerce(2)))
    assert not disc.is_zero() and point is None


def test_eprime_degrees_and_census(test_curve):
    E = eprime_fibration(test_curve)
    assert E["A'"].degree == 4 and E["B'"].degree == 4
    census = eprime_census(test_curve)
    assert census.total == 6
    marked = census.records[1:]
    assert [m["type"] for m in marked] == ["I0*", "I0*"]


def test_eprime_census_other_tuple():
    c = make_rosenhain(Fraction(-3, 2), 5, Fraction(7, 3))
    assert eprime_census(c).total == 6


def test_psi_cover(curve):
    assert psi_cover_check(curve) == {"psi_E": 0, "psi_Q": 0}


def test_shioda_bridge(curve):
    assert shioda_coordinate_bridge(curve)["residual"] == 0


def test_swapped_bridge_fails(test_curve):
    wrong = lambda t0, t1, x, z, Y, l: (t0 * z, x, t1 * z, l * z * Y)
    with pytest.raises(IdentityFailed):
        shioda_coordinate_bridge(test_curve, bridge=wrong)


@pytest.mark.parametrize("t", [1, 2, 5])
def test_eprime_normal_form(test_curve, t):
    assert eprime_normal_form_residual(test_curve, t, Fraction(3, t + 2)) == 0
