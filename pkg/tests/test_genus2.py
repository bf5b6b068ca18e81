import itertools

import pytest
import sympy
from hypothesis import given

from bielliptic.genus2 import (
    ALL_TWO_TORSION,
    IDENTITY,
    DegenerateCurve,
    TwoTorsionPoint,
    cover_identities,
    enumerate_goepel,
    even_eight,
    is_isotropic,
    make_rosenhain,
    weil_pairing,
    weierstrass_points,
)

from conftest import rosenhain_tuples


def test_fifteen_goepel_groups():
    groups = enumerate_goepel()
    assert len(groups) == 15
    target = {IDENTITY, TwoTorsionPoint.pair(0, 1), TwoTorsionPoint.pair(2, 3), TwoTorsionPoint.pair(4, 5)}
    assert target in groups
    assert all(is_isotropic(g) and len(g) == 4 for g in groups)


def test_weil_pairing_bilinear_and_alternating():
    for P, Q, R in itertools.product(ALL_TWO_TORSION, repeat=3):
        assert weil_pairing(P + Q, R) == (weil_pairing(P, R) + weil_pairing(Q, R)) % 2
    assert all(weil_pairing(P, P) == 0 for P in ALL_TWO_TORSION)


def test_pairing_nondegenerate():
    for P in ALL_TWO_TORSION[1:]:
        assert any(weil_pairing(P, Q) for Q in ALL_TWO_TORSION)


def test_two_torsion_is_group_of_order_16():
    assert len(set(ALL_TWO_TORSION)) == 16
    assert TwoTorsionPoint.pair(0, 1) + TwoTorsionPoint.pair(1, 2) == TwoTorsionPoint.pair(0, 2)
    assert TwoTorsionPoint(frozenset({0, 1, 2, 3})) == TwoTorsionPoint.pair(4, 5)


def test_even_eight_of_p45():
    nodes = even_eight(TwoTorsionPoint.pair(4, 5))
    assert len(nodes) == 8 and (4, 5) not in nodes


def test_weierstrass_points():
    c = make_rosenhain(4, 9, 25)
    assert len(weierstrass_points(c)) == 6


@pytest.mark.parametrize("lam", [(4, 4, 9), (0, 2, 3), (1, 2, 3)])
def test_degenerate_parameters_rejected(lam):
    with pytest.raises(DegenerateCurve):
        make_rosenhain(*lam)


def test_l_squared():
    c = make_rosenhain(4, 9, 25, -1)
    assert c.l * c.l == c.lam[0] * c.lam[1] * c.lam[2] * c.lam[3]
    assert c.l.to_fraction() == -30


@given(rosenhain_tuples())
def test_cover_maps_certified(t):
    c = make_rosenhain(*t)
    assert all(r == 0 for r in cover_identities(c).values())


def test_cover_identity_with_symbolic_lambda0():
    c = make_rosenhain(4, 9, 25, symbolic_lambda0=True)
    assert all(r == 0 for r in cover_identities(c).values())


def test_wrong_cover_map_leaves_residual():
    c = make_rosenhain(4, 9, 25)
    x, y, z = sympy.symbols("x y z")
    res = cover_identities(c, qc_map=(x**2, z**2, y * z), raise_on_fail=False)
    assert res["H_to_C"] != 0
