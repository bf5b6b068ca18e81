import cmath
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from bielliptic.exactalg import (
    QQ,
    ExactAlgebraError,
    HomogPoly2,
    UniPoly,
    discriminant,
    poly_gcd,
    reduce_modulo,
    resultant,
    scalar_to_sympy,
    sqrt_in_field,
    squarefree_part,
    tower_relations,
    tower_symbols,
)

small = st.fractions(min_value=-20, max_value=20, max_denominator=7)

F2, r2 = QQ.adjoin_sqrt(2)
F23, r3 = F2.adjoin_sqrt(3)


@st.composite
def tower_elements(draw):
    return F23.coerce(sum((draw(small) * b for b in (1, r2, r3, r2 * r3)), F23.zero()))


def test_adjoin_square_keeps_field():
    F, root = QQ.adjoin_sqrt(Fraction(9, 4))
    assert F == QQ and root * root == F.coerce(Fraction(9, 4))


def test_radicand_normalised_to_squarefree_core():
    F, root = QQ.adjoin_sqrt(12)
    assert F == QQ.adjoin_sqrt(3)[0]
    assert root * root == F.coerce(12)


def test_sqrt_of_zero_rejected():
    with pytest.raises(ExactAlgebraError):
        QQ.adjoin_sqrt(0)


@given(tower_elements(), tower_elements(), tower_elements())
def test_field_axioms(x, y, z):
    assert (x + y) * z == x * z + y * z
    assert (x * y) * z == x * (y * z)
    if not x.is_zero():
        assert x * x.inverse() == F23.one()
        assert (y / x) * x == y


@given(tower_elements(), tower_elements())
def test_numeric_embedding_is_a_homomorphism(x, y):
    assert cmath.isclose((x * y).numeric(), x.numeric() * y.numeric(), rel_tol=1e-9, abs_tol=1e-9)
    assert cmath.isclose((x + y).numeric(), x.numeric() + y.numeric(), rel_tol=1e-9, abs_tol=1e-9)


@given(tower_elements())
def test_square_has_root_in_field(x):
    root = sqrt_in_field(x * x)
    assert root is not None and root * root == x * x


@given(tower_elements())
def test_sympy_image_respects_relations(x):
    gens = tower_symbols(F23)
    rels = tower_relations(F23, gens)
    y = x * x
    assert reduce_modulo(scalar_to_sympy(x, gens) ** 2 - scalar_to_sympy(y, gens), rels, gens) == 0


@given(st.lists(small, min_size=1, max_size=6), st.lists(small, min_size=1, max_size=4))
def test_division_with_remainder(a, b):
    p, q = UniPoly(QQ, a), UniPoly(QQ, b)
    if q.is_zero():
        return
    quo, rem = p.divmod(q)
    assert quo * q + rem == p
    assert rem.is_zero() or rem.degree < q.degree


def test_gcd_against_sympy():
    x = sympy.symbols("x")
    p = UniPoly(QQ, [-6, 11, -6, 1])  # (x-1)(x-2)(x-3)
    q = UniPoly(QQ, [2, -3, 1])  # (x-1)(x-2)
    g = poly_gcd(p, q).monic()
    assert g == UniPoly(QQ, [2, -3, 1])
    assert sympy.gcd(x**3 - 6 * x**2 + 11 * x - 6, x**2 - 3 * x + 2) == x**2 - 3 * x + 2


def _sympy_form(f, s0, s1):
    return sum(sympy.Rational(str(c.coords[0])) * s0**k * s1 ** (f.degree - k) for k, c in enumerate(f.coeffs))


@given(st.lists(small, min_size=3, max_size=5), st.lists(small, min_size=2, max_size=4))
def test_resultant_against_sympy(a, b):
    p, q = HomogPoly2(QQ, a), HomogPoly2(QQ, b)
    if p.coeffs[-1].is_zero() or q.coeffs[-1].is_zero():
        return
    t = sympy.symbols("t")
    # dehomogenize at s1 = 1 with s0 = t; leading coefficients are the s0^deg ones
    expected = sympy.resultant(_sympy_form(p, t, 1), _sympy_form(q, t, 1), t)
    assert resultant(p, q).to_fraction() == Fraction(str(expected))


def test_discriminant_detects_double_root():
    sq = HomogPoly2(QQ, [1, -2, 1])  # (s0 - s1)^2
    assert discriminant(sq).is_zero()
    assert not discriminant(HomogPoly2(QQ, [-1, 0, 1])).is_zero()


def test_squarefree_part_strips_repeated_factors():
    f = HomogPoly2.linear(QQ, 1, -1) ** 3 * HomogPoly2.linear(QQ, 1, 2) * HomogPoly2.linear(QQ, 0, 1) ** 2
    assert squarefree_part(f).degree == 3
