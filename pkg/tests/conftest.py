import random
from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from bielliptic.genus2 import DegenerateCurve, make_rosenhain

settings.register_profile("default", deadline=None, max_examples=25)
settings.load_profile("default")

rationals = st.fractions(min_value=-40, max_value=40, max_denominator=12).filter(lambda q: q not in (0, 1))


@st.composite
def rosenhain_tuples(draw):
    lam = draw(st.lists(rationals, min_size=3, max_size=3, unique=True))
    return (*lam, draw(st.sampled_from([1, -1])))


def random_tuple(rng, spread=30):
    while True:
        lam = [Fraction(rng.randint(-spread, spread), rng.randint(1, 9)) for _ in range(3)]
        if len(set(lam)) == 3 and 0 not in lam and 1 not in lam:
            return (*lam, rng.choice((1, -1)))


def random_generic_curves(n, seed, accept=None):
    """n curves from a seeded generator, skipping those ``accept`` rejects."""
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        *lam, sign = random_tuple(rng)
        try:
            c = make_rosenhain(*lam, sign)
            if accept is None or accept(c):
                out.append(c)
        except (DegenerateCurve, ValueError, ArithmeticError):
            continue
    return out


@pytest.fixture(scope="session")
def test_curve():
    return make_rosenhain(4, 9, 25, 1)
