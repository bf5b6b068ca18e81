"""Genus-two curves in Rosenhain form, their two-torsion, and the covering curves.

The curve is Y^2 = X Z (X - l0 Z)(X - l1 Z)(X - l2 Z)(X - l3 Z) with
Weierstrass points p_i = [l_i : 1 : 0] for i = 0..3, p_4 = [0 : 1 : 0] and
p_5 = [1 : 0 : 0].  Two-torsion classes [p_i - p_j] are indexed by pairs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .exactalg import (
    QQ,
    AlgebraicScalar,
    common_field,
    reduce_modulo,
    scalar_to_sympy,
    tower_relations,
    tower_symbols,
)


class DegenerateCurve(ValueError):
    pass


class IdentityFailed(AssertionError):
    def __init__(self, name, residual):
        super().__init__(f"{name}: nonzero residual {residual}")
        self.name = name
        self.residual = residual


@dataclass(frozen=True)
class RosenhainCurve:
    lam: tuple  # (lambda0, lambda1, lambda2, lambda3)
    l: AlgebraicScalar
    symbolic_lambda0: bool = False

    @property
    def field(self):
        return common_field(self.l, *self.lam)

    def to_json(self):
        return {"lambda": [x.to_json() for x in self.lam], "l": self.l.to_json()}

    def with_l_sign(self, sign):
        return RosenhainCurve(self.lam, self.l * sign, self.symbolic_lambda0)

    def sympy_data(self):
        """Lambda values, l, generators and relations for exact reduction in sympy.

        With ``symbolic_lambda0`` set, lambda0 and l become indeterminates
        tied by l**2 = lambda0*lambda1*lambda2*lambda3.
        """
        import sympy

        F = self.field
        gens = tower_symbols(F)
        rels = tower_relations(F, gens)
        lams = [scalar_to_sympy(x, gens) for x in self.lam]
        if not self.symbolic_lambda0:
            return lams, scalar_to_sympy(self.l, gens), gens, rels
        lam0, lsym = sympy.symbols("lambda0 l")
        lams[0] = lam0
        rel = lsym**2 - lam0 * lams[1] * lams[2] * lams[3]
        return lams, lsym, [lsym] + gens, [rel] + rels


def make_rosenhain(l1, l2, l3, l_sign=1, lambda0=1, symbolic_lambda0=False) -> RosenhainCurve:
    """Rosenhain curve with l = +-sqrt(l0 l1 l2 l3), adjoining the root if needed."""
    if l_sign not in (1, -1):
        raise DegenerateCurve("l_sign must be +1 or -1")
    F = common_field(*(x for x in (l1, l2, l3, lambda0) if isinstance(x, AlgebraicScalar)))
    lam = tuple(F.coerce(x if isinstance(x, AlgebraicScalar) else Fraction(x)) for x in (lambda0, l1, l2, l3))
    for i, x in enumerate(lam):
        if x.is_zero():
            raise DegenerateCurve(f"lambda{i} = 0")
    for i, j in itertools.combinations(range(4), 2):
        if lam[i] == lam[j]:
            raise DegenerateCurve(f"lambda{i} = lambda{j}")
    prod = lam[0] * lam[1] * lam[2] * lam[3]
    _, root = F.adjoin_sqrt(prod)
    return RosenhainCurve(lam, root * l_sign, symbolic_lambda0)


def weierstrass_points(curve: RosenhainCurve):
    one, zero = curve.field.one(), curve.field.zero()
    pts = [(x, one, zero) for x in curve.lam]
    return pts + [(zero, one, zero), (one, zero, zero)]


# ---------------------------------------------------------------- two-torsion


@dataclass(frozen=True)
class TwoTorsionPoint:
    """Class of sum of p_i - p_j; stored as an even subset of {0..5} modulo complement."""

    support: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        s = frozenset(self.support)
        if len(s) % 2 or not s <= set(range(6)):
            raise ValueError("two-torsion support must be an even subset of 0..5")
        if len(s) == 6:
            s = frozenset()
        elif len(s) == 4:
            s = frozenset(range(6)) - s
        object.__setattr__(self, "support", s)

    @classmethod
    def pair(cls, i, j):
        if i == j:
            return cls()
        return cls(frozenset((i, j)))

    def is_identity(self):
        return not self.support

    @property
    def index(self):
        return tuple(sorted(self.support))

    def __add__(self, other):
        return jac2_add(self, other)

    def __repr__(self):
        return "P0" if self.is_identity() else "P" + "".join(map(str, self.index))


IDENTITY = TwoTorsionPoint()
ALL_TWO_TORSION = [IDENTITY] + [TwoTorsionPoint.pair(i, j) for i, j in itertools.combinations(range(6), 2)]


def jac2_add(P: TwoTorsionPoint, Q: TwoTorsionPoint) -> TwoTorsionPoint:
    return TwoTorsionPoint(P.support ^ Q.support)


def weil_pairing(P: TwoTorsionPoint, Q: TwoTorsionPoint) -> int:
    return len(P.support & Q.support) % 2


def is_isotropic(group) -> bool:
    return all(weil_pairing(P, Q) == 0 for P in group for Q in group)


def enumerate_goepel():
    """All maximal isotropic subgroups {0, P, Q, P+Q}."""
    found = set()
    nonzero = ALL_TWO_TORSION[1:]
    for P, Q in itertools.combinations(nonzero, 2):
        if weil_pairing(P, Q) == 0:
            found.add(frozenset((IDENTITY, P, Q, P + Q)))
    return sorted(found, key=lambda g: sorted(p.index for p in g))


def even_eight(P: TwoTorsionPoint):
    """The eight nodes K_ab of the even eight attached to P_ij."""
    if P.is_identity():
        raise ValueError("the identity has no even eight")
    i, j = P.index
    row = lambda k: {tuple(sorted((k, m))) for m in range(6) if m != k}
    return sorted((row(i) | row(j)) - {(i, j)})


# ---------------------------------------------------------------- covering curves


def _covers_report(curve: RosenhainCurve, qc_map=None):
    import sympy

    x, y, z, X, Z, Y = sympy.symbols("x y z X Z Y")
    lams, _, gens, rels = curve.sympy_data()
    c_eq = Y**2 - X * Z * sympy.Mul(*[X - li * Z for li in lams])
    h_eq = y**2 - sympy.Mul(*[x**2 - li * z**2 for li in lams])
    q_eq = y**2 - sympy.Mul(*[X - li * Z for li in lams])
    qc = qc_map or (x**2, z**2, x * y * z)
    pulled_c = c_eq.subs({X: qc[0], Z: qc[1], Y: qc[2]}, simultaneous=True)
    # reduce modulo H's equation, solved for y**2
    res_c = reduce_modulo(pulled_c, [h_eq] + rels, [y] + gens)
    pulled_q = q_eq.subs({X: x**2, Z: z**2}, simultaneous=True)
    res_q = reduce_modulo(pulled_q - h_eq, rels, gens)
    return {"H_to_C": res_c, "H_to_Q": res_q}


def cover_identities(curve: RosenhainCurve, qc_map=None, raise_on_fail=True):
    """Certify that H -> C and H -> Q pull the target equations back into H's ideal.

    ``qc_map`` overrides the triple [X : Z : Y] used for H -> C (for fault tests).
    Returns a dict of residuals, all zero on success.
    """
    report = _covers_report(curve, qc_map)
    if raise_on_fail:
        for name, res in report.items():
            if res != 0:
                raise IdentityFailed(name, res)
    return report
