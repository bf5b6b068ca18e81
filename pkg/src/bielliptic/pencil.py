"""Families over P^1 = {[s0 : s1]} attached to a Rosenhain curve.

Each fiber is the curve with parameters Lambda_i = (s0 + l_i s1)^2 / l_i and
L = prod(s0 + l_i s1) / l, so L^2 = prod Lambda_i.  The elliptic fibration
Y^2 = X (X^2 - 2 B X + B^2 - 4 A^2) has A, B the fiberwise a, b; it carries the
two-torsion sections T1, T2, T3 and three explicit sections S1, S2, S3.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .elliptic import (
    ECPoint,
    WeierstrassCurve,
    closed_form_points,
    ec_add,
    ec_mul_small,
    ec_neg,
    ec_sum,
    named_points,
)
from .exactalg import (
    AlgebraicScalar,
    HomogPoly2,
    RatFunc,
    UniPoly,
    common_field,
    discriminant,
    form_gcd,
    multiplicity_on,
    poly_gcd,
    poly_squarefree,
    reduce_modulo,
    resultant,
    squarefree_part,
)
from .genus2 import IdentityFailed, RosenhainCurve
from .quartic import MONOMIAL_TABLE, BiellipticQuartic, branch_locus, check_smooth, evaluate_table


class SingularFiber(ValueError):
    pass


class NotASection(ValueError):
    pass


class DegenerateSpecialPoint(ValueError):
    pass


# ---------------------------------------------------------------- coefficients


def lambda_functions(c: RosenhainCurve):
    """Lambda_0..Lambda_3 (quadratic forms) and L (quartic form)."""
    F = c.field
    lins = [HomogPoly2.linear(F, 1, li) for li in c.lam]
    lams = tuple(lin * lin / li for lin, li in zip(lins, c.lam))
    L = lins[0] * lins[1] * lins[2] * lins[3] / c.l
    return {"Lambda": lams, "L": L}


@dataclass
class PencilCoefficients:
    curve: RosenhainCurve
    Lambda: tuple
    L: HomogPoly2
    A: HomogPoly2
    B: HomogPoly2
    C: HomogPoly2 | None = None
    D: HomogPoly2 | None = None
    E: HomogPoly2 | None = None

    @property
    def field(self):
        return self.curve.field

    def fiber_curve(self, s0, s1) -> WeierstrassCurve:
        F = common_field(s0, s1, self.A.coeffs[0])
        return WeierstrassCurve(F.coerce(self.A(s0, s1)), F.coerce(self.B(s0, s1)))

    def fiber_rosenhain(self, s0, s1) -> RosenhainCurve:
        """The genus-two fiber: lambda_i -> Lambda_i(s), l -> L(s)."""
        F = common_field(s0, s1, self.A.coeffs[0])
        return RosenhainCurve(tuple(F.coerce(x(s0, s1)) for x in self.Lambda), F.coerce(self.L(s0, s1)))

    def smooth_at(self, s0, s1):
        return self.fiber_curve(s0, s1).is_smooth()

    def to_json(self):
        out = {k: getattr(self, k).to_json() for k in ("A", "B")}
        for k in ("C", "D", "E"):
            if getattr(self, k) is not None:
                out[k] = getattr(self, k).to_json()
        return out


def pencil_AB(c: RosenhainCurve) -> PencilCoefficients:
    lf = lambda_functions(c)
    L0, L1, L2, L3 = lf["Lambda"]
    A = (L0 - L1) * (L2 - L3)
    B = 4 * (L0 * L1) + 4 * (L2 * L3) - 2 * ((L0 + L1) * (L2 + L3))
    return PencilCoefficients(c, lf["Lambda"], lf["L"], A, B)


def pencil_CDE(c: RosenhainCurve, table=MONOMIAL_TABLE) -> PencilCoefficients:
    """A and B together with the quartic coefficients c, d, e composed with Lambda and L."""
    P = pencil_AB(c)
    P.C, P.D, P.E = (evaluate_table(table[k], P.Lambda, P.L) for k in ("c", "d", "e"))
    return P


def ab_symmetry_residuals(P: PencilCoefficients):
    """l^2 A(s0,s1) - A(l s1, s0), the same for B, and the odd coefficients."""
    l = P.curve.l
    out = {}
    for name in ("A", "B"):
        f = getattr(P, name)
        out[f"{name}_symmetry"] = (f * (l * l) - f.substitute(0, l, 1, 0)).coeffs
        out[f"{name}_odd"] = tuple(x for k, x in enumerate(f.coeffs) if k % 2)
    return {k: [x for x in v if not x.is_zero()] for k, v in out.items()}


def fiber_quartic(P: PencilCoefficients, s0, s1, check=True) -> BiellipticQuartic:
    C = P.fiber_curve(s0, s1)
    F = C.field
    Q = BiellipticQuartic(C.a, C.b, *(F.coerce(g(s0, s1)) for g in (P.C, P.D, P.E)))
    return check_smooth(Q) if check else Q


# ---------------------------------------------------------------- sections


@dataclass(frozen=True)
class SectionFormula:
    """A section given by forms [xi : eta : rho], or a combination of other sections."""

    name: str
    forms: tuple | None = None
    combo: tuple = ()  # ((coefficient, SectionFormula), ...)

    def is_derived(self):
        return self.forms is None

    def to_json(self):
        if self.forms is not None:
            return {"name": self.name, "xi": self.forms[0].to_json(), "eta": self.forms[1].to_json(), "rho": self.forms[2].to_json()}
        return {"name": self.name, "combination": [[k, S.name] for k, S in self.combo]}


def _prod(items):
    out = None
    for x in items:
        out = x if out is None else out * x
    return out


def basic_sections(P: PencilCoefficients):
    """O, T1, T2, T3, S1, S2, S3 as coordinate forms [xi : eta : rho]."""
    c = P.curve
    F = c.field
    l0, l1, l2, l3 = c.lam
    l = c.l
    one = HomogPoly2(F, [1])

    def q(x, y):
        # s0^2 - x y s1^2
        return HomogPoly2(F, [-(x * y), 0, 1])

    s0s1 = HomogPoly2(F, [0, 1, 0])
    zero4 = HomogPoly2(F, [0] * 5)
    pairs = [(l1, l2), (l1, l3), (l2, l3)]
    s1_xi = _prod([q(l0, x) * (x - l0) for x in (l2, l3)]) * (4 * l0 * l1)
    s1_eta = one * (l0 * l0 * l * l)
    s1_rho = _prod([q(l0, x) * (x - l0) for x in (l1, l2, l3)]) * 8
    s2_xi = _prod([q(x, l1) * (x - l0) for x in (l2, l3)]) * (4 * l)
    s2_eta = one * l**3
    s2_rho = _prod([q(a, b) for a, b in pairs]) * (8 * (l0 - l1) * (l0 - l2) * (l0 - l3))
    s3_xi = s0s1 * _prod([q(a, b) for a in (l0, l1) for b in (l2, l3)]) * (4 * l)
    s3_eta = s0s1**3 * l**3
    s3_rho = _prod([q(l0, x) for x in (l1, l2, l3)]) * _prod([q(a, b) for a, b in pairs]) * (-8)
    A, B = P.A, P.B
    return {
        "O": SectionFormula("O", (zero4, HomogPoly2(F, [0]), one)),
        "T1": SectionFormula("T1", (zero4, one, HomogPoly2(F, [0] * 7))),
        "T2": SectionFormula("T2", (B - 2 * A, one, HomogPoly2(F, [0] * 7))),
        "T3": SectionFormula("T3", (B + 2 * A, one, HomogPoly2(F, [0] * 7))),
        "S1": SectionFormula("S1", (s1_xi, s1_eta, s1_rho)),
        "S2": SectionFormula("S2", (s2_xi, s2_eta, s2_rho)),
        "S3": SectionFormula("S3", (s3_xi, s3_eta, s3_rho)),
    }


def derived_section(name, *terms):
    """Section sum k_i * S_i; ``terms`` are (k, SectionFormula) pairs."""
    return SectionFormula(name, None, tuple(terms))


def section_eval(P: PencilCoefficients, S: SectionFormula, s0, s1) -> ECPoint:
    C = P.fiber_curve(s0, s1)
    if not C.is_smooth():
        raise SingularFiber(f"fiber [{s0}:{s1}] is singular")
    return _eval_on(C, S, s0, s1)


def _eval_on(C, S, s0, s1):
    if S.forms is None:
        pts = [ec_mul_small(C, k, _eval_on(C, T, s0, s1)) for k, T in S.combo]
        return ec_sum(C, pts)
    F = C.field
    xi, eta, rho = (F.coerce(f(s0, s1)) for f in S.forms)
    pt = ECPoint.from_projective(xi, eta, rho)
    if not C.contains(pt):
        raise NotASection(f"{S.name} leaves the fiber at [{s0}:{s1}]")
    return pt


def p_formulas(P: PencilCoefficients, s0, s1):
    """p1, p2 of the fiber (lambda -> Lambda(s)) and p3 = image of [4 s0 s1 : 1 : L(-s0, s1)]."""
    R = P.fiber_rosenhain(s0, s1)
    La = R.lam
    if any(x.is_zero() for x in La) or len(set(La)) < 4:
        raise SingularFiber("the genus-two fiber degenerates here")
    pts = named_points(R)
    C = P.fiber_curve(s0, s1)
    X = 4 * s0 * s1
    y = P.L(-s0, s1)
    k = (La[0] - La[2]) * (La[0] - La[3])
    den = X - La[0]
    if den.is_zero():
        raise SingularFiber("p3 lies over the point at infinity of this fiber")
    p3 = C.point(4 * k * (X - La[1]) / den, 8 * (La[0] - La[1]) * k * y / (den * den))
    return {"p1": pts["p1"], "p2": pts["p2"], "p3": p3}


def section_relations(P: PencilCoefficients, s0, s1, sections=None):
    """Residual names among p1 = S1, p2 = -S2 + S3, p3 = -(S2 + S3) at one fiber."""
    S = sections or basic_sections(P)
    C = P.fiber_curve(s0, s1)
    ev = {k: section_eval(P, S[k], s0, s1) for k in ("S1", "S2", "S3")}
    p = p_formulas(P, s0, s1)
    checks = {
        "p1=S1": p["p1"] == ev["S1"],
        "p2=-S2+S3": p["p2"] == ec_add(C, ec_neg(C, ev["S2"]), ev["S3"]),
        "p3=-(S2+S3)": p["p3"] == ec_neg(C, ec_add(C, ev["S2"], ev["S3"])),
    }
    return [k for k, ok in checks.items() if not ok]


# ---------------------------------------------------------------- choice table


_CHOICE_ROWS = {
    1: ((2, 0, 0), (1, 1, 1), (1, -1, 1)),
    2: ((2, 0, 0), (1, 1, -1), (1, -1, -1)),
    3: ((0, 2, 0), (1, 1, 1), (-1, 1, 1)),
    4: ((0, 2, 0), (1, 1, -1), (-1, 1, -1)),
}


def choice_table(P: PencilCoefficients, row=1, sign=1, sections=None):
    """S'_1, S'_2, S'_3 of one row as derived sections."""
    if row not in _CHOICE_ROWS or sign not in (1, -1):
        raise ValueError("row must be 1..4 and sign +-1")
    S = sections or basic_sections(P)
    out = {}
    for i, vec in enumerate(_CHOICE_ROWS[row], start=1):
        terms = tuple((sign * k, S[f"S{j}"]) for j, k in enumerate(vec, start=1) if k)
        out[f"S'{i}"] = derived_section(f"S'{i}", *terms)
    return out


def choice_sum_vector(row, sign=1):
    return tuple(sign * sum(v[j] for v in _CHOICE_ROWS[row]) for j in range(3))


# ---------------------------------------------------------------- involutions


_J_ACTION = {
    1: {"S1": ((1, "S1"),), "S2": ((1, "S2"),), "S3": ((-1, "S3"),)},
    2: {"S1": ((1, "S2"),), "S2": ((1, "S1"),), "S3": ((1, "S3"),)},
    3: {"S1": ((-1, "S2"),), "S2": ((-1, "S1"),), "S3": ((1, "S3"),)},
}


class AffineChart:
    """The chart s -> [1 : s/mu] with mu^2 = l, where the j's act by s -> -s, 1/s, -1/s."""

    def __init__(self, P: PencilCoefficients):
        self.pencil = P
        self.field, self.mu = P.field.adjoin_sqrt(P.curve.l)

    def point(self, s):
        s = self.field.coerce(s)
        return self.field.one(), s / self.mu

    def curve(self, s):
        return self.pencil.fiber_curve(*self.point(s))

    def section(self, S, s):
        return section_eval(self.pencil, S, *self.point(s))

    def antisymplectic(self, index, s, pt: ECPoint):
        s = self.field.coerce(s)
        if pt.is_zero():
            return self.image_fiber(index, s), pt
        if index == 1:
            return -s, pt
        k = s**4
        if index == 2:
            return 1 / s, ECPoint(pt.xi / k, pt.eta, pt.rho / (k * s * s))
        if index == 3:
            return -1 / s, ECPoint(pt.xi / k, pt.eta, -pt.rho / (k * s * s))
        raise ValueError("involution index must be 1, 2 or 3")

    @staticmethod
    def image_fiber(index, s):
        return {1: -s, 2: 1 / s, 3: -1 / s}[index]

    def symplectic(self, index, s, pt: ECPoint, row=1, sign=1):
        """iota_l(p) = -j_l(p) + S'_l at the image fiber."""
        t, img = self.antisymplectic(index, s, pt)
        Sp = choice_table(self.pencil, row, sign)[f"S'{index}"]
        C = self.curve(t)
        return t, ec_add(C, ec_neg(C, img), self.section(Sp, t))


def fiber_involutions(chart: AffineChart, s, pt: ECPoint, row=1, sign=1):
    out = {}
    for k in (1, 2, 3):
        out[f"j{k}"] = chart.antisymplectic(k, s, pt)
        out[f"iota{k}"] = chart.symplectic(k, s, pt, row, sign)
    return out


def antisymplectic_table_failures(chart: AffineChart, s, sections=None):
    """Entries of the j-action table on S1, S2, S3 (and O, T's) that fail at fiber s."""
    S = sections or basic_sections(chart.pencil)
    bad = []
    for idx, action in _J_ACTION.items():
        for name in ("O", "T1", "T2", "T3", "S1", "S2", "S3"):
            t, img = chart.antisymplectic(idx, s, chart.section(S[name], s))
            if not chart.curve(t).contains(img):
                bad.append((idx, name, "off fiber"))
                continue
            terms = action.get(name, ((1, name),))
            expect = chart.section(derived_section("x", *((k, S[n]) for k, n in terms)), t)
            if img != expect:
                bad.append((idx, name, "wrong image"))
    return bad


def symplectic_failures(chart: AffineChart, s, pt: ECPoint, row=1, sign=1):
    """Check iota_l^2 = id and iota_3 = iota_1 iota_2 = iota_2 iota_1 at one point."""
    bad = []
    for k in (1, 2, 3):
        t, q = chart.symplectic(k, s, pt, row, sign)
        if chart.symplectic(k, t, q, row, sign) != (s, pt):
            bad.append(f"iota{k}^2")
    t1, q1 = chart.symplectic(1, *chart.symplectic(2, s, pt, row, sign), row, sign)
    t2, q2 = chart.symplectic(2, *chart.symplectic(1, s, pt, row, sign), row, sign)
    t3, q3 = chart.symplectic(3, s, pt, row, sign)
    if (t1, q1) != (t3, q3):
        bad.append("iota3=iota1*iota2")
    if (t2, q2) != (t3, q3):
        bad.append("iota3=iota2*iota1")
    return bad


# ---------------------------------------------------------------- special fibers


def _p2_form(F, l, l0, li, lj, lk):
    return HomogPoly2(
        F,
        [
            l0 * li * lj * lk * (l0 + li - lj - lk),
            -2 * l * (l0 * li - lj * lk),
            l0 * li * (lj + lk) - lj * lk * (l0 + li),
        ],
    )


SPECIAL_TRIPLES = ((1, 2, 3), (2, 1, 3), (3, 1, 2))


def special_fiber_polynomials(c: RosenhainCurve):
    """p4 (where 2 S1 + S3 = O) and p2^(i,j,k) (where 2 S1 + S3 is two-torsion)."""
    F = c.field
    lam, l = c.lam, c.l
    e1 = sum(lam, F.zero())
    e3 = sum((lam[i] * lam[j] * lam[k] for i, j, k in itertools.combinations(range(4), 3)), F.zero())
    e4 = lam[0] * lam[1] * lam[2] * lam[3]
    out = {"p4": HomogPoly2(F, [2 * e4 * l, -(e4 * e1), 0, e3, -2 * l])}
    for i, j, k in SPECIAL_TRIPLES:
        out[f"p2_{i}{j}{k}"] = _p2_form(F, l, lam[0], lam[i], lam[j], lam[k])
    return out


@dataclass
class SpecialPoint:
    triple: tuple
    sign: int
    s0: AlgebraicScalar
    s1: AlgebraicScalar
    m: AlgebraicScalar
    m_squared_matches: dict = field(default_factory=dict)

    def to_json(self):
        return {
            "triple": list(self.triple),
            "sign": self.sign,
            "s": [self.s0.to_json(), self.s1.to_json()],
            "m": self.m.to_json(),
            "m_squared_matches": self.m_squared_matches,
        }


def six_base_points(c: RosenhainCurve):
    """The roots of the p2^(i,j,k) written as [(l0+li-lj-lk) l : l0 li - lj lk +- m (l0-lj)(l0-lk)].

    m is read off from the quadratic formula; the two candidate closed forms
    for m^2 are compared against it and recorded.
    """
    polys = special_fiber_polynomials(c)
    lam, l = c.lam, c.l
    l0 = lam[0]
    out = []
    for i, j, k in SPECIAL_TRIPLES:
        p = polys[f"p2_{i}{j}{k}"]
        li, lj, lk = lam[i], lam[j], lam[k]
        sigma = l0 + li - lj - lk
        if sigma.is_zero():
            raise DegenerateSpecialPoint(f"l0 + l{i} - l{j} - l{k} = 0")
        # in t = s1/s0 the form reads p[2] + p[1] t + p[0] t^2
        disc = p.coeffs[1] ** 2 - 4 * p.coeffs[0] * p.coeffs[2]
        if disc.is_zero():
            raise DegenerateSpecialPoint(f"p2_{i}{j}{k} has a double root")
        F, root = p.field.adjoin_sqrt(disc)
        scale = 2 * l * (l0 - lj) * (l0 - lk)
        m = root / scale
        variants = {
            "first": (li - lj) * (li - lk) / ((l0 - lj) * (l0 - lk)),
            "second": (li - lj) * (li - lk) / ((l0 - li) * (l0 - lj)),
        }
        matches = {name: bool(m * m == v) for name, v in variants.items()}
        for sgn in (1, -1):
            s0 = F.coerce(sigma * l)
            s1 = F.coerce(l0 * li - lj * lk) + sgn * m * (l0 - lj) * (l0 - lk)
            if not p(s0, s1).is_zero():
                raise DegenerateSpecialPoint(f"root of p2_{i}{j}{k} failed to vanish")
            out.append(SpecialPoint((i, j, k), sgn, s0, s1, m, matches))
    return out


def base_points_distinct(c: RosenhainCurve):
    """All six roots are distinct: each quadratic is square-free and the three are coprime."""
    polys = special_fiber_polynomials(c)
    quads = [polys[f"p2_{i}{j}{k}"] for i, j, k in SPECIAL_TRIPLES]
    if any(discriminant(q).is_zero() for q in quads):
        return False
    return all(not resultant(p, q).is_zero() for p, q in itertools.combinations(quads, 2))


def special_point_report(P: PencilCoefficients, pt: SpecialPoint, sections=None):
    """Smoothness of the fiber quartic, its branch locus and the section sum at one special point."""
    s0, s1 = pt.s0, pt.s1
    R = P.fiber_rosenhain(s0, s1)
    C = P.fiber_curve(s0, s1)
    Q = fiber_quartic(P, s0, s1, check=False)
    if Q.e.is_zero() or Q.delta_E().is_zero() or Q.delta_D().is_zero():
        raise DegenerateSpecialPoint(f"fiber quartic at {pt.triple}{'+-'[pt.sign < 0]} is singular")
    cf = closed_form_points(R)
    q1, q2 = cf["twoP1"], cf["p1_plus_p2"]
    expected = [C.zero(), q1, q2, ec_neg(C, ec_add(C, q1, q2))]
    branch_locus(Q, C, expected)
    Sp = choice_table(P, 1, 1, sections)
    ev = {k: section_eval(P, S, s0, s1) for k, S in Sp.items()}
    total = ec_sum(C, ev.values())
    p = named_points(R)
    p1, p2 = p["p1"], p["p2"]
    identities = {
        "S'1=2p1": ev["S'1"] == ec_add(C, p1, p1),
        "S'3=p1+p2": ev["S'3"] == ec_add(C, p1, p2),
        "S'2=-3p1-p2": ev["S'2"] == ec_neg(C, ec_add(C, ec_mul_small(C, 3, p1), p2)),
    }
    return {
        "point": pt.to_json(),
        "quartic": {k: getattr(Q, k).to_json() for k in "abcde"},
        "smooth": True,
        "branch_points_match": True,
        "section_sum_is_O": total.is_zero(),
        "section_identities": identities,
    }


# ---------------------------------------------------------------- census


@dataclass
class FiberCensus:
    kind: str
    records: list
    total: int
    extra: dict = field(default_factory=dict)

    def to_json(self):
        return {"kind": self.kind, "total": self.total, "records": self.records, **self.extra}


def _coprime(forms):
    return all(form_gcd(p, q).degree == 0 for p, q in itertools.combinations(forms, 2))


def elliptic_census(P: PencilCoefficients) -> FiberCensus:
    A, B = P.A, P.B
    classes = (("T2=T3", "A", A), ("T1=T2", "B-2A", B - 2 * A), ("T1=T3", "B+2A", B + 2 * A))
    records = []
    for collision, locus, f in classes:
        sq = squarefree_part(f)
        records.append({"locus": locus, "collision": collision, "roots": sq.degree, "multiplicity_in_discriminant": 2})
    disc = A * (B - 2 * A) * (B + 2 * A)
    total = squarefree_part(disc).degree
    extra = {
        "coprime": _coprime([f for _, _, f in classes]),
        "smooth_at_0_and_inf": not A(0, 1).is_zero() and not A(1, 0).is_zero()
        and not (B - 2 * A)(0, 1).is_zero() and not (B + 2 * A)(0, 1).is_zero()
        and not (B - 2 * A)(1, 0).is_zero() and not (B + 2 * A)(1, 0).is_zero(),
    }
    return FiberCensus("elliptic", records, total, extra)


def genus2_census(P: PencilCoefficients) -> FiberCensus:
    lams = P.Lambda
    diff = _prod([lams[i] - lams[j] for i, j in itertools.combinations(range(4), 2)])
    lins = _prod([HomogPoly2.linear(P.field, 1, li) for li in P.curve.lam])
    d = squarefree_part(diff).degree
    e = squarefree_part(lins).degree
    records = [
        {"locus": "Lambda_i = Lambda_j", "roots": d},
        {"locus": "Lambda_i = 0", "roots": e},
    ]
    return FiberCensus("genus2", records, d + e, {"coprime": _coprime([diff, lins])})


def fiber_census(P: PencilCoefficients):
    from .kummer import eprime_census

    return {"elliptic": elliptic_census(P), "genus2": genus2_census(P), "eprime": eprime_census(P.curve)}


# ---------------------------------------------------------------- heights


def _section_functions(P, S, param, cache):
    """(X, Y) of S as rational functions of sigma, or None for O."""
    if S.name in cache and S.forms is not None:
        return cache[S.name]
    A, B = param["A"], param["B"]
    if S.forms is None:
        acc = None
        for k, T in S.combo:
            pt = _section_functions(P, T, param, cache)
            if k < 0:
                pt = None if pt is None else (pt[0], -pt[1])
            for _ in range(abs(k)):
                acc = _rf_add(A, B, acc, pt)
        return acc
    xi, eta, rho = (param["sub"](f) for f in S.forms)
    if eta.is_zero():
        out = None
    else:
        out = (RatFunc(xi, eta), RatFunc(rho, eta))
    cache[S.name] = out
    return out


def _rf_add(A, B, p, q):
    if p is None:
        return q
    if q is None:
        return p
    (x1, y1), (x2, y2) = p, q
    if x1 == x2:
        if (y1 + y2).is_zero():
            return None
        m = (3 * x1 * x1 - 4 * B * x1 + (B * B - 4 * A * A)) / (2 * y1)
    else:
        m = (y2 - y1) / (x2 - x1)
    x3 = m * m + 2 * B - x1 - x2
    return x3, m * (x1 - x3) - y1


class HeightCalculator:
    """Intersection numbers and heights of sections, computed on a chart sigma.

    The chart [s0 : s1] = [shift*sigma + 1 : sigma] leaves only the fiber
    [shift : 1] at sigma = infinity; the shift is chosen so that fiber is
    smooth and all listed sections are pairwise distinct there.
    """

    def __init__(self, P: PencilCoefficients, sections: dict, shift=None):
        self.pencil = P
        self.sections = sections
        F = P.field
        self.field = F
        self.shift = self._pick_shift() if shift is None else F.coerce(shift)
        c = self.shift

        def sub(f: HomogPoly2) -> UniPoly:
            return f.substitute(c, 1, 1, 0).dehomogenize()

        A, B = sub(P.A), sub(P.B)
        self.param = {"sub": sub, "A": RatFunc(A), "B": RatFunc(B)}
        self._cache = {}
        self.funcs = {name: _section_functions(P, S, self.param, self._cache) for name, S in sections.items()}
        self.nodes = []
        for f, node_x in ((A, B), (B - 2 * A, None), (B + 2 * A, None)):
            self.nodes.append((poly_squarefree(f), node_x))

    def _pick_shift(self):
        F = self.field
        for k in itertools.count(2):
            for c in (F.coerce(k), F.coerce(Fraction(-1, k)), F.coerce(-k)):
                if not self.pencil.smooth_at(c, F.one()):
                    continue
                try:
                    pts = [section_eval(self.pencil, S, c, F.one()) for S in self.sections.values()]
                except (SingularFiber, NotASection):
                    continue
                if len(set(pts)) == len(pts):
                    return c
            if k > 200:
                raise RuntimeError("no admissible chart shift found")

    def is_polynomial_section(self, name):
        """X = x/z^2, Y = y/z^3 with the degree bound of a section (no pole at the chart's infinity)."""
        fs = self.funcs[name]
        if fs is None:
            return True
        X, Y = fs
        if X.den**3 != Y.den**2:
            return False
        return X.num.degree <= X.den.degree + 4 and Y.num.degree <= Y.den.degree + 6

    def _through_node(self, X, f, node_x):
        """Square-free factor of f at whose roots the section passes through the node."""
        target = X - (0 if node_x is None else RatFunc(node_x))
        return poly_gcd(f, target.num) if not target.is_zero() else f

    def with_zero(self, name):
        fs = self.funcs[name]
        if fs is None:
            return -2
        return Fraction(fs[0].den.degree, 2)

    def intersection(self, n1, n2):
        if n1 == n2:
            return -2
        f1, f2 = self.funcs[n1], self.funcs[n2]
        if f1 is None:
            return self.with_zero(n2)
        if f2 is None:
            return self.with_zero(n1)
        (X1, Y1), (X2, Y2) = f1, f2
        dX, dY = X1 - X2, Y1 - Y2
        if dX.is_zero() and dY.is_zero():
            return -2
        G = poly_gcd(dX.num, dY.num) if not dX.is_zero() else dY.num.monic()
        if dY.is_zero():
            G = dX.num.monic()
        common_poles = poly_squarefree(poly_gcd(X1.den, X2.den)) if poly_gcd(X1.den, X2.den).degree > 0 else None
        if common_poles is not None:
            while True:
                g = poly_gcd(G, common_poles)
                if g.degree <= 0:
                    break
                G = G.exact_div(g)
        # a common passage through a node counts one less after resolving the A1 point
        finite = G.degree - self.node_count(n1, n2)
        at_zero = 0
        if common_poles is not None:
            W = X1 / Y1 - X2 / Y2
            at_zero = multiplicity_on(W.num, common_poles)
        return finite + at_zero

    def node_count(self, n1, n2):
        f1, f2 = self.funcs[n1], self.funcs[n2]
        if f1 is None or f2 is None:
            return 0
        total = 0
        for f, node_x in self.nodes:
            both = poly_gcd(self._through_node(f1[0], f, node_x), self._through_node(f2[0], f, node_x))
            total += both.degree
        return total

    def height(self, n1, n2):
        if self.funcs[n1] is None or self.funcs[n2] is None:
            return Fraction(0)
        o1, o2 = self.with_zero(n1), self.with_zero(n2)
        return Fraction(2) + o1 + o2 - self.intersection(n1, n2) - Fraction(self.node_count(n1, n2), 2)

    def matrices(self, order=None):
        names = list(order or self.sections)
        labels = ["F"] + names

        def meet(a, b):
            if "F" in (a, b):
                return Fraction(0 if a == b else 1)
            return Fraction(self.intersection(a, b))

        inter = [[meet(a, b) for b in labels] for a in labels]
        heights = [[self.height(a, b) for b in names] for a in names]
        return inter, heights


TABLE_ORDER = ("O", "T1", "T2", "T3", "S'1", "S'2", "S'3", "S1", "S2", "S3")

REFERENCE_INTERSECTIONS = (
    (0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1),
    (1, -2, 0, 0, 0, 0, 0, 0, 0, 0, 2),
    (1, 0, -2, 0, 0, 2, 2, 2, 0, 0, 0),
    (1, 0, 0, -2, 0, 2, 2, 2, 0, 0, 0),
    (1, 0, 0, 0, -2, 2, 2, 2, 0, 0, 0),
    (1, 0, 2, 2, 2, -2, 0, 0, 0, 2, 4),
    (1, 0, 2, 2, 2, 0, -2, 0, 1, 1, 2),
    (1, 0, 2, 2, 2, 0, 0, -2, 1, 3, 2),
    (1, 0, 0, 0, 0, 0, 1, 1, -2, 2, 1),
    (1, 0, 0, 0, 0, 2, 1, 3, 2, -2, 1),
    (1, 2, 0, 0, 0, 4, 2, 2, 1, 1, -2),
)

REFERENCE_HEIGHTS = (
    (0,) * 10,
    (0,) * 10,
    (0,) * 10,
    (0,) * 10,
    (0, 0, 0, 0, 4, 2, 2, 2, 0, 0),
    (0, 0, 0, 0, 2, 4, 2, 1, 1, 2),
    (0, 0, 0, 0, 2, 2, 4, 1, -1, 2),
    (0, 0, 0, 0, 2, 1, 1, 1, 0, 0),
    (0, 0, 0, 0, 0, 1, -1, 0, 1, 0),
    (0, 0, 0, 0, 0, 2, 2, 0, 0, 2),
)


def table_sections(P: PencilCoefficients):
    S = basic_sections(P)
    S.update(choice_table(P, 1, 1, S))
    return {k: S[k] for k in TABLE_ORDER}


def height_tables(P: PencilCoefficients, shift=None):
    """Intersection (with F) and height matrices of O, T_i, S'_i, S_i."""
    calc = HeightCalculator(P, table_sections(P), shift)
    for name in TABLE_ORDER:
        if not calc.is_polynomial_section(name):
            raise NotASection(f"{name} violates the section degree bound")
    return calc.matrices(TABLE_ORDER)


def table_mismatches(inter, heights):
    bad = []
    labels = ("F",) + TABLE_ORDER
    for i, row in enumerate(REFERENCE_INTERSECTIONS):
        for j, v in enumerate(row):
            if inter[i][j] != v:
                bad.append(("intersection", labels[i], labels[j], inter[i][j], v))
    for i, row in enumerate(REFERENCE_HEIGHTS):
        for j, v in enumerate(row):
            if heights[i][j] != v:
                bad.append(("height", TABLE_ORDER[i], TABLE_ORDER[j], heights[i][j], v))
    return bad


# ---------------------------------------------------------------- genus-three pencil


def genus3_pencil(c: RosenhainCurve):
    """Fiber coefficients Lambda_i of y^2 = prod(x^2 - Lambda_i z^2) and the product identity.

    With x = x1 z2 + x2 z1, y = y1 y2 / l and s0 z = x1 x2, s1 z = z1 z2 the
    fiber equation times z^8 factors into two copies of the central curve.
    Returns the Lambda forms and the sympy residual (zero on success).
    """
    import sympy

    lams, l, gens, rels = c.sympy_data()
    x1, x2, z1, z2, y1, y2 = sympy.symbols("x1 x2 z1 z2 y1 y2")
    x = x1 * z2 + x2 * z1
    y = y1 * y2 / l
    # Lambda_i z^2 = (s0 z + lambda_i s1 z)^2 / lambda_i
    fiber = y**2 - sympy.Mul(*[x**2 - (x1 * x2 + li * z1 * z2) ** 2 / li for li in lams])
    h1 = y1**2 - sympy.Mul(*[x1**2 - li * z1**2 for li in lams])
    h2 = y2**2 - sympy.Mul(*[x2**2 - li * z2**2 for li in lams])
    num, _ = sympy.fraction(sympy.together(fiber))
    res = reduce_modulo(num, [h1, h2] + rels, [y1, y2] + gens)
    return {"Lambda": lambda_functions(c)["Lambda"], "residual": res}


def check_genus3_pencil(c: RosenhainCurve):
    out = genus3_pencil(c)
    if out["residual"] != 0:
        raise IdentityFailed("genus3_pencil", out["residual"])
    return out
