"""Bielliptic plane quartics (e(w^2-u^2) - c u v - d v^2)^2 = e^2 (u^4 + b u^2 v^2 + a^2 v^4).

The involution [u:v:w] -> [u:v:-w] has quotient W^2 = u^4 + b u^2 v^2 + a^2 v^4
through W = w^2 - u^2 - (c/e) u v - (d/e) v^2.  The coefficients c, d, e
are fixed polynomials in (lambda0, ..., lambda3, l) stored below as monomial
tables; exponents are listed in the order (lambda0, lambda1, lambda2, lambda3, l).
"""

from __future__ import annotations

from dataclasses import dataclass

from .elliptic import (
    DegenerateConfiguration,
    ECPoint,
    QuarticModelPoint,
    WeierstrassCurve,
    closed_form_points,
    curve_from_rosenhain,
    ec_add,
    ec_neg,
    ec_sum,
    model_coords,
    phi_inverse,
    phi_iso,
    three_point_data,
    translate_by_T1,
)
from .exactalg import AlgebraicScalar, HomogPoly2, common_field
from .genus2 import RosenhainCurve

_C_TERMS = (
    (32, (0, 0, 2, 2, 1)), (4, (0, 0, 2, 4, 0)), (-8, (0, 0, 3, 3, 0)), (4, (0, 0, 4, 2, 0)),
    (-32, (0, 1, 1, 2, 1)), (-4, (0, 1, 1, 4, 0)), (-32, (0, 1, 2, 1, 1)), (-4, (0, 1, 2, 3, 0)),
    (-4, (0, 1, 3, 2, 0)), (-4, (0, 1, 4, 1, 0)), (32, (0, 2, 1, 1, 1)), (12, (0, 2, 1, 3, 0)),
    (12, (0, 2, 2, 2, 0)), (12, (0, 2, 3, 1, 0)), (-12, (0, 3, 1, 2, 0)), (-12, (0, 3, 2, 1, 0)),
    (4, (0, 4, 1, 1, 0)), (-32, (1, 0, 1, 2, 1)), (-4, (1, 0, 1, 4, 0)), (-32, (1, 0, 2, 1, 1)),
    (-4, (1, 0, 2, 3, 0)), (-4, (1, 0, 3, 2, 0)), (-4, (1, 0, 4, 1, 0)), (32, (1, 1, 0, 2, 1)),
    (4, (1, 1, 0, 4, 0)), (64, (1, 1, 1, 1, 1)), (16, (1, 1, 1, 3, 0)), (32, (1, 1, 2, 0, 1)),
    (16, (1, 1, 2, 2, 0)), (16, (1, 1, 3, 1, 0)), (4, (1, 1, 4, 0, 0)), (-32, (1, 2, 0, 1, 1)),
    (-12, (1, 2, 0, 3, 0)), (-32, (1, 2, 1, 0, 1)), (-24, (1, 2, 1, 2, 0)), (-24, (1, 2, 2, 1, 0)),
    (-12, (1, 2, 3, 0, 0)), (12, (1, 3, 0, 2, 0)), (16, (1, 3, 1, 1, 0)), (12, (1, 3, 2, 0, 0)),
    (-4, (1, 4, 0, 1, 0)), (-4, (1, 4, 1, 0, 0)), (32, (2, 0, 1, 1, 1)), (12, (2, 0, 1, 3, 0)),
    (12, (2, 0, 2, 2, 0)), (12, (2, 0, 3, 1, 0)), (-32, (2, 1, 0, 1, 1)), (-12, (2, 1, 0, 3, 0)),
    (-32, (2, 1, 1, 0, 1)), (-24, (2, 1, 1, 2, 0)), (-24, (2, 1, 2, 1, 0)), (-12, (2, 1, 3, 0, 0)),
    (32, (2, 2, 0, 0, 1)), (12, (2, 2, 0, 2, 0)), (16, (2, 2, 1, 1, 0)), (12, (2, 2, 2, 0, 0)),
    (-4, (2, 3, 0, 1, 0)), (-4, (2, 3, 1, 0, 0)), (4, (2, 4, 0, 0, 0)), (-12, (3, 0, 1, 2, 0)),
    (-12, (3, 0, 2, 1, 0)), (12, (3, 1, 0, 2, 0)), (16, (3, 1, 1, 1, 0)), (12, (3, 1, 2, 0, 0)),
    (-4, (3, 2, 0, 1, 0)), (-4, (3, 2, 1, 0, 0)), (-8, (3, 3, 0, 0, 0)), (4, (4, 0, 1, 1, 0)),
    (-4, (4, 1, 0, 1, 0)), (-4, (4, 1, 1, 0, 0)), (4, (4, 2, 0, 0, 0)),
)
_D_TERMS = (
    (8, (0, 0, 1, 4, 1)), (-8, (0, 0, 2, 3, 1)), (-8, (0, 0, 3, 2, 1)), (8, (0, 0, 4, 1, 1)),
    (-4, (0, 1, 0, 4, 1)), (-1, (0, 1, 1, 5, 0)), (8, (0, 1, 2, 2, 1)), (-4, (0, 1, 2, 4, 0)),
    (10, (0, 1, 3, 3, 0)), (-4, (0, 1, 4, 0, 1)), (-4, (0, 1, 4, 2, 0)), (-1, (0, 1, 5, 1, 0)),
    (4, (0, 2, 0, 3, 1)), (-4, (0, 2, 1, 2, 1)), (5, (0, 2, 1, 4, 0)), (-4, (0, 2, 2, 1, 1)),
    (-5, (0, 2, 2, 3, 0)), (4, (0, 2, 3, 0, 1)), (-5, (0, 2, 3, 2, 0)), (5, (0, 2, 4, 1, 0)),
    (4, (0, 3, 0, 2, 1)), (-5, (0, 3, 1, 3, 0)), (4, (0, 3, 2, 0, 1)), (10, (0, 3, 2, 2, 0)),
    (-5, (0, 3, 3, 1, 0)), (-4, (0, 4, 0, 1, 1)), (-4, (0, 4, 1, 0, 1)), (-1, (0, 4, 1, 2, 0)),
    (-1, (0, 4, 2, 1, 0)), (2, (0, 5, 1, 1, 0)), (-4, (1, 0, 0, 4, 1)), (-1, (1, 0, 1, 5, 0)),
    (8, (1, 0, 2, 2, 1)), (-4, (1, 0, 2, 4, 0)), (10, (1, 0, 3, 3, 0)), (-4, (1, 0, 4, 0, 1)),
    (-4, (1, 0, 4, 2, 0)), (-1, (1, 0, 5, 1, 0)), (2, (1, 1, 0, 5, 0)), (-2, (1, 1, 2, 3, 0)),
    (-2, (1, 1, 3, 2, 0)), (2, (1, 1, 5, 0, 0)), (-4, (1, 2, 0, 2, 1)), (-1, (1, 2, 0, 4, 0)),
    (1, (1, 2, 1, 3, 0)), (-4, (1, 2, 2, 0, 1)), (1, (1, 2, 3, 1, 0)), (-1, (1, 2, 4, 0, 0)),
    (-5, (1, 3, 0, 3, 0)), (1, (1, 3, 1, 2, 0)), (1, (1, 3, 2, 1, 0)), (-5, (1, 3, 3, 0, 0)),
    (8, (1, 4, 0, 0, 1)), (5, (1, 4, 0, 2, 0)), (5, (1, 4, 2, 0, 0)), (-1, (1, 5, 0, 1, 0)),
    (-1, (1, 5, 1, 0, 0)), (4, (2, 0, 0, 3, 1)), (-4, (2, 0, 1, 2, 1)), (5, (2, 0, 1, 4, 0)),
    (-4, (2, 0, 2, 1, 1)), (-5, (2, 0, 2, 3, 0)), (4, (2, 0, 3, 0, 1)), (-5, (2, 0, 3, 2, 0)),
    (5, (2, 0, 4, 1, 0)), (-4, (2, 1, 0, 2, 1)), (-1, (2, 1, 0, 4, 0)), (1, (2, 1, 1, 3, 0)),
    (-4, (2, 1, 2, 0, 1)), (1, (2, 1, 3, 1, 0)), (-1, (2, 1, 4, 0, 0)), (8, (2, 2, 0, 1, 1)),
    (10, (2, 2, 0, 3, 0)), (8, (2, 2, 1, 0, 1)), (10, (2, 2, 3, 0, 0)), (-8, (2, 3, 0, 0, 1)),
    (-5, (2, 3, 0, 2, 0)), (-2, (2, 3, 1, 1, 0)), (-5, (2, 3, 2, 0, 0)), (-4, (2, 4, 0, 1, 0)),
    (-4, (2, 4, 1, 0, 0)), (4, (3, 0, 0, 2, 1)), (-5, (3, 0, 1, 3, 0)), (4, (3, 0, 2, 0, 1)),
    (10, (3, 0, 2, 2, 0)), (-5, (3, 0, 3, 1, 0)), (-5, (3, 1, 0, 3, 0)), (1, (3, 1, 1, 2, 0)),
    (1, (3, 1, 2, 1, 0)), (-5, (3, 1, 3, 0, 0)), (-8, (3, 2, 0, 0, 1)), (-5, (3, 2, 0, 2, 0)),
    (-2, (3, 2, 1, 1, 0)), (-5, (3, 2, 2, 0, 0)), (10, (3, 3, 0, 1, 0)), (10, (3, 3, 1, 0, 0)),
    (-4, (4, 0, 0, 1, 1)), (-4, (4, 0, 1, 0, 1)), (-1, (4, 0, 1, 2, 0)), (-1, (4, 0, 2, 1, 0)),
    (8, (4, 1, 0, 0, 1)), (5, (4, 1, 0, 2, 0)), (5, (4, 1, 2, 0, 0)), (-4, (4, 2, 0, 1, 0)),
    (-4, (4, 2, 1, 0, 0)), (2, (5, 0, 1, 1, 0)), (-1, (5, 1, 0, 1, 0)), (-1, (5, 1, 1, 0, 0)),
)
_E_TERMS = (
    (4, (0, 0, 0, 3, 1)), (4, (0, 0, 1, 2, 1)), (-1, (0, 0, 1, 4, 0)), (4, (0, 0, 2, 1, 1)),
    (1, (0, 0, 2, 3, 0)), (4, (0, 0, 3, 0, 1)), (1, (0, 0, 3, 2, 0)), (-1, (0, 0, 4, 1, 0)),
    (-4, (0, 1, 0, 2, 1)), (-1, (0, 1, 1, 3, 0)), (-4, (0, 1, 2, 0, 1)), (-6, (0, 1, 2, 2, 0)),
    (-1, (0, 1, 3, 1, 0)), (-4, (0, 2, 0, 1, 1)), (-4, (0, 2, 1, 0, 1)), (5, (0, 2, 1, 2, 0)),
    (5, (0, 2, 2, 1, 0)), (4, (0, 3, 0, 0, 1)), (-3, (0, 3, 1, 1, 0)), (-4, (1, 0, 0, 2, 1)),
    (-1, (1, 0, 1, 3, 0)), (-4, (1, 0, 2, 0, 1)), (-6, (1, 0, 2, 2, 0)), (-1, (1, 0, 3, 1, 0)),
    (-3, (1, 1, 0, 3, 0)), (1, (1, 1, 1, 2, 0)), (1, (1, 1, 2, 1, 0)), (-3, (1, 1, 3, 0, 0)),
    (4, (1, 2, 0, 0, 1)), (5, (1, 2, 0, 2, 0)), (1, (1, 2, 1, 1, 0)), (5, (1, 2, 2, 0, 0)),
    (-1, (1, 3, 0, 1, 0)), (-1, (1, 3, 1, 0, 0)), (-1, (1, 4, 0, 0, 0)), (-4, (2, 0, 0, 1, 1)),
    (-4, (2, 0, 1, 0, 1)), (5, (2, 0, 1, 2, 0)), (5, (2, 0, 2, 1, 0)), (4, (2, 1, 0, 0, 1)),
    (5, (2, 1, 0, 2, 0)), (1, (2, 1, 1, 1, 0)), (5, (2, 1, 2, 0, 0)), (-6, (2, 2, 0, 1, 0)),
    (-6, (2, 2, 1, 0, 0)), (1, (2, 3, 0, 0, 0)), (4, (3, 0, 0, 0, 1)), (-3, (3, 0, 1, 1, 0)),
    (-1, (3, 1, 0, 1, 0)), (-1, (3, 1, 1, 0, 0)), (1, (3, 2, 0, 0, 0)), (-1, (4, 1, 0, 0, 0)),
)

MONOMIAL_TABLE = {"c": _C_TERMS, "d": _D_TERMS, "e": _E_TERMS}


class SingularOrReducible(ValueError):
    def __init__(self, which, message=None):
        super().__init__(message or f"quartic is singular: {which} vanishes")
        self.which = which


class BranchMismatch(AssertionError):
    def __init__(self, point, residual, message):
        super().__init__(message)
        self.point = point
        self.residual = residual


class NotInNormalForm(ValueError):
    pass


def evaluate_table(terms, lam, l):
    """Sum of coefficient * prod(lam_i^e_i) * l^e over the table.

    Works for any ring elements supporting +, * and integer powers, which
    lets the same table serve scalars, binary forms and floats.
    """
    powers = {}

    def power(k, e):
        key = (k, e)
        if key not in powers:
            base = lam[k] if k < 4 else l
            powers[key] = base**e
        return powers[key]

    total = None
    for coeff, exps in terms:
        term = None
        for k, e in enumerate(exps):
            if e:
                term = power(k, e) if term is None else term * power(k, e)
        term = coeff if term is None else term * coeff
        total = term if total is None else total + term
    return total


def cde_coefficients(c: RosenhainCurve, table=MONOMIAL_TABLE):
    return {k: c.field.coerce(evaluate_table(table[k], c.lam, c.l)) for k in ("c", "d", "e")}


# ---------------------------------------------------------------- the quartic


@dataclass(frozen=True)
class BiellipticQuartic:
    a: object
    b: object
    c: object
    d: object
    e: object

    @property
    def field(self):
        return common_field(self.a, self.b, self.c, self.d, self.e)

    def delta_E(self):
        return delta_E(self.a, self.b)

    def delta_D(self):
        return delta_D(self.a, self.b, self.c, self.d, self.e)

    def is_smooth(self):
        return not self.e.is_zero() and not self.delta_E().is_zero() and not self.delta_D().is_zero()

    def quotient_curve(self):
        return WeierstrassCurve(self.a, self.b)

    def fixed_line_cubic(self):
        """Coefficients (low to high) of the cubic in R cut out by w = 0, v = 1."""
        a, b, c, d, e = self.a, self.b, self.c, self.d, self.e
        return [d * d - a * a * e * e, 2 * c * d, c * c + 2 * d * e - b * e * e, 2 * c * e]

    def quotient_W_on_fixed_line(self, R):
        """W at the point [R : 1 : 0] of the fixed line."""
        return -(R * R + self.c / self.e * R + self.d / self.e)

    def ternary(self):
        """Full ternary quartic (e(w^2-u^2)-cuv-dv^2)^2 - e^2(u^4+bu^2v^2+a^2v^4)."""
        a, b, c, d, e = self.a, self.b, self.c, self.d, self.e
        inner = TernaryForm.from_terms({(0, 0, 2): e, (2, 0, 0): -e, (1, 1, 0): -c, (0, 2, 0): -d})
        quart = TernaryForm.from_terms({(4, 0, 0): e * e, (2, 2, 0): b * e * e, (0, 4, 0): a * a * e * e})
        return inner * inner - quart

    def to_json(self):
        out = {k: getattr(self, k).to_json() for k in "abcde"}
        out["ternary"] = self.ternary().to_json()
        return out


def delta_E(a, b):
    return 16 * a**2 * (b * b - 4 * a * a) ** 2


def delta_D(a, b, c, d, e):
    a2 = a * a
    first = (c * c - b * e * e - 4 * d * e) ** 2 - 12 * d * e * e * (b * e + d)
    second = (
        54 * a2 * c**2 * e**4
        - c**6
        + 3 * (b * e + 4 * d) * c**4 * e
        - 3 * (b * b * e * e + 2 * b * d * e + 10 * d * d) * c * c * e * e
        + (b * e - 2 * d) ** 3 * e**3
    )
    return -(first**3) + second**2


def check_smooth(Q: BiellipticQuartic):
    if Q.e.is_zero():
        raise SingularOrReducible("e")
    if Q.delta_E().is_zero():
        raise SingularOrReducible("Delta_E")
    if Q.delta_D().is_zero():
        raise SingularOrReducible("Delta_D")
    return Q


def build_quartic(c: RosenhainCurve, table=MONOMIAL_TABLE) -> BiellipticQuartic:
    C = curve_from_rosenhain(c)
    cde = cde_coefficients(c, table)
    return check_smooth(BiellipticQuartic(C.a, C.b, cde["c"], cde["d"], cde["e"]))


def expected_branch_points(c: RosenhainCurve):
    """O, 2p1, p1+p2 and -3p1-p2."""
    C = curve_from_rosenhain(c)
    cf = closed_form_points(c)
    q1, q2 = cf["twoP1"], cf["p1_plus_p2"]
    return [C.zero(), q1, q2, ec_neg(C, ec_add(C, q1, q2))]


def branch_locus(Q: BiellipticQuartic, C: WeierstrassCurve, candidates):
    """Certify that ``candidates`` are exactly the four branch points.

    The branch points are the images of the fixed line w = 0.  One of them
    is O (the point v = 0); the other three have R-coordinates equal to the
    roots of the cubic ``fixed_line_cubic``.  The candidates pass when that
    cubic equals its leading coefficient times prod (R - R_i) and each
    candidate's W-coordinate matches the quotient map, and the four sum to O.
    """
    if Q.a * Q.a != C.a * C.a or Q.b != C.b:
        raise DegenerateConfiguration("quartic and curve have different quotients")
    pts = list(candidates)
    if len(pts) != 4:
        raise ValueError("need four candidate points")
    zeros = [P for P in pts if P.is_zero()]
    if len(zeros) != 1:
        witness = pts[0] if not zeros else zeros[1]
        raise BranchMismatch(witness, None, "exactly one branch point must be O")
    cubic = Q.fixed_line_cubic()
    roots = []
    for P in pts:
        if P.is_zero():
            continue
        img = phi_iso(C, P)
        if img.v.is_zero():
            raise BranchMismatch(P, None, f"{P} maps to infinity on the quotient")
        R, S = img.u, img.W
        val = ((cubic[3] * R + cubic[2]) * R + cubic[1]) * R + cubic[0]
        if not val.is_zero():
            raise BranchMismatch(P, val, f"{P} is not over the fixed line: cubic residual {val}")
        w_expected = Q.quotient_W_on_fixed_line(R)
        if S != w_expected:
            raise BranchMismatch(P, S - w_expected, f"{P} has the wrong W-sign over the fixed line")
        roots.append(R)
    if len(set(roots)) != 3:
        raise BranchMismatch(pts[1], None, "branch candidates are not distinct")
    # the three roots fill up the cubic: elementary symmetric functions agree
    lead = cubic[3]
    r1, r2, r3 = roots
    sym = [-(r1 * r2 * r3), r1 * r2 + r1 * r3 + r2 * r3, -(r1 + r2 + r3)]
    for k in range(3):
        if cubic[k] != lead * sym[k]:
            raise BranchMismatch(pts[1], cubic[k] - lead * sym[k], "cubic does not split on the candidates")
    total = ec_sum(C, pts)
    if not total.is_zero():
        raise BranchMismatch(total, None, "branch points do not sum to O")
    return pts


# ---------------------------------------------------------------- sign family


def epsilon_coefficients(C: WeierstrassCurve, q1: ECPoint, q2: ECPoint, eps):
    """(K, M) with quotient map W = w^2 - u^2 + K u v - M v^2 for the signs eps."""
    e1, e2, e3 = eps
    R1, S1 = model_coords(C, q1)
    R2, S2 = model_coords(C, q2)
    if (R1 * R1 - R2 * R2).is_zero():
        raise DegenerateConfiguration("R1^2 = R2^2")
    den = e1 * R1 - e2 * R2
    K = e1 * R1 + e2 * R2 + e3 * (e2 * S1 - e1 * S2) / den
    M = e1 * e2 * R1 * R2 - e3 * (R1 * S2 - R2 * S1) / den
    return K, M


def epsilon_family(C: WeierstrassCurve, q1: ECPoint, q2: ECPoint, eps) -> BiellipticQuartic:
    K, M = epsilon_coefficients(C, q1, q2, eps)
    F = common_field(C.a, C.b, K, M)
    return BiellipticQuartic(F.coerce(C.a), F.coerce(C.b), -K, F.coerce(M), F.one())


def epsilon_quartic_parts(C, q1, q2, eps):
    """(a2, a4) of the form w^4 - 2 a2 w^2 + a4 as binary forms in (u, v)."""
    e1, e2, e3 = eps
    K, M = epsilon_coefficients(C, q1, q2, eps)
    d = three_point_data(C, q1, q2)
    F = common_field(C.a, C.b, K, M, d["R3"])
    a2 = HomogPoly2(F, [M, -K, 1])
    lin = lambda r: HomogPoly2(F, [-r, 1])  # u - r v
    v = HomogPoly2(F, [1, 0])
    a4 = lin(e1 * d["R1"]) * lin(e2 * d["R2"]) * lin(e3 * d["R3"]) * v * (-2 * K)
    return a2, a4


def common_quotient_form(C: WeierstrassCurve, q1: ECPoint, q2: ECPoint):
    """The quotient quartic written through the three points (all signs +)."""
    d = three_point_data(C, q1, q2)
    R1, S1, R2, S2, R3 = d["R1"], d["S1"], d["R2"], d["S2"], d["R3"]
    F = common_field(C.a, R3)
    K = R1 + R2 + (S1 - S2) / (R1 - R2)
    M = R1 * R2 - (R1 * S2 - R2 * S1) / (R1 - R2)
    lin = lambda r: HomogPoly2(F, [-r, 1])
    v = HomogPoly2(F, [1, 0])
    sq = HomogPoly2(F, [M, -K, 1])
    return lin(R1) * lin(R2) * lin(R3) * v * (2 * K) + sq * sq


def epsilon_branch_expected(C: WeierstrassCurve, q1: ECPoint, q2: ECPoint, eps):
    """Branch set read off from [e1 R1 : 1 : e2 e3 S1], ... and O.

    A sign on R alone negates the point, a sign on W alone is translation by
    T1 composed with negation, and both together are translation by T1.
    """
    e1, e2, e3 = eps
    q3 = ec_neg(C, ec_add(C, q1, q2))

    def act(q, sr, sw):
        if sr == 1 and sw == 1:
            return q
        if sr == -1 and sw == 1:
            return ec_neg(C, q)
        if sr == -1 and sw == -1:
            return translate_by_T1(C, q)
        return translate_by_T1(C, ec_neg(C, q))

    return [act(q1, e1, e2 * e3), act(q2, e2, e1 * e3), act(q3, e3, e1 * e2), C.zero()]


EPSILON_TABLE = (
    # (eps, pt1, pt2, pt3) with entries (sign, plus_T1)
    ((1, 1, 1), (1, 0), (1, 0), (1, 0)),
    ((-1, -1, -1), (-1, 0), (-1, 0), (-1, 0)),
    ((1, -1, -1), (1, 0), (1, 1), (1, 1)),
    ((-1, 1, 1), (-1, 0), (-1, 1), (-1, 1)),
    ((-1, -1, 1), (1, 1), (1, 1), (1, 0)),
    ((1, 1, -1), (-1, 1), (-1, 1), (-1, 0)),
    ((-1, 1, -1), (1, 1), (1, 0), (1, 1)),
    ((1, -1, 1), (-1, 1), (-1, 0), (-1, 1)),
)


def epsilon_table_row(C, q1, q2, row):
    """Branch points listed in the eight-row table, as group-law expressions."""
    eps, *entries = row
    q3 = ec_neg(C, ec_add(C, q1, q2))
    out = []
    for q, (sign, plus_t1) in zip((q1, q2, q3), entries):
        P = q if sign == 1 else ec_neg(C, q)
        out.append(translate_by_T1(C, P) if plus_t1 else P)
    return eps, out + [C.zero()]


# ---------------------------------------------------------------- extra automorphism


def extra_involution(Q: BiellipticQuartic):
    """alpha^2 = d/e when a = +-d/e, else None."""
    ratio = Q.d / Q.e
    if Q.a == ratio or Q.a == -ratio:
        return ratio
    return None


def extra_involution_residual(Q: BiellipticQuartic, alpha_sq=None):
    """F(alpha^2 v, u, alpha w) - k F(u, v, w) with k read off; zero means invariance."""
    alpha_sq = alpha_sq if alpha_sq is not None else extra_involution(Q)
    if alpha_sq is None:
        raise ValueError("no extra involution")
    F = Q.ternary()
    field, alpha = common_field(alpha_sq, *F.coeffs.values()).adjoin_sqrt(alpha_sq)
    G = F.substitute([(0, alpha_sq, 0), (1, 0, 0), (0, 0, alpha)])
    return G.residual_against(F)


# ---------------------------------------------------------------- ternary forms


class TernaryForm:
    """Sparse ternary form {(i, j, k): coefficient} for u^i v^j w^k."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = {m: c for m, c in coeffs.items() if not _is_zero(c)}

    @classmethod
    def from_terms(cls, terms):
        return cls(dict(terms))

    @property
    def degree(self):
        return max((sum(m) for m in self.coeffs), default=0)

    def __add__(self, other):
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out[m] + c if m in out else c
        return TernaryForm(out)

    def __neg__(self):
        return TernaryForm({m: -c for m, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, TernaryForm):
            return TernaryForm({m: c * other for m, c in self.coeffs.items()})
        out = {}
        for m1, c1 in self.coeffs.items():
            for m2, c2 in other.coeffs.items():
                m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
                out[m] = out[m] + c1 * c2 if m in out else c1 * c2
        return TernaryForm(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        result = TernaryForm({(0, 0, 0): 1})
        for _ in range(n):
            result = result * self
        return result

    def is_zero(self):
        return not self.coeffs

    def partial(self, var):
        out = {}
        for m, c in self.coeffs.items():
            if m[var]:
                mm = list(m)
                mm[var] -= 1
                out[tuple(mm)] = c * m[var]
        return TernaryForm(out)

    def polar(self, point):
        """First polar sum_i p_i dF/dx_i."""
        total = TernaryForm({})
        for var, p in enumerate(point):
            if not _is_zero(p):
                total = total + self.partial(var) * p
        return total

    def substitute(self, rows):
        """F(L0, L1, L2) where L_i = rows[i] . (u, v, w)."""
        lins = [TernaryForm({(1, 0, 0): r[0], (0, 1, 0): r[1], (0, 0, 1): r[2]}) for r in rows]
        total = TernaryForm({})
        for (i, j, k), c in self.coeffs.items():
            total = total + (lins[0] ** i) * (lins[1] ** j) * (lins[2] ** k) * c
        return total

    def residual_against(self, other):
        """self - k other for the k matching one nonzero coefficient."""
        if other.is_zero():
            return self
        m, c = next(iter(sorted(other.coeffs.items())))
        k = self.coeffs.get(m, 0) / c
        return self - other * k

    def w_parts(self):
        """Binary coefficients a_j(u, v) of w^(4-j), as {j: {(i, jj): c}}."""
        d = self.degree
        parts = {}
        for (i, j, k), c in self.coeffs.items():
            parts.setdefault(d - k, {})[(i, j)] = c
        return parts

    def to_json(self):
        return [{"u": m[0], "v": m[1], "w": m[2], "c": c.to_json() if hasattr(c, "to_json") else str(c)}
                for m, c in sorted(self.coeffs.items())]

    def __repr__(self):
        return " + ".join(f"({c!r})*u^{m[0]}*v^{m[1]}*w^{m[2]}" for m, c in sorted(self.coeffs.items())) or "0"


def _is_zero(c):
    return c.is_zero() if hasattr(c, "is_zero") else c == 0


def polar_cubic(T: TernaryForm, point):
    return T.polar(point)


def polar_conditions(T: TernaryForm):
    """Conditions of the polar characterisation for u0 = [0:0:1] and the line w = 0.

    (i): the polar cubic at u0 contains the line w = 0 (so the tangents at
    the four points of w = 0 pass through u0).  (ii): the third polar at u0
    is the line w = 0 itself.
    """
    if T.degree != 4:
        raise NotInNormalForm("not a quartic")
    u0 = (0, 0, 1)
    cubic = polar_cubic(T, u0)
    cond_i = all(m[2] >= 1 for m in cubic.coeffs)
    third = cubic.polar(u0).polar(u0)
    cond_ii = bool(third.coeffs) and all(m == (0, 0, 1) for m in third.coeffs)
    return {"polar_cubic": cubic, "line_in_polar_cubic": cond_i, "third_polar_is_line": cond_ii,
            "passes": cond_i and cond_ii}


def bielliptic_family_form(a, b, c, d, e, g):
    """w^4 + w^2 (u^2 + a v^2) + b u^4 + c u^3 v + d u^2 v^2 + e u v^3 + g v^4."""
    return TernaryForm({(0, 0, 4): 1, (2, 0, 2): 1, (0, 2, 2): a, (4, 0, 0): b, (3, 1, 0): c,
                        (2, 2, 0): d, (1, 3, 0): e, (0, 4, 0): g})


def satellite_conic_closed_form(a, c, d, e):
    """-u^2 a c e + u^2 a d^2/4 - v^2 c e + v^2 d^2/4 - w^2 c e a + w^2 d a^2/4."""
    from fractions import Fraction

    q = Fraction(1, 4)
    return TernaryForm({(2, 0, 0): -a * c * e + q * a * d * d, (0, 2, 0): -c * e + q * d * d,
                        (0, 0, 2): -c * e * a + q * d * a * a})


def satellite_conic_of_fixed_line(T: TernaryForm):
    """q with T = w^2 q + a4(u, v) for a normal-form quartic.

    With l = w the four tangents at T cap {w = 0} multiply to a4(u, v), so
    q is the conic in T = l1 l2 l3 l4 + l^2 q.
    """
    q = {}
    for (i, j, k), cf in T.coeffs.items():
        if k == 0:
            continue
        if k < 2:
            raise NotInNormalForm("odd power of w present")
        q[(i, j, k - 2)] = cf
    return TernaryForm(q)


def conic_polar_is_line_w(S: TernaryForm):
    """Polar of the conic S with respect to u0 = [0:0:1] equals the line w = 0."""
    pol = S.partial(2)
    return bool(pol.coeffs) and all(m == (0, 0, 1) for m in pol.coeffs)


def satellite_tests(Q: BiellipticQuartic):
    T = Q.ternary()
    cond = polar_conditions(T)
    sat = satellite_conic_of_fixed_line(T)
    return {
        "line_in_polar_cubic": cond["line_in_polar_cubic"],
        "third_polar_is_line": cond["third_polar_is_line"],
        "satellite_polar_is_line": conic_polar_is_line_w(sat),
        "passes": cond["passes"] and conic_polar_is_line_w(sat),
    }
