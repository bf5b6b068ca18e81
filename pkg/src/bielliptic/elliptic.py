"""The elliptic curve rho^2 eta = xi (xi^2 - 2 b xi eta + (b^2 - 4 a^2) eta^2).

Points are projective triples [xi : eta : rho].  The neutral element is
O = [0 : 0 : 1]; the rational two-torsion is T1 = [0 : 1 : 0] and
T2, T3 = [b -+ 2a : 1 : 0].  The biquadratic model is
W^2 = u^4 + b u^2 v^2 + a^2 v^4 in weighted coordinates [u : v : W].
"""

from __future__ import annotations

from dataclasses import dataclass

from .exactalg import AlgebraicScalar, common_field
from .genus2 import RosenhainCurve


class OffCurve(ValueError):
    pass


class MismatchWithGroupLaw(AssertionError):
    pass


class DegenerateConfiguration(ValueError):
    pass


class DegenerateQuartic(ValueError):
    pass


@dataclass(frozen=True)
class WeierstrassCurve:
    a: AlgebraicScalar
    b: AlgebraicScalar

    @property
    def field(self):
        return common_field(self.a, self.b)

    @property
    def a4(self):
        return self.b * self.b - 4 * self.a * self.a

    def discriminant(self):
        return 16 * self.a**2 * self.a4**2

    def is_smooth(self):
        return not self.discriminant().is_zero()

    def rhs(self, x):
        return x * (x * x - 2 * self.b * x + self.a4)

    def contains(self, P: "ECPoint") -> bool:
        if P.is_zero():
            return True
        return P.eta * P.rho**2 == self.rhs(P.xi) if P.eta == 1 else (P.xi.is_zero())

    def point(self, xi, rho):
        F = common_field(self.a, self.b, xi, rho)
        P = ECPoint(F.coerce(xi), F.one(), F.coerce(rho))
        if not self.contains(P):
            raise OffCurve(f"({xi}, {rho}) is not on the curve")
        return P

    def zero(self):
        F = self.field
        return ECPoint(F.zero(), F.zero(), F.one())

    def two_torsion(self):
        F = self.field
        zero, one = F.zero(), F.one()
        return {
            "T1": ECPoint(zero, one, zero),
            "T2": ECPoint(self.b - 2 * self.a, one, zero),
            "T3": ECPoint(self.b + 2 * self.a, one, zero),
        }

    def to_json(self):
        return {"a": self.a.to_json(), "b": self.b.to_json()}


@dataclass(frozen=True)
class ECPoint:
    """Projective point normalised to eta = 1, or the neutral element [0:0:1]."""

    xi: AlgebraicScalar
    eta: AlgebraicScalar
    rho: AlgebraicScalar

    @classmethod
    def from_projective(cls, xi, eta, rho):
        F = common_field(xi, eta, rho)
        xi, eta, rho = F.coerce(xi), F.coerce(eta), F.coerce(rho)
        if eta.is_zero():
            if not xi.is_zero() or rho.is_zero():
                raise OffCurve("the only point with eta = 0 is [0:0:1]")
            return cls(F.zero(), F.zero(), F.one())
        return cls(xi / eta, F.one(), rho / eta)

    def is_zero(self):
        return self.eta.is_zero()

    def __eq__(self, other):
        if not isinstance(other, ECPoint):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        return self.xi == other.xi and self.rho == other.rho

    def __hash__(self):
        return hash((self.xi, self.eta, self.rho))

    def to_json(self):
        return [self.xi.to_json(), self.eta.to_json(), self.rho.to_json()]

    def __repr__(self):
        return f"[{self.xi!r}:{self.eta!r}:{self.rho!r}]"


def _check(C, *points):
    for P in points:
        if not C.contains(P):
            raise OffCurve(f"{P} is not on the curve")


def ec_neg(C: WeierstrassCurve, P: ECPoint) -> ECPoint:
    if P.is_zero():
        return P
    return ECPoint(P.xi, P.eta, -P.rho)


def ec_add(C: WeierstrassCurve, P: ECPoint, Q: ECPoint, check=True) -> ECPoint:
    """Chord-tangent addition with the case split at O, P = -Q and doubling."""
    if check:
        _check(C, P, Q)
    if P.is_zero():
        return Q
    if Q.is_zero():
        return P
    x1, y1, x2, y2 = P.xi, P.rho, Q.xi, Q.rho
    if x1 == x2:
        if (y1 + y2).is_zero():
            return C.zero()
        m = (3 * x1 * x1 - 4 * C.b * x1 + C.a4) / (2 * y1)
    else:
        m = (y2 - y1) / (x2 - x1)
    x3 = m * m + 2 * C.b - x1 - x2
    y3 = m * (x1 - x3) - y1
    F = x3.field
    return ECPoint(x3, F.one(), y3)


def ec_double(C, P, check=True):
    return ec_add(C, P, P, check)


def ec_sub(C, P, Q, check=True):
    return ec_add(C, P, ec_neg(C, Q), check)


def ec_mul_small(C: WeierstrassCurve, n: int, P: ECPoint) -> ECPoint:
    if not -4 <= n <= 4:
        raise ValueError("multiplier outside [-4, 4]")
    R = C.zero()
    for _ in range(abs(n)):
        R = ec_add(C, R, P)
    return ec_neg(C, R) if n < 0 else R


def ec_sum(C, points):
    R = C.zero()
    for P in points:
        R = ec_add(C, R, P)
    return R


def translate_by_T1(C: WeierstrassCurve, P: ECPoint) -> ECPoint:
    """P + T1 via [(b^2-4a^2) xi eta : xi^2 : -(b^2-4a^2) rho eta]."""
    k = C.a4
    if P.is_zero():
        return C.two_torsion()["T1"]
    return ECPoint.from_projective(k * P.xi * P.eta, P.xi * P.xi, -k * P.rho * P.eta)


# ---------------------------------------------------------------- named points


def curve_from_rosenhain(c: RosenhainCurve) -> WeierstrassCurve:
    l0, l1, l2, l3 = c.lam
    a = (l0 - l1) * (l2 - l3)
    b = 4 * l0 * l1 + 4 * l2 * l3 - 2 * (l0 + l1) * (l2 + l3)
    F = c.field
    return WeierstrassCurve(F.coerce(a), F.coerce(b))


def named_points(c: RosenhainCurve):
    """p1 and p2: the images of [1:0:1] and [0:1:l] on Q."""
    l0, l1, l2, l3 = c.lam
    C = curve_from_rosenhain(c)
    p1 = C.point(4 * (l0 - l2) * (l0 - l3), 8 * (l0 - l1) * (l0 - l2) * (l0 - l3))
    p2 = C.point(
        4 * l0 * l1 * (l0 - l2) * (l0 - l3) / l0**2,
        8 * c.l * (l0 - l1) * (l0 - l2) * (l0 - l3) / l0**2,
    )
    return {"p1": p1, "p2": p2}


def closed_form_points(c: RosenhainCurve):
    """2 p1, p1 + p2 and p1 - p2 from their closed formulas (no group law)."""
    l0, l1, l2, l3 = c.lam
    l = c.l
    C = curve_from_rosenhain(c)
    s = l0 + l1 + l2 + l3
    e3 = l0 * l1 * l2 + l0 * l1 * l3 + l0 * l2 * l3 + l1 * l2 * l3
    two_p1 = C.point((l0 + l1 - l2 - l3) ** 2, (l0 + l1 - l2 - l3) * (l0 - l1 - l2 + l3) * (l0 - l1 + l2 - l3))
    plus = C.point(4 * (l0 * l1 + l2 * l3 - 2 * l), 8 * (l * s - e3))
    minus = C.point(4 * (l0 * l1 + l2 * l3 + 2 * l), 8 * (-l * s - e3))
    return {"twoP1": two_p1, "p1_plus_p2": plus, "p1_minus_p2": minus}


def closed_form_2p1_p1pm_p2(c: RosenhainCurve):
    """Closed forms, checked against the group law; raises MismatchWithGroupLaw."""
    C = curve_from_rosenhain(c)
    pts = named_points(c)
    closed = closed_form_points(c)
    law = {
        "twoP1": ec_double(C, pts["p1"]),
        "p1_plus_p2": ec_add(C, pts["p1"], pts["p2"]),
        "p1_minus_p2": ec_sub(C, pts["p1"], pts["p2"]),
    }
    for key, P in closed.items():
        if P != law[key]:
            raise MismatchWithGroupLaw(f"{key}: closed form {P} != group law {law[key]}")
    return closed


# ---------------------------------------------------------------- biquadratic model


@dataclass(frozen=True)
class QuarticModelPoint:
    """[u : v : W] on W^2 = u^4 + b u^2 v^2 + a^2 v^4, weights (1, 1, 2).

    Normalised to v = 1, or to u = 1 when v = 0.
    """

    u: AlgebraicScalar
    v: AlgebraicScalar
    W: AlgebraicScalar

    @classmethod
    def normalise(cls, u, v, W):
        F = common_field(u, v, W)
        u, v, W = F.coerce(u), F.coerce(v), F.coerce(W)
        if not v.is_zero():
            return cls(u / v, F.one(), W / (v * v))
        if u.is_zero():
            raise OffCurve("[0:0:W] is not a point")
        return cls(F.one(), F.zero(), W / (u * u))

    def on_model(self, C: WeierstrassCurve):
        u, v = self.u, self.v
        return self.W**2 == u**4 + C.b * u**2 * v**2 + C.a**2 * v**4

    def to_json(self):
        return [self.u.to_json(), self.v.to_json(), self.W.to_json()]


def phi_iso(C: WeierstrassCurve, P: ECPoint) -> QuarticModelPoint:
    """[u:v:W] = [rho eta : -2 xi eta : (rho^2 eta + 2 b xi^2 eta - 2 xi^3) eta].

    The formula degenerates only at O and T1, which go to [1:0:-1] and [1:0:1].
    """
    _check(C, P)
    F = C.field
    if P.is_zero():
        return QuarticModelPoint(F.one(), F.zero(), -F.one())
    if P.xi.is_zero():
        return QuarticModelPoint(F.one(), F.zero(), F.one())
    xi, eta, rho = P.xi, P.eta, P.rho
    return QuarticModelPoint.normalise(
        rho * eta, -2 * xi * eta, (rho * rho * eta + 2 * C.b * xi * xi * eta - 2 * xi**3) * eta
    )


def phi_inverse(C: WeierstrassCurve, Q: QuarticModelPoint) -> ECPoint:
    if not Q.on_model(C):
        raise OffCurve(f"{Q} is not on the biquadratic model")
    F = common_field(C.a, C.b, Q.u)
    if Q.v.is_zero():
        return C.zero() if Q.W == -1 else C.two_torsion()["T1"]
    R, S = Q.u, Q.W
    xi = 2 * (R * R - S) + C.b
    return ECPoint(F.coerce(xi), F.one(), -2 * xi * R)


def model_involutions(C: WeierstrassCurve, Q: QuarticModelPoint):
    """Negation, translation by T1 and their composition on the biquadratic model."""
    if not Q.on_model(C):
        raise OffCurve(f"{Q} is not on the biquadratic model")
    return {
        "negation": QuarticModelPoint.normalise(-Q.u, Q.v, Q.W),
        "translate_T1": QuarticModelPoint.normalise(-Q.u, Q.v, -Q.W),
        "composition": QuarticModelPoint.normalise(Q.u, Q.v, -Q.W),
    }


def model_coords(C, P):
    """(R, S) with phi(P) = [R : 1 : S]."""
    Q = phi_iso(C, P)
    if Q.v.is_zero():
        raise DegenerateConfiguration(f"{P} maps to a point with v = 0")
    return Q.u, Q.W


def three_point_data(C: WeierstrassCurve, q1: ECPoint, q2: ECPoint):
    """R3, S3 of phi(-q1-q2) and the curve coefficients recovered from q1, q2."""
    R1, S1 = model_coords(C, q1)
    R2, S2 = model_coords(C, q2)
    den = R1 * R1 - R2 * R2
    if den.is_zero():
        raise DegenerateConfiguration("R1^2 = R2^2")
    a_sq = R1**2 * R2**2 + (R1**2 * S2**2 - R2**2 * S1**2) / den
    b = -(R1**4 - R2**4 - S1**2 + S2**2) / den
    R3 = (R2 * S1 - R1 * S2) / den
    S3 = -R1 * R2 + (R1 * S1 - R2 * S2) * (R2 * S1 - R1 * S2) / (den * den)
    return {"R1": R1, "S1": S1, "R2": R2, "S2": S2, "R3": R3, "S3": S3, "a_check": a_sq, "b_check": b}


# ---------------------------------------------------------------- general quartics


def jacobian_of_general_quartic(c0, c1, c2, c3, c4):
    """Cubic rho^2 = xi^3 + f xi^2 + g xi + h for W^2 = c4 u^4 + c3 u^3 v + ... + c0 v^4."""
    F = common_field(*(x for x in (c0, c1, c2, c3, c4) if isinstance(x, AlgebraicScalar)))
    c0, c1, c2, c3, c4 = (F.coerce(x) for x in (c0, c1, c2, c3, c4))
    f = 3 * c1**2 - 8 * c0 * c2
    g = 3 * c1**4 - 16 * c0 * c1**2 * c2 + 16 * c0**2 * (c2**2 + c1 * c3) - 64 * c0**3 * c4
    h = (c1**3 - 4 * c0 * c1 * c2 + 8 * c0**2 * c3) ** 2
    disc = f * f * g * g - 4 * g**3 - 4 * f**3 * h + 18 * f * g * h - 27 * h * h
    if disc.is_zero():
        raise DegenerateQuartic("the cubic has a repeated root")
    return {"f": f, "g": g, "h": h}


def scaling_to_normal_form(cubic, C: WeierstrassCurve):
    """k with xi -> k xi carrying xi(xi^2 - 2b xi + b^2 - 4a^2) to the cubic, or None.

    Applies when h = 0, i.e. the cubic has the root xi = 0.
    """
    f, g, h = cubic["f"], cubic["g"], cubic["h"]
    if not h.is_zero() or C.b.is_zero():
        return None
    k = f / (-2 * C.b)
    return k if g == C.a4 * k * k else None
