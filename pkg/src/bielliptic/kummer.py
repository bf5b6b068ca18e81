"""The Shioda sextic, the fibration E' over [t0 : t1] and the double cover E -> E'.

The sextic z4^2 = z1 z3 prod(l_i^2 z1 - l_i z2 + z3) is a double plane branched
along six lines tangent to the conic z2^2 = 4 z1 z3.  E' has coefficients
A'(t) = t0 t1 A(sqrt t0, sqrt t1) and B'(t) likewise, and psi squares the base.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exactalg import HomogPoly2, reduce_modulo, squarefree_part
from .genus2 import IdentityFailed, RosenhainCurve


# ---------------------------------------------------------------- six lines


# the conic z2^2 - 4 z1 z3 as a symmetric matrix
_CONIC = ((0, 0, -2), (0, 1, 0), (-2, 0, 0))


@dataclass(frozen=True)
class ShiodaSextic:
    curve: RosenhainCurve

    def lines(self):
        """Branch lines as coefficient triples of z1, z2, z3."""
        F = self.curve.field
        out = [(li * li, -li, F.one()) for li in self.curve.lam]
        return out + [(F.one(), F.zero(), F.zero()), (F.zero(), F.zero(), F.one())]

    def sympy_equation(self):
        import sympy

        lams, _, gens, rels = self.curve.sympy_data()
        z1, z2, z3, z4 = sympy.symbols("z1 z2 z3 z4")
        eq = z4**2 - z1 * z3 * sympy.Mul(*[li**2 * z1 - li * z2 + z3 for li in lams])
        return eq, (z1, z2, z3, z4), gens, rels


def _line_basis(line):
    """Two points spanning the line a z1 + b z2 + c z3 = 0."""
    a, b, c = line
    zero, one = a.field.zero(), a.field.one()
    if not c.is_zero():
        return (c, zero, -a), (zero, c, -b)
    if not b.is_zero():
        return (b, -a, zero), (zero, zero, one)
    return (zero, one, zero), (zero, zero, one)


def _conic_form(p, q):
    return sum((_CONIC[i][j] * p[i] * q[j] for i in range(3) for j in range(3)), p[0].field.zero())


def line_tangency(line):
    """Discriminant of the conic restricted to the line, and the contact point when it is zero."""
    p, q = _line_basis(line)
    # restriction: f(u p + v q) = A u^2 + 2 Bc u v + C v^2
    A, Bc, C = _conic_form(p, p), _conic_form(p, q), _conic_form(q, q)
    disc = Bc * Bc - A * C
    point = None
    if disc.is_zero():
        u, v = (-Bc, A) if not A.is_zero() else (A.field.one(), A.field.zero())
        point = tuple(u * pi + v * qi for pi, qi in zip(p, q))
    return disc, point


def six_lines_tangency(s: ShiodaSextic):
    rows = []
    for line in s.lines():
        disc, point = line_tangency(line)
        rows.append({
            "line": [x.to_json() for x in line],
            "discriminant": disc.to_json(),
            "tangent": disc.is_zero(),
            "contact": None if point is None else [x.to_json() for x in point],
        })
    return {"lines": rows, "all_tangent": all(r["tangent"] for r in rows)}


# ---------------------------------------------------------------- E'


def halve_even_form(f: HomogPoly2) -> HomogPoly2:
    """g with g(s0^2, s1^2) = f(s0, s1) for an even form f."""
    if not f.is_even():
        raise ValueError("form is not even")
    return HomogPoly2(f.field, f.coeffs[::2])


def eprime_fibration(c: RosenhainCurve):
    from .pencil import pencil_AB

    P = pencil_AB(c)
    t0t1 = HomogPoly2(c.field, [0, 1, 0])
    return {"A'": halve_even_form(P.A) * t0t1, "B'": halve_even_form(P.B) * t0t1, "pencil": P}


def _order_at_zero(f: HomogPoly2):
    """Power of t0 dividing f (the order at [0:1])."""
    for k, x in enumerate(f.coeffs):
        if not x.is_zero():
            return k
    raise ValueError("zero form")


def eprime_census(c: RosenhainCurve):
    from .pencil import FiberCensus

    E = eprime_fibration(c)
    A, B = E["A'"], E["B'"]
    a2, a4 = B * (-2), B * B - A * A * 4
    disc = A * A * (B * B - A * A * 4) ** 2 * 16
    core = A * (B - A * 2) * (B + A * 2)
    sq = squarefree_part(core)
    marked = []
    for label, order in (("[0:1]", _order_at_zero), ("[1:0]", HomogPoly2.order_at_infinity)):
        ords = (order(a2), order(a4), order(disc))
        marked.append({
            "fiber": label,
            "orders": {"a2": ords[0], "a4": ords[1], "discriminant": ords[2]},
            "type": "I0*" if ords == (1, 2, 6) else "other",
        })
    finite = sq.degree - sum(1 for m in marked if m["orders"]["discriminant"] > 0)
    records = [{"locus": "finite double roots", "roots": finite}] + marked
    return FiberCensus("eprime", records, finite, {"degree_A'": A.degree, "degree_B'": B.degree})


def eprime_normal_form_residual(c: RosenhainCurve, t0, t1):
    """Map the genus-one fiber of Q' at t to the Weierstrass fiber of E' and return the residual.

    With mu_i = (t0 + l_i^2 t1)/l_i and k = t0 t1 the map is
    xi' = 4 k (mu0-mu2)(mu0-mu3)(x-mu1 z)/(x-mu0 z),
    rho' = 8 k (mu0-mu1)(mu0-mu2)(mu0-mu3) Y / (x-mu0 z)^2.
    """
    import sympy

    lams, _, gens, rels = c.sympy_data()
    x, Y = sympy.symbols("x Y")
    t0, t1 = sympy.nsimplify(t0), sympy.nsimplify(t1)
    mu = [(t0 + li**2 * t1) / li for li in lams]
    k = t0 * t1
    xi = 4 * k * (mu[0] - mu[2]) * (mu[0] - mu[3]) * (x - mu[1]) / (x - mu[0])
    rho = 8 * k * (mu[0] - mu[1]) * (mu[0] - mu[2]) * (mu[0] - mu[3]) * Y / (x - mu[0]) ** 2
    Ap, Bp = _sympy_AB(c, t0, t1, lams, gens, primed=True)
    eq = rho**2 - xi * (xi**2 - 2 * Bp * xi + Bp**2 - 4 * Ap**2)
    num, _ = sympy.fraction(sympy.together(eq))
    quartic = Y**2 - k * sympy.Mul(*[x - m for m in mu])
    qnum, _ = sympy.fraction(sympy.together(quartic))
    return reduce_modulo(num, [qnum] + rels, [Y] + gens)


def scalar_sympy(form: HomogPoly2, t0, t1, gens):
    from .exactalg import scalar_to_sympy

    return sum(scalar_to_sympy(x, gens) * t0**k * t1 ** (form.degree - k) for k, x in enumerate(form.coeffs))


def _sympy_AB(c: RosenhainCurve, s0, s1, lams, gens, primed=False):
    """A, B (or A', B' at t = (s0, s1)) as sympy expressions.

    With lambda0 symbolic the forms are rebuilt in sympy; otherwise the exact
    binary forms are converted, so both code paths get exercised.
    """
    import sympy

    if not c.symbolic_lambda0:
        if primed:
            E = eprime_fibration(c)
            return scalar_sympy(E["A'"], s0, s1, gens), scalar_sympy(E["B'"], s0, s1, gens)
        from .pencil import pencil_AB

        P = pencil_AB(c)
        return scalar_sympy(P.A, s0, s1, gens), scalar_sympy(P.B, s0, s1, gens)
    u, v = sympy.symbols("u v")
    L = [(u + li * v) ** 2 / li for li in lams]
    A = (L[0] - L[1]) * (L[2] - L[3])
    B = 4 * L[0] * L[1] + 4 * L[2] * L[3] - 2 * (L[0] + L[1]) * (L[2] + L[3])
    if primed:
        # even in (u, v): substitute u^2 -> s0, v^2 -> s1
        half = lambda f: sympy.expand(f).subs({u: sympy.sqrt(s0), v: sympy.sqrt(s1)}, simultaneous=True)
        return sympy.expand(s0 * s1 * half(A)), sympy.expand(s0 * s1 * half(B))
    return A.subs({u: s0, v: s1}, simultaneous=True), B.subs({u: s0, v: s1}, simultaneous=True)


# ---------------------------------------------------------------- certified identities


def psi_cover_check(c: RosenhainCurve, raise_on_fail=True):
    """psi pulls E' back to s0^6 s1^6 times E, and the (1,1,2) map pulls Q' back to s0^2 s1^2 times Q."""
    import sympy

    lams, _, gens, rels = c.sympy_data()
    s0, s1, xi, eta, rho, X, Z, y = sympy.symbols("s0 s1 xi eta rho X Z y")
    A, B = _sympy_AB(c, s0, s1, lams, gens)
    Ap, Bp = (f.subs({s0: s0**2, s1: s1**2}, simultaneous=True) for f in _sympy_AB(c, s0, s1, lams, gens, primed=True))

    def weier(a, b, u, v, w):
        return w**2 * v - u * (u**2 - 2 * b * u * v + (b**2 - 4 * a**2) * v**2)

    pulled = weier(Ap, Bp, s0**2 * s1**2 * xi, eta, s0**3 * s1**3 * rho)
    diff = sympy.fraction(sympy.together(pulled - s0**6 * s1**6 * weier(A, B, xi, eta, rho)))[0]
    res_psi = reduce_modulo(diff, rels, gens)

    t0, t1 = s0**2, s1**2
    x, z, Yp = X - 2 * s0 * s1 * Z, Z, s0 * s1 * y
    qprime = Yp**2 - t0 * t1 * sympy.Mul(*[x - (t0 + li**2 * t1) / li * z for li in lams])
    q = y**2 - sympy.Mul(*[X - (s0 + li * s1) ** 2 / li * Z for li in lams])
    res_q = reduce_modulo(sympy.fraction(sympy.together(qprime - s0**2 * s1**2 * q))[0], rels, gens)
    report = {"psi_E": res_psi, "psi_Q": res_q}
    if raise_on_fail:
        for name, r in report.items():
            if r != 0:
                raise IdentityFailed(name, r)
    return report


def shioda_coordinate_bridge(c: RosenhainCurve, bridge=None, raise_on_fail=True):
    """[z1:z2:z3:z4] = [t1 z : x : t0 z : l z Y] turns the sextic into l^2 z^2 times Q'.

    ``bridge`` may override the substitution (a function of t0, t1, x, z, Y, l).
    """
    import sympy

    sextic = ShiodaSextic(c)
    eq, (z1, z2, z3, z4), gens, rels = sextic.sympy_equation()
    lams, l, _, _ = c.sympy_data()
    t0, t1, x, z, Y = sympy.symbols("t0 t1 x z Y")
    sub = bridge(t0, t1, x, z, Y, l) if bridge else (t1 * z, x, t0 * z, l * z * Y)
    pulled = eq.subs(dict(zip((z1, z2, z3, z4), sub)), simultaneous=True)
    qprime = Y**2 - t0 * t1 * sympy.Mul(*[x - (t0 + li**2 * t1) / li * z for li in lams])
    target = sympy.together(l**2 * z**2 * qprime)
    res = reduce_modulo(sympy.fraction(sympy.together(pulled - target))[0], rels, gens)
    if raise_on_fail and res != 0:
        raise IdentityFailed("shioda_bridge", res)
    return {"residual": res}
