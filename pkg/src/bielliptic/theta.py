"""Genus-two theta constants and the Rosenhain data they define.

theta[a; b](tau) = sum_n exp(pi i (n + a/2)^T tau (n + a/2) + pi i (n + a/2)^T b)
over n in Z^2, for the ten even characteristics listed in CHARACTERISTICS.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .quartic import MONOMIAL_TABLE, delta_D, evaluate_table


class NotPositiveDefinite(ValueError):
    pass


class NearVanishingTheta(ValueError):
    pass


class CharacteristicTableError(AssertionError):
    pass


# index -> (a, b); a and b are vectors in {0,1}^2
CHARACTERISTICS = {
    1: ((0, 0), (0, 0)),
    2: ((0, 0), (1, 1)),
    3: ((0, 0), (1, 0)),
    4: ((0, 0), (0, 1)),
    5: ((1, 0), (0, 0)),
    6: ((1, 0), (0, 1)),
    7: ((0, 1), (0, 0)),
    8: ((1, 1), (0, 0)),
    9: ((0, 1), (1, 0)),
    10: ((1, 1), (1, 1)),
}


@dataclass(frozen=True)
class ThetaVector:
    values: dict
    radius: int
    tail_bound: float

    def __getitem__(self, k):
        return self.values[k]


def period_matrix(tau):
    t = np.asarray(tau, dtype=complex)
    if t.shape != (2, 2) or abs(t[0, 1] - t[1, 0]) > 1e-14:
        raise NotPositiveDefinite("tau must be a symmetric 2x2 matrix")
    Y = t.imag
    if Y[0, 0] <= 1e-12 or np.linalg.det(Y) <= 1e-12:
        raise NotPositiveDefinite("Im(tau) is not positive definite")
    return t


def tail_bound(tau, radius):
    """Upper bound for the terms with |n|_inf > radius, summed over all characteristics' shifts."""
    ymin = float(np.linalg.eigvalsh(np.asarray(tau).imag)[0])
    total = 0.0
    for k in range(radius + 1, radius + 400):
        # at least 8k lattice points on the shell, each with |n + a/2| >= k - 1/2
        term = 8 * k * math.exp(-math.pi * ymin * (k - 0.5) ** 2)
        total += term
        if term < 1e-300:
            break
    return total


def radius_for(tau, target_tail):
    N = 1
    while tail_bound(tau, N) >= target_tail:
        N += 1
        if N > 500:
            raise NotPositiveDefinite("Im(tau) too ill-conditioned for the requested tail")
    return N


def theta_constant(a, b, tau, radius):
    a = np.asarray(a, dtype=float) / 2
    b = np.asarray(b, dtype=float) / 2
    r = np.arange(-radius, radius + 1)
    n1, n2 = np.meshgrid(r, r, indexing="ij")
    v1, v2 = n1 + a[0], n2 + a[1]
    quad = tau[0, 0] * v1 * v1 + 2 * tau[0, 1] * v1 * v2 + tau[1, 1] * v2 * v2
    terms = np.exp(1j * np.pi * quad + 2j * np.pi * (v1 * b[0] + v2 * b[1])).ravel()
    # correctly rounded sums, so terms below the last ulp cannot shift the value
    return complex(math.fsum(terms.real), math.fsum(terms.imag))


def theta_constants(tau, target_tail=1e-14, table=None) -> ThetaVector:
    t = period_matrix(tau)
    N = radius_for(t, target_tail)
    chars = table or CHARACTERISTICS
    vals = {k: theta_constant(a, b, t, N) for k, (a, b) in chars.items()}
    if not all(cmath.isfinite(v) for v in vals.values()):
        raise NearVanishingTheta("non-finite theta value")
    return ThetaVector(vals, N, tail_bound(t, N))


# ---------------------------------------------------------------- Rosenhain data


def rosenhain_from_tau(tau, target_tail=1e-14, tolerance=1e-8, table=None):
    th = theta_constants(tau, target_tail, table)
    t = th.values
    for k in (2, 4, 5, 7, 9, 10):
        if abs(t[k]) < tolerance:
            raise NearVanishingTheta(f"theta_{k} is {abs(t[k]):.3e}")
    sq = {k: v * v for k, v in t.items()}
    lam = (
        1.0 + 0j,
        sq[1] * sq[3] / (sq[2] * sq[4]),
        sq[3] * sq[8] / (sq[4] * sq[10]),
        sq[1] * sq[8] / (sq[2] * sq[10]),
    )
    l = sq[1] * sq[3] * sq[8] / (sq[2] * sq[4] * sq[10])
    m = {
        (1, 2, 3): t[1] * t[3] * sq[6] / (t[2] * t[4] * sq[5]),
        (2, 1, 3): 1j * t[3] * t[8] * sq[6] / (t[4] * t[10] * sq[7]),
        (3, 1, 2): t[1] * t[8] * sq[6] / (t[2] * t[10] * sq[9]),
    }
    residuals = {"l^2": abs(l * l - lam[0] * lam[1] * lam[2] * lam[3])}
    matches = {}
    for (i, j, k), mv in m.items():
        variants = {
            "first": (lam[i] - lam[j]) * (lam[i] - lam[k]) / ((lam[0] - lam[j]) * (lam[0] - lam[k])),
            "second": (lam[i] - lam[j]) * (lam[i] - lam[k]) / ((lam[0] - lam[i]) * (lam[0] - lam[j])),
        }
        for name, v in variants.items():
            residuals[f"m{i}{j}{k}^2 {name}"] = abs(mv * mv - v)
        matches[f"{i}{j}{k}"] = [n for n in variants if residuals[f"m{i}{j}{k}^2 {n}"] < tolerance]
    gaps = [abs(lam[p] - lam[q]) for p in range(4) for q in range(p + 1, 4)]
    return {
        "lambda": lam,
        "l": l,
        "m": m,
        "residuals": residuals,
        "m_variant_matches": matches,
        "min_lambda_gap": min(gaps + [abs(x) for x in lam]),
        "theta": th,
    }


def validate_characteristics(n_samples=20, seed=0, tolerance=1e-8, table=None):
    """Accept the characteristic table only if every identity holds for random tau."""
    rng = np.random.default_rng(seed)
    worst = {}
    for _ in range(n_samples):
        tau = random_tau(rng)
        out = rosenhain_from_tau(tau, tolerance=tolerance, table=table)
        res = out["residuals"]
        ok = res["l^2"] < tolerance and all(out["m_variant_matches"][k] for k in ("123", "213", "312"))
        ok = ok and out["min_lambda_gap"] > tolerance
        if not ok:
            raise CharacteristicTableError(f"identities fail at tau = {tau.tolist()}: {res}")
        for k, v in res.items():
            worst[k] = max(worst.get(k, 0.0), v)
    return worst


def random_tau(rng):
    """Symmetric tau with well-conditioned imaginary part."""
    X = rng.uniform(-0.5, 0.5, (2, 2))
    X = (X + X.T) / 2
    off = rng.uniform(-0.3, 0.3)
    Y = np.array([[1.0 + rng.uniform(0, 0.5), off], [off, 1.0 + rng.uniform(0, 0.5)]])
    return X + 1j * Y


# ---------------------------------------------------------------- floating pipeline


def _cancellation(total, magnitude):
    return abs(total) / magnitude if magnitude else 0.0


def _abs_table(terms, lam, l):
    """Sum of |term| over a table, the natural scale of its value."""
    return evaluate_table([(abs(c), e) for c, e in terms], [abs(x) for x in lam], abs(l))


def float_quartic(lam, l):
    """a, b, c, d, e of the fiber quartic for complex lambda, l, with relative sizes of e and Delta_D."""
    l0, l1, l2, l3 = lam
    a = (l0 - l1) * (l2 - l3)
    b = 4 * l0 * l1 + 4 * l2 * l3 - 2 * (l0 + l1) * (l2 + l3)
    c, d, e = (evaluate_table(MONOMIAL_TABLE[k], lam, l) for k in ("c", "d", "e"))
    e_rel = _cancellation(e, _abs_table(MONOMIAL_TABLE["e"], lam, l))
    # Delta_D = -first^3 + second^2 on the normalized quartic (e = 1)
    cn, dn = c / e, d / e
    first = (cn * cn - b - 4 * dn) ** 2 - 12 * dn * (b + dn)
    second = (
        54 * a * a * cn * cn - cn**6 + 3 * (b + 4 * dn) * cn**4
        - 3 * (b * b + 2 * b * dn + 10 * dn * dn) * cn * cn + (b - 2 * dn) ** 3
    )
    dd = delta_D(a, b, cn, dn, 1)
    dd_rel = _cancellation(dd, abs(first) ** 3 + abs(second) ** 2)
    de = 16 * a * a * (b * b - 4 * a * a) ** 2
    de_rel = _cancellation(de, 16 * abs(a) ** 2 * (abs(b) ** 2 + 4 * abs(a) ** 2) ** 2)
    return {"a": a, "b": b, "c": c, "d": d, "e": e, "e_rel": e_rel, "delta_D_rel": dd_rel, "delta_E_rel": de_rel}


def _float_points(lam, l):
    """2 p1, p1 + p2 and -3 p1 - p2 from the closed forms."""
    l0, l1, l2, l3 = lam
    s = l0 + l1 + l2 + l3
    e3 = l0 * l1 * l2 + l0 * l1 * l3 + l0 * l2 * l3 + l1 * l2 * l3
    q1 = ((l0 + l1 - l2 - l3) ** 2, (l0 + l1 - l2 - l3) * (l0 - l1 - l2 + l3) * (l0 - l1 + l2 - l3))
    q2 = (4 * (l0 * l1 + l2 * l3 - 2 * l), 8 * (l * s - e3))
    return q1, q2


def _float_add(b, a4, P, Q):
    (x1, y1), (x2, y2) = P, Q
    m = (y2 - y1) / (x2 - x1)
    x3 = m * m + 2 * b - x1 - x2
    return x3, m * (x1 - x3) - y1


def float_branch_check(lam, l):
    """Residuals of the branch-locus identities for the quartic at (lam, l).

    Each branch point maps to (R, W) on the quotient; R must be a root of the
    fixed-line cubic, W must match the quotient map, (R, W) must lie on
    W^2 = R^4 + b R^2 + a^2, and the three roots must sum to the Vieta value.
    """
    q = float_quartic(lam, l)
    a, b, c, d, e = q["a"], q["b"], q["c"], q["d"], q["e"]
    a4 = b * b - 4 * a * a
    q1, q2 = _float_points(lam, l)
    x3, y3 = _float_add(b, a4, q1, q2)
    pts = [q1, q2, (x3, -y3)]
    cubic = [d * d - a * a * e * e, 2 * c * d, c * c + 2 * d * e - b * e * e, 2 * c * e]
    res = {"cubic": 0.0, "W": 0.0, "quotient": 0.0, "on_curve": 0.0}
    Rs = []
    for xi, rho in pts:
        R = -rho / (2 * xi)
        S = (rho * rho + 2 * b * xi * xi - 2 * xi**3) / (4 * xi * xi)
        Rs.append(R)
        terms = [cubic[k] * R**k for k in range(4)]
        res["cubic"] = max(res["cubic"], _cancellation(sum(terms), sum(map(abs, terms))))
        terms = [S, R * R, c / e * R, d / e]
        res["W"] = max(res["W"], _cancellation(sum(terms), sum(map(abs, terms))))
        terms = [S * S, -(R**4), -b * R * R, -a * a]
        res["quotient"] = max(res["quotient"], _cancellation(sum(terms), sum(map(abs, terms))))
        terms = [rho * rho, -(xi**3), 2 * b * xi * xi, -a4 * xi]
        res["on_curve"] = max(res["on_curve"], _cancellation(sum(terms), sum(map(abs, terms))))
    terms = Rs + [cubic[2] / cubic[3]]
    res["branch_sum"] = _cancellation(sum(terms), sum(map(abs, terms)))
    return res, q


def _special_points_float(lam, l, m):
    l0 = lam[0]
    out = []
    for (i, j, k), mv in m.items():
        li, lj, lk = lam[i], lam[j], lam[k]
        for sgn in (1, -1):
            s0 = (l0 + li - lj - lk) * l
            s1 = l0 * li - lj * lk + sgn * mv * (l0 - lj) * (l0 - lk)
            p2 = l0 * li * lj * lk * (l0 + li - lj - lk) * s1 * s1 - 2 * l * (l0 * li - lj * lk) * s0 * s1 + (
                l0 * li * (lj + lk) - lj * lk * (l0 + li)
            ) * s0 * s0
            scale = abs(s0) ** 2 + abs(s1) ** 2
            out.append(((i, j, k), sgn, s0, s1, abs(p2) / (scale * max(1.0, abs(l) ** 3))))
    return out


def fiber_data_float(lam, l, s0, s1):
    Lam = tuple((s0 + x * s1) ** 2 / x for x in lam)
    L = (s0 + lam[0] * s1) * (s0 + lam[1] * s1) * (s0 + lam[2] * s1) * (s0 + lam[3] * s1) / l
    return Lam, L


def quartic_pipeline(lam, l, m, tolerance=1e-8):
    """The six special-fiber quartics in complex floating point, with identity residuals."""
    rows = []
    for triple, sgn, s0, s1, p2res in _special_points_float(lam, l, m):
        Lam, L = fiber_data_float(lam, l, s0, s1)
        res, q = float_branch_check(Lam, L)
        degenerate = min(q["e_rel"], q["delta_D_rel"], q["delta_E_rel"])
        rows.append({
            "triple": list(triple),
            "sign": sgn,
            "s": [s0, s1],
            "p2_residual": p2res,
            "residuals": res,
            "quartic": {k: q[k] for k in "abcde"},
            "degeneracy": degenerate,
            "passed": p2res < tolerance and max(res.values()) < tolerance and degenerate > tolerance,
        })
    # on lambda0 lambda1 = lambda2 lambda3 the central quartic degenerates for
    # one choice of the square root l, so both signs are reported
    central = {}
    for name, sgn in (("l", 1), ("-l", -1)):
        q = float_quartic(lam, sgn * l)
        central[name] = {"e_rel": q["e_rel"], "delta_D_rel": q["delta_D_rel"]}
    return {
        "special_fibers": rows,
        "central_degeneracy": central,
        "central_degenerate": any(min(v.values()) < tolerance for v in central.values()),
        "passed": all(r["passed"] for r in rows),
    }


def numeric_pipeline(tau, tolerance=1e-8, target_tail=1e-14):
    data = rosenhain_from_tau(tau, target_tail, tolerance)
    out = quartic_pipeline(data["lambda"], data["l"], data["m"], tolerance)
    out.update({
        "lambda": data["lambda"],
        "l": data["l"],
        "theta_radius": data["theta"].radius,
        "tail_bound": data["theta"].tail_bound,
        "residuals": data["residuals"],
        "m_variant_matches": data["m_variant_matches"],
    })
    out["passed"] = out["passed"] and data["residuals"]["l^2"] < tolerance and all(
        data["m_variant_matches"][k] for k in ("123", "213", "312")
    )
    return out


# ---------------------------------------------------------------- exact cross-check


def snap(z, max_den=10**4):
    """Gaussian rational near z (continued-fraction rounding of each part)."""
    return Fraction(z.real).limit_denominator(max_den), Fraction(z.imag).limit_denominator(max_den)


def rational_snapshot(lam, l, max_den=10**4):
    """Rerun the special-fiber quartics exactly at Gaussian rationals near lam.

    lambda1..3 are snapped into Q(i); l is the square root of their product
    nearest the floating l.  The exact quartics (over a tower of square roots
    above Q(i)) are embedded with i -> 1j and compared, for each triple and
    as a set over the two roots of p2, with the floating pipeline run on the
    same snapped input.  Returns the largest relative discrepancy in c/e and
    d/e.
    """
    from .exactalg import QQ
    from .genus2 import RosenhainCurve
    from .pencil import fiber_quartic, pencil_CDE, six_base_points

    Fi, i = QQ.adjoin_sqrt(-1)
    snapped = [Fi.one()] + [Fi.coerce(re) + i * im for re, im in (snap(x, max_den) for x in lam[1:])]
    F, root = Fi.adjoin_sqrt(snapped[0] * snapped[1] * snapped[2] * snapped[3])
    embed = [1j]
    lf = [x.numeric(embed) for x in snapped]
    root_f = root.numeric(embed)
    sign = 1 if abs(root_f - l) <= abs(root_f + l) else -1
    curve = RosenhainCurve(tuple(F.coerce(x) for x in snapped), root * sign)
    l_f = root_f * sign
    m_f = {}
    for a, b, c in ((1, 2, 3), (2, 1, 3), (3, 1, 2)):
        m_f[(a, b, c)] = cmath.sqrt((lf[a] - lf[b]) * (lf[a] - lf[c]) / ((lf[0] - lf[b]) * (lf[0] - lf[c])))
    floats = quartic_pipeline(lf, l_f, m_f)["special_fibers"]
    P = pencil_CDE(curve)
    worst = 0.0
    for pt in six_base_points(curve):
        Q = fiber_quartic(P, pt.s0, pt.s1, check=False)
        ce, de = (Q.c / Q.e).numeric(embed), (Q.d / Q.e).numeric(embed)
        best = min(
            max(
                abs(ce - r["quartic"]["c"] / r["quartic"]["e"]) / max(1.0, abs(ce)),
                abs(de - r["quartic"]["d"] / r["quartic"]["e"]) / max(1.0, abs(de)),
            )
            for r in floats
            if tuple(r["triple"]) == pt.triple
        )
        worst = max(worst, best)
    return {"max_relative_discrepancy": worst, "l_sign": sign, "lambda": [str(x) for x in snapped]}
