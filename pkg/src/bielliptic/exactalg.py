"""Exact scalars over iterated quadratic extensions of Q, and polynomial algebra.

A field handle is a :class:`QuadraticTower`; its elements are
:class:`AlgebraicScalar` values whose coordinates are rationals in the
power basis of the adjoined square roots.  An element of a level-k tower
stores 2**k fractions: the first half is the part in the parent field, the
second half the coefficient of the newest square root.

Polynomials come in two flavours: :class:`UniPoly` (dense, univariate) and
:class:`HomogPoly2` (dense binary forms in s0, s1).
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from math import isqrt
from numbers import Rational


class ExactAlgebraError(ValueError):
    pass


# ---------------------------------------------------------------- fields


def _coords_add(x, y):
    return tuple(a + b for a, b in zip(x, y))


def _coords_sub(x, y):
    return tuple(a - b for a, b in zip(x, y))


class QuadraticTower:
    """Q(sqrt(d1), ..., sqrt(dk)), each radicand a non-square in the level below."""

    __slots__ = ("parent", "radicand", "level", "_key")

    def __init__(self, parent=None, radicand=None):
        self.parent = parent
        self.radicand = radicand
        self.level = 0 if parent is None else parent.level + 1
        self._key = () if parent is None else parent._key + (radicand.coords,)

    def __eq__(self, other):
        return isinstance(other, QuadraticTower) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        if self.parent is None:
            return "QQ"
        return f"{self.parent!r}[sqrt({self.radicand})]"

    @property
    def dim(self):
        return 1 << self.level

    def radicands(self):
        out = []
        f = self
        while f.parent is not None:
            out.append(f.radicand)
            f = f.parent
        return out[::-1]

    def is_subfield_of(self, other):
        f = other
        while f is not None:
            if f == self:
                return True
            f = f.parent
        return False

    def __call__(self, x):
        return self.coerce(x)

    def coerce(self, x):
        if isinstance(x, AlgebraicScalar):
            if x.field == self:
                return x
            if not x.field.is_subfield_of(self):
                raise ExactAlgebraError(f"{x.field!r} is not a subfield of {self!r}")
            coords = x.coords
            f = x.field
            while f != self:
                coords = coords + (Fraction(0),) * len(coords)
                f = _child_towards(f, self)
            return AlgebraicScalar(self, coords)
        if isinstance(x, (int, Rational)):
            return _mk(self, (Fraction(x),) + (_ZERO,) * (self.dim - 1))
        raise TypeError(f"cannot coerce {type(x).__name__} into {self!r}")

    def zero(self):
        return self.coerce(0)

    def one(self):
        return self.coerce(1)

    def gen(self):
        """The newest adjoined square root."""
        if self.parent is None:
            raise ExactAlgebraError("QQ has no generator")
        h = self.dim // 2
        return AlgebraicScalar(self, (Fraction(0),) * h + (Fraction(1),) + (Fraction(0),) * (h - 1))

    def adjoin_sqrt(self, radicand):
        """Return ``(field, root)`` with ``root**2 == radicand``.

        If the radicand is already a square, the field is unchanged.  Over Q
        the stored radicand is made square-free (up to a trial-division
        bound) so that equal fields get equal handles.
        """
        r = self.coerce(radicand)
        if r.is_zero():
            raise ExactAlgebraError("cannot adjoin the square root of zero")
        root = sqrt_in_field(r)
        if root is not None:
            return self, root
        if self.parent is None:
            q = r.coords[0]
            core, scale = _squarefree_rational(q)
            ext = QuadraticTower(self, AlgebraicScalar(self, (Fraction(core),)))
            return ext, ext.gen() * scale
        ext = QuadraticTower(self, r)
        return ext, ext.gen()


QQ = QuadraticTower()
_ZERO = Fraction(0)


def _child_towards(f, target):
    g = target
    while g.parent != f:
        g = g.parent
    return g


def _squarefree_rational(q: Fraction):
    """q = core * scale**2 with core a square-free integer (trial-division bound)."""
    n = q.numerator * q.denominator
    sign = -1 if n < 0 else 1
    n = abs(n)
    square = 1
    p = 2
    while p * p <= n and p < 20000:
        while n % (p * p) == 0:
            n //= p * p
            square *= p
        p += 1 if p == 2 else 2
    r = isqrt(n)
    if r * r == n:
        square *= r
        n = 1
    return sign * n, Fraction(square, q.denominator)


def _rational_sqrt(q: Fraction):
    if q < 0:
        return None
    a, b = isqrt(q.numerator), isqrt(q.denominator)
    if a * a == q.numerator and b * b == q.denominator:
        return Fraction(a, b)
    return None


def sqrt_in_field(x: "AlgebraicScalar"):
    """A square root of x inside x's own field, or None."""
    F = x.field
    if x.is_zero():
        return F.zero()
    if F.parent is None:
        r = _rational_sqrt(x.coords[0])
        return None if r is None else F.coerce(r)
    P = F.parent
    h = F.dim // 2
    a = AlgebraicScalar(P, x.coords[:h])
    b = AlgebraicScalar(P, x.coords[h:])
    d = F.radicand
    if b.is_zero():
        r = sqrt_in_field(a)
        if r is not None:
            return F.coerce(r)
        r = sqrt_in_field(a / d)
        if r is not None:
            return F.coerce(r) * F.gen()
        return None
    n = sqrt_in_field(a * a - b * b * d)
    if n is None:
        return None
    for cand in ((a + n) / 2, (a - n) / 2):
        p = sqrt_in_field(cand)
        if p is not None and not p.is_zero():
            q = b / (2 * p)
            return F.coerce(p) + F.coerce(q) * F.gen()
    return None


def _mul(F, x, y):
    if F.parent is None:
        return (x[0] * y[0],)
    h = len(x) // 2
    P = F.parent
    a, b, c, e = x[:h], x[h:], y[:h], y[h:]
    ac = _mul(P, a, c)
    be = _mul(P, b, e)
    ae = _mul(P, a, e)
    bc = _mul(P, b, c)
    bed = _mul(P, be, F.radicand.coords)
    return _coords_add(ac, bed) + _coords_add(ae, bc)


def _inv(F, x):
    if F.parent is None:
        if x[0] == 0:
            raise ZeroDivisionError("division by zero scalar")
        return (1 / x[0],)
    h = len(x) // 2
    P = F.parent
    a, b = x[:h], x[h:]
    norm = _coords_sub(_mul(P, a, a), _mul(P, _mul(P, b, b), F.radicand.coords))
    ninv = _inv(P, norm)
    return _mul(P, a, ninv) + tuple(-c for c in _mul(P, b, ninv))


def _mk(field, coords):
    s = object.__new__(AlgebraicScalar)
    s.field = field
    s.coords = coords
    return s


class AlgebraicScalar:
    """Exact element of a quadratic tower; immutable."""

    __slots__ = ("field", "coords")

    def __init__(self, field: QuadraticTower, coords):
        self.field = field
        self.coords = tuple(Fraction(c) for c in coords)
        if len(self.coords) != field.dim:
            raise ExactAlgebraError("coordinate vector does not match tower dimension")

    @staticmethod
    def rational(x):
        return QQ.coerce(Fraction(x))

    # coercion helpers
    def _pair(self, other):
        if isinstance(other, AlgebraicScalar):
            if other.field == self.field:
                return self, other
            if self.field.is_subfield_of(other.field):
                return other.field.coerce(self), other
            return self, self.field.coerce(other)
        return self, self.field.coerce(other)

    def __add__(self, other):
        try:
            x, y = self._pair(other)
        except TypeError:
            return NotImplemented
        return _mk(x.field, _coords_add(x.coords, y.coords))

    __radd__ = __add__

    def __neg__(self):
        return _mk(self.field, tuple(-c for c in self.coords))

    def __sub__(self, other):
        try:
            x, y = self._pair(other)
        except TypeError:
            return NotImplemented
        return _mk(x.field, _coords_sub(x.coords, y.coords))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            o = Fraction(other)
            return _mk(self.field, tuple(c * o for c in self.coords))
        try:
            x, y = self._pair(other)
        except TypeError:
            return NotImplemented
        return _mk(x.field, _mul(x.field, x.coords, y.coords))

    __rmul__ = __mul__

    def inverse(self):
        return _mk(self.field, _inv(self.field, self.coords))

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            o = Fraction(other)
            if o == 0:
                raise ZeroDivisionError("division by zero")
            return _mk(self.field, tuple(c / o for c in self.coords))
        try:
            x, y = self._pair(other)
        except TypeError:
            return NotImplemented
        return x * y.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_zero(self):
        return not any(self.coords)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, (AlgebraicScalar, int, Rational)):
            try:
                x, y = self._pair(other)
            except (TypeError, ExactAlgebraError):
                return False
            return x.coords == y.coords
        return NotImplemented

    def __hash__(self):
        # lifting pads with trailing zeros, so strip them to keep hashes consistent
        cs = list(self.coords)
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        return hash(cs[0]) if len(cs) == 1 else hash(tuple(cs))

    def is_rational(self):
        return all(c == 0 for c in self.coords[1:])

    def to_fraction(self):
        if not self.is_rational():
            raise ExactAlgebraError("scalar is not rational")
        return self.coords[0]

    def sqrt(self):
        """Square root, adjoining it to the tower if needed."""
        return self.field.adjoin_sqrt(self)[1]

    def numeric(self, roots=None):
        """Complex value under an embedding.

        ``roots`` optionally lists the complex values of the adjoined square
        roots, innermost first; by default the principal branch is used.
        """
        return _numeric(self.field, self.coords, list(roots) if roots else None)

    def to_json(self):
        if self.is_rational():
            return str(self.coords[0])
        return {
            "tower": [r.to_json() for r in self.field.radicands()],
            "coords": [str(c) for c in self.coords],
        }

    def __repr__(self):
        if self.is_rational():
            return str(self.coords[0])
        return self._pretty()

    def _pretty(self):
        F = self.field
        if F.parent is None:
            return str(self.coords[0])
        h = F.dim // 2
        a = AlgebraicScalar(F.parent, self.coords[:h])
        b = AlgebraicScalar(F.parent, self.coords[h:])
        return f"({a._pretty()} + ({b._pretty()})*sqrt({F.radicand._pretty()}))"


def _numeric(F, coords, roots):
    if F.parent is None:
        return complex(coords[0])
    h = len(coords) // 2
    if roots is not None and len(roots) >= F.level:
        r = roots[F.level - 1]
    else:
        r = cmath.sqrt(_numeric(F.parent, F.radicand.coords, roots))
    return _numeric(F.parent, coords[:h], roots) + _numeric(F.parent, coords[h:], roots) * r


def common_field(*values):
    """Smallest tower among those of ``values`` containing all of them."""
    field = QQ
    for v in values:
        if isinstance(v, AlgebraicScalar):
            if field.is_subfield_of(v.field):
                field = v.field
            elif not v.field.is_subfield_of(field):
                raise ExactAlgebraError("values live in incompatible towers")
    return field


def adjoin_sqrt(base: QuadraticTower, radicand):
    return base.adjoin_sqrt(radicand)


# ---------------------------------------------------------------- univariate


class UniPoly:
    """Dense univariate polynomial over a quadratic tower, coefficients low to high."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        cs = [field.coerce(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def constant(cls, field, c):
        return cls(field, [c])

    @classmethod
    def x(cls, field):
        return cls(field, [0, 1])

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def lead(self):
        return self.coeffs[-1]

    def _lift(self, other):
        if isinstance(other, UniPoly):
            if other.field == self.field:
                return other
            return UniPoly(self.field, other.coeffs)
        return UniPoly(self.field, [other])

    def __add__(self, other):
        o = self._lift(other)
        n = max(len(self.coeffs), len(o.coeffs))
        z = self.field.zero()
        return UniPoly(self.field, [
            (self.coeffs[i] if i < len(self.coeffs) else z) + (o.coeffs[i] if i < len(o.coeffs) else z)
            for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            c = self.field.coerce(other)
            return UniPoly(self.field, [a * c for a in self.coeffs])
        o = self._lift(other)
        if self.is_zero() or o.is_zero():
            return UniPoly(self.field, [])
        out = [self.field.zero()] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(o.coeffs):
                out[i + j] = out[i + j] + a * b
        return UniPoly(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        result = UniPoly(self.field, [1])
        for _ in range(n):
            result = result * self
        return result

    def divmod(self, other):
        o = self._lift(other)
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [self.field.zero()] * max(0, len(rem) - len(o.coeffs) + 1)
        inv = o.lead().inverse()
        while len(rem) >= len(o.coeffs) and rem:
            c = rem[-1] * inv
            k = len(rem) - len(o.coeffs)
            q[k] = c
            for i, b in enumerate(o.coeffs):
                rem[k + i] = rem[k + i] - c * b
            rem.pop()
            while rem and rem[-1].is_zero():
                rem.pop()
        return UniPoly(self.field, q), UniPoly(self.field, rem)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other):
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ExactAlgebraError("division is not exact")
        return q

    def monic(self):
        if self.is_zero():
            return self
        inv = self.lead().inverse()
        return UniPoly(self.field, [c * inv for c in self.coeffs])

    def derivative(self):
        return UniPoly(self.field, [c * i for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        acc = self.field.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == self._lift(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UniPoly({list(self.coeffs)})"


def poly_gcd(p: UniPoly, q: UniPoly) -> UniPoly:
    """Monic gcd by the Euclidean algorithm."""
    a, b = p, q
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_squarefree(p: UniPoly) -> UniPoly:
    if p.is_zero():
        raise ExactAlgebraError("square-free part of the zero polynomial")
    if p.degree <= 0:
        return UniPoly(p.field, [1])
    return p.exact_div(poly_gcd(p, p.derivative())).monic()


def multiplicity_on(p: UniPoly, support: UniPoly) -> int:
    """Sum of orders of p at the roots of the square-free ``support``.

    Roots are counted with their degree over the field, so the answer is
    the degree of the largest divisor of p built from those roots.
    """
    total = 0
    rest = p
    while True:
        g = poly_gcd(rest, support)
        if g.degree <= 0:
            return total
        total += g.degree
        rest = rest.exact_div(g)


class RatFunc:
    """Reduced quotient num/den of univariate polynomials with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: UniPoly, den: UniPoly | None = None, reduce=True):
        if den is None:
            den = UniPoly(num.field, [1])
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if reduce:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num = num.exact_div(g)
                den = den.exact_div(g)
            lc = den.lead()
            if lc != 1:
                inv = lc.inverse()
                num = num * inv
                den = den * inv
        self.num, self.den = num, den

    @property
    def field(self):
        return self.num.field

    def is_zero(self):
        return self.num.is_zero()

    def _lift(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, UniPoly):
            return RatFunc(other)
        return RatFunc(UniPoly(self.field, [other]))

    def __add__(self, other):
        o = self._lift(other)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __pow__(self, n):
        return RatFunc(self.num ** n, self.den ** n, reduce=False)

    def __eq__(self, other):
        o = self._lift(other)
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __call__(self, x):
        return self.num(x) / self.den(x)

    def __repr__(self):
        return f"({self.num!r})/({self.den!r})"


# ---------------------------------------------------------------- binary forms


class HomogPoly2:
    """Binary form sum_k coeffs[k] * s0**k * s1**(degree-k)."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = tuple(field.coerce(c) for c in coeffs)
        if not self.coeffs:
            raise ExactAlgebraError("a binary form needs at least one coefficient slot")

    @classmethod
    def from_uni(cls, p: UniPoly, degree: int):
        if p.degree > degree:
            raise ExactAlgebraError("degree too small for rehomogenization")
        cs = list(p.coeffs) + [0] * (degree + 1 - len(p.coeffs))
        return cls(p.field, cs)

    @classmethod
    def linear(cls, field, c0, c1):
        """c0*s0 + c1*s1."""
        return cls(field, [c1, c0])

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return all(c.is_zero() for c in self.coeffs)

    def __add__(self, other):
        if not isinstance(other, HomogPoly2):
            return NotImplemented
        if other.degree != self.degree:
            if self.is_zero():
                return other
            if other.is_zero():
                return self
            raise ExactAlgebraError("cannot add forms of different degrees")
        F = common_field(self.coeffs[0], other.coeffs[0])
        return HomogPoly2(F, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return HomogPoly2(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, HomogPoly2):
            c = self.field.coerce(other) if not isinstance(other, AlgebraicScalar) else other
            F = common_field(self.coeffs[0], c)
            return HomogPoly2(F, [a * c for a in self.coeffs])
        F = common_field(self.coeffs[0], other.coeffs[0])
        out = [F.zero()] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return HomogPoly2(F, out)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (1 / self.field.coerce(scalar) if not isinstance(scalar, AlgebraicScalar) else scalar.inverse())

    def __pow__(self, n):
        result = HomogPoly2(self.field, [1])
        for _ in range(n):
            result = result * self
        return result

    def __call__(self, s0, s1):
        acc = None
        for k, c in enumerate(self.coeffs):
            term = c * (s0 ** k) * (s1 ** (self.degree - k)) if not c.is_zero() else None
            if term is not None:
                acc = term if acc is None else acc + term
        if acc is None:
            return common_field(s0, s1, self.coeffs[0]).zero()
        return acc

    def substitute(self, a, b, c, d):
        """The form p(a*s0 + b*s1, c*s0 + d*s1)."""
        F = common_field(self.coeffs[0], *(x for x in (a, b, c, d) if isinstance(x, AlgebraicScalar)))
        x = HomogPoly2(F, [b, a])
        y = HomogPoly2(F, [d, c])
        total = HomogPoly2(F, [0] * (self.degree + 1))
        for k, coef in enumerate(self.coeffs):
            if coef.is_zero():
                continue
            total = total + (x ** k) * (y ** (self.degree - k)) * coef
        return total

    def is_even(self):
        return all(c.is_zero() for k, c in enumerate(self.coeffs) if k % 2)

    def order_at_infinity(self):
        """Power of s1 dividing the form (the order at the root [1:0])."""
        k = 0
        for c in reversed(self.coeffs):
            if not c.is_zero():
                return k
            k += 1
        raise ExactAlgebraError("zero form")

    def dehomogenize(self) -> UniPoly:
        """p(t, 1) as a polynomial in t."""
        return UniPoly(self.field, self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, HomogPoly2):
            return NotImplemented
        return self.degree == other.degree and all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash(self.coeffs)

    def to_json(self):
        return {"degree": self.degree, "coeffs": [c.to_json() for c in self.coeffs]}

    def __repr__(self):
        terms = [f"({c!r})*s0^{k}*s1^{self.degree - k}" for k, c in enumerate(self.coeffs) if not c.is_zero()]
        return " + ".join(terms) if terms else "0"


def squarefree_part(p: HomogPoly2) -> HomogPoly2:
    """Product of the distinct irreducible factors of p, up to a unit."""
    if p.is_zero():
        raise ExactAlgebraError("square-free part of the zero form")
    k = p.order_at_infinity()
    q = poly_squarefree(p.dehomogenize())
    out = HomogPoly2.from_uni(q, q.degree)
    if k:
        out = out * HomogPoly2.linear(p.field, 0, 1)
    return out


def form_gcd(p: HomogPoly2, q: HomogPoly2) -> HomogPoly2:
    if p.is_zero() or q.is_zero():
        raise ExactAlgebraError("gcd with the zero form")
    F = common_field(p.coeffs[0], q.coeffs[0])
    p, q = HomogPoly2(F, p.coeffs), HomogPoly2(F, q.coeffs)
    k = min(p.order_at_infinity(), q.order_at_infinity())
    g = poly_gcd(p.dehomogenize(), q.dehomogenize())
    out = HomogPoly2.from_uni(g, g.degree)
    return out * (HomogPoly2.linear(F, 0, 1) ** k)


def form_exact_div(p: HomogPoly2, q: HomogPoly2) -> HomogPoly2:
    kp, kq = p.order_at_infinity(), q.order_at_infinity()
    if kq > kp:
        raise ExactAlgebraError("division is not exact")
    quo = p.dehomogenize().exact_div(q.dehomogenize())
    return HomogPoly2.from_uni(quo, p.degree - q.degree)


def bareiss_determinant(matrix):
    """Fraction-free Gaussian elimination; entries must support exact division."""
    m = [list(row) for row in matrix]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = None
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return m[k][k] * 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                val = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = val if prev is None else val / prev
        prev = m[k][k]
    return m[n - 1][n - 1] * sign


def sylvester_matrix(p_high, q_high):
    """Sylvester matrix from coefficient lists ordered high to low."""
    m, n = len(p_high) - 1, len(q_high) - 1
    size = m + n
    zero = (p_high[0] * 0)
    rows = []
    for i in range(n):
        rows.append([zero] * i + list(p_high) + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + list(q_high) + [zero] * (size - n - 1 - i))
    return rows


def resultant(p: HomogPoly2, q: HomogPoly2):
    """Homogeneous resultant; zero iff the forms share a projective root."""
    if p.is_zero() or q.is_zero():
        raise ExactAlgebraError("resultant with the zero form")
    F = common_field(p.coeffs[0], q.coeffs[0])
    if p.degree == 0 and q.degree == 0:
        return F.one()
    ph = [F.coerce(c) for c in reversed(p.coeffs)]
    qh = [F.coerce(c) for c in reversed(q.coeffs)]
    return bareiss_determinant(sylvester_matrix(ph, qh))


def discriminant(p: HomogPoly2):
    """Resultant of the two partial derivatives (up to a nonzero constant)."""
    d = p.degree
    F = p.field
    ds0 = HomogPoly2(F, [p.coeffs[k] * k for k in range(1, d + 1)])
    ds1 = HomogPoly2(F, [p.coeffs[k] * (d - k) for k in range(d)])
    return resultant(ds0, ds1)


# ---------------------------------------------------------------- certification


def tower_symbols(field: QuadraticTower, prefix="r"):
    """One sympy symbol per adjoined square root, innermost first."""
    import sympy

    return list(sympy.symbols(f"{prefix}1:{field.level + 1}")) if field.level else []


def scalar_to_sympy(x, gens):
    """Sympy polynomial in the tower generators representing x."""
    import sympy

    if not isinstance(x, AlgebraicScalar):
        return sympy.Rational(Fraction(x).numerator, Fraction(x).denominator)
    return _to_sympy(x.field, x.coords, gens)


def _to_sympy(F, coords, gens):
    import sympy

    if F.parent is None:
        c = coords[0]
        return sympy.Rational(c.numerator, c.denominator)
    h = len(coords) // 2
    return _to_sympy(F.parent, coords[:h], gens) + _to_sympy(F.parent, coords[h:], gens) * gens[F.level - 1]


def tower_relations(field: QuadraticTower, gens):
    rels = []
    f = field
    while f.parent is not None:
        rels.append(gens[f.level - 1] ** 2 - _to_sympy(f.parent, f.radicand.coords, gens))
        f = f.parent
    return rels[::-1]


def reduce_modulo(expr, relations, gens):
    """Remainder of expr modulo relations, lex order with ``gens`` first.

    The relations used here have pairwise coprime pure-power leading terms,
    so they already form a Groebner basis and the remainder is canonical.
    """
    import sympy

    expr = sympy.expand(expr)
    if not relations:
        return expr
    free = sorted(expr.free_symbols.union(*[r.free_symbols for r in relations]) - set(gens), key=str)
    _, rem = sympy.reduced(expr, [sympy.expand(r) for r in relations], *gens, *free, order="lex")
    return sympy.expand(rem)
