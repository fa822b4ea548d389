"""Elliptic curves in general Weierstrass form and their point group."""

from dataclasses import dataclass
from typing import Any

from .errors import PointNotOnCurve, SingularCurve, TorsionPoint


@dataclass(frozen=True)
class CurvePoint:
    """An affine point (x, y), or the identity O when both are None."""

    x: Any = None
    y: Any = None

    @property
    def is_infinity(self):
        return self.x is None

    def __str__(self):
        if self.x is None:
            return "O"
        return f"[{self.x}, {self.y}]"


O = CurvePoint()


def _scalar_key(a):
    if hasattr(a, "num") and hasattr(a, "den"):
        return (a.den.degree(), a.num.degree(), [int(c) for c in a.den.coeffs()],
                [int(c) for c in a.num.coeffs()])
    return (int(a.q), int(a.p))


def point_key(P):
    """Total order on points: O first, then lexicographic on canonical encodings."""
    if P.is_infinity:
        return (0,)
    return (1, _scalar_key(P.x), _scalar_key(P.y))


class CurveSpec:
    """y^2 + a1*x*y + a3*y = x^3 + a2*x^2 + a4*x + a6 over ``field``."""

    def __init__(self, field, a1, a2, a3, a4, a6):
        self.field = field
        self.a1, self.a2, self.a3, self.a4, self.a6 = (field(a) for a in (a1, a2, a3, a4, a6))
        if self.discriminant() == 0:
            raise SingularCurve("discriminant vanishes")

    @property
    def coeffs(self):
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def __eq__(self, other):
        return isinstance(other, CurveSpec) and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        return "CurveSpec([" + ", ".join(self.field.format(a) for a in self.coeffs) + "])"

    # invariants
    def b_invariants(self):
        a1, a2, a3, a4, a6 = self.coeffs
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return b2, b4, b6, b8

    def c4(self):
        b2, b4, _, _ = self.b_invariants()
        return b2 * b2 - 24 * b4

    def c6(self):
        b2, b4, b6, _ = self.b_invariants()
        return -b2 ** 3 + 36 * b2 * b4 - 216 * b6

    def discriminant(self):
        b2, b4, b6, b8 = self.b_invariants()
        return -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    def j_invariant(self):
        return j_invariant(self)

    # points
    def point(self, x, y):
        P = CurvePoint(self.field(x), self.field(y))
        if not self.contains(P):
            raise PointNotOnCurve(f"{P} is not on {self}")
        return P

    def contains(self, P):
        if P.is_infinity:
            return True
        x, y = P.x, P.y
        a1, a2, a3, a4, a6 = self.coeffs
        return y * y + a1 * x * y + a3 * y == x ** 3 + a2 * x * x + a4 * x + a6

    def _check(self, P):
        if not self.contains(P):
            raise PointNotOnCurve(f"{P} is not on {self}")

    def neg(self, P):
        if P.is_infinity:
            return P
        return CurvePoint(P.x, -P.y - self.a1 * P.x - self.a3)

    def add(self, P, Q):
        if P.is_infinity:
            return Q
        if Q.is_infinity:
            return P
        a1, a2, a3, a4, a6 = self.coeffs
        x1, y1, x2, y2 = P.x, P.y, Q.x, Q.y
        if x1 == x2:
            if y1 + y2 + a1 * x2 + a3 == 0:
                return O
            lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / (2 * y1 + a1 * x1 + a3)
        else:
            lam = (y2 - y1) / (x2 - x1)
        nu = y1 - lam * x1
        x3 = lam * lam + a1 * lam - a2 - x1 - x2
        y3 = -(lam + a1) * x3 - nu - a3
        return CurvePoint(x3, y3)

    def sub(self, P, Q):
        return self.add(P, self.neg(Q))

    def mul(self, n, P):
        if n < 0:
            return self.neg(self.mul(-n, P))
        R, B = O, P
        while n:
            if n & 1:
                R = self.add(R, B)
            B = self.add(B, B)
            n >>= 1
        return R

    def sort_key(self, P):
        return point_key(P)


def add_points(P, Q, E):
    E._check(P)
    E._check(Q)
    return E.add(P, Q)


def negate_point(P, E):
    E._check(P)
    return E.neg(P)


def scalar_mul(n, P, E):
    E._check(P)
    return E.mul(n, P)


def j_invariant(E):
    d = E.discriminant()
    if d == 0:
        raise SingularCurve("discriminant vanishes")
    return E.c4() ** 3 / d


def assert_non_torsion(s, E, bound):
    """Raise TorsionPoint(n) if n*s = O for some 1 <= n <= bound."""
    E._check(s)
    R = s
    for n in range(1, bound + 1):
        if R.is_infinity:
            raise TorsionPoint(n)
        R = E.add(R, s)
    return True
