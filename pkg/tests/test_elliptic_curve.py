from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from elliptic_summer import O, CurveSpec, Rationals
from elliptic_summer.algebra import PrimeFnField
from elliptic_summer.curve import add_points, assert_non_torsion, point_key, scalar_mul
from elliptic_summer.errors import PointNotOnCurve, SingularCurve, TorsionPoint
from elliptic_summer.selftest import curve_37a, curve_389a, curve_f5_ordinary

Q = Rationals()


class ShortOracle:
    """Independent group law: move to y^2 = x^3 + A x + B, add there, move back."""

    def __init__(self, a1, a2, a3, a4, a6):
        F = Fraction
        self.a1, self.a3 = F(a1), F(a3)
        b2 = F(a1) ** 2 + 4 * a2
        b4 = 2 * F(a4) + F(a1) * a3
        b6 = F(a3) ** 2 + 4 * a6
        self.r = -b2 / 12
        # (x, y) -> (X, Y) = (x - r, y + (a1 x + a3)/2), giving Y^2 = X^3 + A X + B
        self.A = b4 / 2 - b2 * b2 / 48
        self.B = b6 / 4 - b2 * b4 / 24 + b2 ** 3 / 864

    def fwd(self, P):
        if P is None:
            return None
        x, y = P
        return (x - self.r, y + (self.a1 * x + self.a3) / 2)

    def back(self, P):
        if P is None:
            return None
        X, Y = P
        x = X + self.r
        return (x, Y - (self.a1 * x + self.a3) / 2)

    def add(self, P, Q):
        P, Q = self.fwd(P), self.fwd(Q)
        if P is None:
            return self.back(Q)
        if Q is None:
            return self.back(P)
        (x1, y1), (x2, y2) = P, Q
        if x1 == x2 and y1 == -y2:
            return None
        lam = (3 * x1 * x1 + self.A) / (2 * y1) if P == Q else (y2 - y1) / (x2 - x1)
        x3 = lam * lam - x1 - x2
        return self.back((x3, lam * (x1 - x3) - y1))


def _frac(P):
    return None if P.is_infinity else (Fraction(int(P.x.p), int(P.x.q)), Fraction(int(P.y.p), int(P.y.q)))


def test_37a_multiples_against_oracle():
    E, s = curve_37a()
    orc = ShortOracle(0, 0, 1, -1, 0)
    R = None
    for n in range(1, 9):
        R = orc.add(R, _frac(s))
        assert _frac(E.mul(n, s)) == R
    # frozen from the oracle
    assert _frac(E.mul(5, s)) == (Fraction(1, 4), Fraction(-5, 8))
    assert _frac(E.mul(6, s)) == (Fraction(6), Fraction(14))


def test_389a_mixed_sums_against_oracle():
    E, s, b = curve_389a()
    orc = ShortOracle(0, 1, 1, -2, 0)
    for m in range(-3, 4):
        for n in range(-3, 4):
            P = E.add(E.mul(m, s), E.mul(n, b))
            ref = None
            for _ in range(abs(m)):
                ref = orc.add(ref, _frac(s if m > 0 else E.neg(s)))
            for _ in range(abs(n)):
                ref = orc.add(ref, _frac(b if n > 0 else E.neg(b)))
            assert _frac(P) == ref


idx = st.integers(-4, 4)


@given(idx, idx, idx, idx, idx, idx)
def test_group_law_associative_commutative(a, b, c, d, e, f):
    E, s, t = curve_389a()
    P, Qp, R = (E.add(E.mul(i, s), E.mul(j, t)) for i, j in ((a, b), (c, d), (e, f)))
    assert E.add(E.add(P, Qp), R) == E.add(P, E.add(Qp, R))
    assert E.add(P, Qp) == E.add(Qp, P)
    assert E.add(P, E.neg(P)) == O
    assert E.contains(E.add(P, Qp))


@given(st.integers(-6, 6), st.integers(-6, 6))
def test_scalar_mul_is_homomorphism(m, n):
    E, s = curve_37a()
    assert E.mul(m + n, s) == E.add(E.mul(m, s), E.mul(n, s))
    assert E.mul(m * n, s) == E.mul(m, E.mul(n, s))


def test_char5_group_law():
    E, s, b = curve_f5_ordinary()
    for n in range(-4, 5):
        P = E.add(E.mul(n, s), b)
        assert E.contains(P)
        assert E.sub(P, b) == E.mul(n, s)


def test_invariants_37a():
    E, _ = curve_37a()
    assert E.discriminant() == 37
    assert E.j_invariant() == Q("110592/37")


def test_torsion_detection():
    E = CurveSpec(Q, 0, 0, 0, 0, 1)
    with pytest.raises(TorsionPoint) as exc:
        assert_non_torsion(E.point(2, 3), E, 12)
    assert exc.value.order == 6
    F = PrimeFnField(5)
    E5 = CurveSpec(F, 0, 0, 0, 0, 1)
    with pytest.raises(TorsionPoint):
        assert_non_torsion(E5.point(F(0), F(1)), E5, 12)
    E37, s = curve_37a()
    assert assert_non_torsion(s, E37, 12)


def test_rejections():
    with pytest.raises(SingularCurve):
        CurveSpec(Q, 0, 0, 0, 0, 0)
    E, s = curve_37a()
    with pytest.raises(PointNotOnCurve):
        E.point(1, 1)
    from elliptic_summer.curve import CurvePoint
    with pytest.raises(PointNotOnCurve):
        add_points(CurvePoint(Q(1), Q(1)), s, E)
    assert scalar_mul(0, s, E) == O


def test_point_order_is_total_and_stable():
    E, s = curve_37a()
    pts = [E.mul(n, s) for n in range(-5, 6)]
    keys = sorted(point_key(P) for P in pts)
    assert keys[0] == (0,)
    assert len(set(keys)) == len(pts)
