"""The function field K of an elliptic curve E.

Elements are stored as (n0 + n1*y)/den with polynomials in x, den monic and
gcd(n0, n1, den) = 1, which is a canonical form for f1(x) + f2(x)*y.
Local expansions go through a "series point": the coordinates (X(t), Y(t))
of the curve near a rational point as Laurent series in the standard local
parameter t.  Any uniformizer of the form P -> u0(P - gamma) can then be
expanded by evaluating on such series.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Any

from .algebra import poly as P
from .algebra.ratfn import RatFn
from .algebra.series import TruncatedLaurent, series_compose, series_reversion
from .curve import O, CurvePoint
from .divisor import Divisor
from .errors import (ConstructionFailure, DivisionByZero, NotAUniformizer, NotRationalPoint,
                     PrecisionLoss, ZeroFunction, ZeroSeries)

MAX_WORKING_PRECISION = 600


def _VW(E):
    """y^2 = W(x) - V(x) y."""
    F = E.field
    V = F.poly([E.a3, E.a1])
    W = F.poly([E.a6, E.a4, E.a2, 1])
    return V, W


_vw_cache = {}


def curve_polys(E):
    r = _vw_cache.get(E)
    if r is None:
        r = _vw_cache[E] = _VW(E)
    return r


def pair_mul(E, a, b):
    V, W = curve_polys(E)
    a0, a1 = a
    b0, b1 = b
    t = a1 * b1
    return (a0 * b0 + t * W, a0 * b1 + a1 * b0 - t * V)


def pair_conj(E, a):
    V, _ = curve_polys(E)
    return (a[0] - a[1] * V, -a[1])


def pair_norm(E, a):
    V, W = curve_polys(E)
    a0, a1 = a
    return a0 * a0 - a0 * a1 * V - a1 * a1 * W


class FnElt:
    """An element f1(x) + f2(x)*y of the function field."""

    __slots__ = ("curve", "n0", "n1", "den", "_key", "_hash")

    def __init__(self, curve, n0, n1, den, normalize=True):
        if normalize:
            if P.is_zero(den):
                raise DivisionByZero("zero denominator")
            if P.is_zero(n0) and P.is_zero(n1):
                one = curve.field.poly([1])
                n0, n1, den = n0 * 0, n1 * 0, one
            else:
                g = n0.gcd(n1) if not P.is_zero(n1) else n0
                if P.is_zero(n0):
                    g = n1
                g = g.gcd(den)
                if g.degree() > 0:
                    n0, n1, den = n0 // g, n1 // g, den // g
                c = P.lead(den)
                if c != 1:
                    inv = 1 / c
                    n0, n1, den = n0 * inv, n1 * inv, den * inv
        self.curve = curve
        self.n0 = n0
        self.n1 = n1
        self.den = den
        self._key = None
        self._hash = None

    # constructors
    @classmethod
    def const(cls, E, c):
        F = E.field
        return cls(E, F.poly([c]), F.poly([]), F.poly([1]), normalize=False)

    @classmethod
    def x(cls, E):
        F = E.field
        return cls(E, F.poly([0, 1]), F.poly([]), F.poly([1]), normalize=False)

    @classmethod
    def y(cls, E):
        F = E.field
        return cls(E, F.poly([]), F.poly([1]), F.poly([1]), normalize=False)

    @classmethod
    def from_ratfns(cls, E, f1, f2):
        d = P.lcm(f1.den, f2.den)
        return cls(E, f1.num * (d // f1.den), f2.num * (d // f2.den), d)

    @classmethod
    def from_poly_x(cls, E, p):
        F = E.field
        return cls(E, p, F.poly([]), F.poly([1]))

    @property
    def field(self):
        return self.curve.field

    @property
    def f1(self):
        return RatFn(self.field, self.n0, self.den)

    @property
    def f2(self):
        return RatFn(self.field, self.n1, self.den)

    def key(self):
        if self._key is None:
            self._key = (P.key(self.n0), P.key(self.n1), P.key(self.den))
        return self._key

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    def __eq__(self, other):
        if not isinstance(other, FnElt):
            if isinstance(other, (int,)) or other.__class__ is self.field.zero.__class__:
                other = FnElt.const(self.curve, self.field(other))
            else:
                return NotImplemented
        return self.curve == other.curve and self.key() == other.key()

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def is_zero(self):
        return P.is_zero(self.n0) and P.is_zero(self.n1)

    def is_constant(self):
        return P.is_zero(self.n1) and self.n0.degree() <= 0 and self.den.degree() == 0

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant function")
        return self.n0[0]

    def _coerce(self, other):
        if isinstance(other, FnElt):
            if other.curve != self.curve:
                raise ValueError("elements of different function fields")
            return other
        return FnElt.const(self.curve, self.field(other))

    def __add__(self, other):
        other = self._coerce(other)
        if self.den == other.den:
            return FnElt(self.curve, self.n0 + other.n0, self.n1 + other.n1, self.den)
        a, b = self.den, other.den
        g = a.gcd(b)
        ca, cb = b // g, a // g
        return FnElt(self.curve, self.n0 * ca + other.n0 * cb, self.n1 * ca + other.n1 * cb, a * ca)

    __radd__ = __add__

    def __neg__(self):
        return FnElt(self.curve, -self.n0, -self.n1, self.den, normalize=False)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, FnElt):
            c = self.field(other)
            if c == 0:
                return FnElt.const(self.curve, 0)
            return FnElt(self.curve, self.n0 * c, self.n1 * c, self.den, normalize=False)
        other = self._coerce(other)
        n0, n1 = pair_mul(self.curve, (self.n0, self.n1), (other.n0, other.n1))
        return FnElt(self.curve, n0, n1, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise DivisionByZero("inverse of the zero function")
        c0, c1 = pair_conj(self.curve, (self.n0, self.n1))
        nrm = pair_norm(self.curve, (self.n0, self.n1))
        return FnElt(self.curve, c0 * self.den, c1 * self.den, nrm)

    def __truediv__(self, other):
        if not isinstance(other, FnElt):
            c = self.field(other)
            if c == 0:
                raise DivisionByZero("division by zero")
            return self * (1 / c)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = FnElt.const(self.curve, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def conj(self):
        c0, c1 = pair_conj(self.curve, (self.n0, self.n1))
        return FnElt(self.curve, c0, c1, self.den)

    def norm(self):
        return RatFn(self.field, pair_norm(self.curve, (self.n0, self.n1)), self.den * self.den)

    def evaluate(self, Pt):
        """Value at an affine point where f is regular (direct substitution)."""
        d = self.den(Pt.x)
        if d != 0:
            return (self.n0(Pt.x) + self.n1(Pt.x) * Pt.y) / d
        return laurent_expand(self, Pt, standard_parameter(self.curve, Pt), 1).coeff(0)

    def __str__(self):
        return format_fn(self)

    __repr__ = __str__


def format_fn(f):
    F = f.field
    d = f.den
    parts = []
    for num, tail in ((f.n0, ""), (f.n1, "*y")):
        if P.is_zero(num):
            continue
        r = RatFn(F, num, d)
        parts.append(f"({r})" + tail)
    if not parts:
        return "0"
    return " + ".join(parts)


def fn_x(E):
    return FnElt.x(E)


def fn_y(E):
    return FnElt.y(E)


def ff_arith(op, f, g):
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "div":
        return f / g
    raise ValueError(op)


# ---------------------------------------------------------------- translation

def _homog_eval(E, poly, Xp, q, deg):
    """sum c_i Xp^i q^(deg-i) as a pair, for X = Xp/q."""
    F = E.field
    cs = poly.coeffs()
    zero = F.poly([])
    if not cs:
        return (zero, zero)
    qpow = [F.poly([1])]
    for _ in range(deg):
        qpow.append(qpow[-1] * q)
    d = len(cs) - 1
    acc = (F.poly([cs[d]]), zero)
    for i in range(d - 1, -1, -1):
        acc = pair_mul(E, acc, Xp)
        qq = qpow[d - i]
        acc = (acc[0] + qq * cs[i], acc[1])
    if deg > d:
        acc = (acc[0] * qpow[deg - d], acc[1] * qpow[deg - d])
    return acc


@lru_cache(maxsize=512)
def _translation_coords(E, alpha):
    x, y = FnElt.x(E), FnElt.y(E)
    lam = (y - alpha.y) / (x - alpha.x)
    nu = alpha.y - lam * alpha.x
    X = lam * lam + lam * E.a1 - E.a2 - x - alpha.x
    Y = -(lam + E.a1) * X - nu - E.a3
    return X, Y


def translate_by(f, alpha):
    """T_alpha(f): P -> f(P + alpha)."""
    if alpha.is_infinity or f.is_constant():
        return f
    E = f.curve
    X, Y = _translation_coords(E, alpha)
    q = X.den
    Xp = (X.n0, X.n1)
    d0, d1, dd = f.n0.degree(), f.n1.degree(), f.den.degree()
    D = max(d0, d1, dd, 0)
    A = _homog_eval(E, f.n0, Xp, q, D)
    B = _homog_eval(E, f.n1, Xp, q, D)
    C = _homog_eval(E, f.den, Xp, q, D)
    # f(T) = (A + B*Y)/C with Y = (Y.n0 + Y.n1*y)/Y.den
    BY = pair_mul(E, B, (Y.n0, Y.n1))
    num = (A[0] * Y.den + BY[0], A[1] * Y.den + BY[1])
    Cc = pair_conj(E, C)
    num = pair_mul(E, num, Cc)
    den = pair_norm(E, C) * Y.den
    return FnElt(E, num[0], num[1], den)


def tau_shift(f, n, s):
    """tau^n(f): P -> f(P + n*s)."""
    if n == 0:
        return f
    return translate_by(f, f.curve.mul(n, s))


def delta(f):
    """The derivation with delta(x) = 2y + a1 x + a3, delta(y) = 3x^2 + 2 a2 x + a4 - a1 y."""
    E = f.curve
    F = E.field
    Dx = (F.poly([E.a3, E.a1]), F.poly([2]))
    Dy = (F.poly([E.a4, 2 * E.a2, 3]), F.poly([-E.a1]))
    n0, n1, den = f.n0, f.n1, f.den
    t1 = pair_mul(E, (n0.derivative(), n1.derivative()), Dx)
    t2 = (Dy[0] * n1, Dy[1] * n1)
    t3 = pair_mul(E, (n0, n1), Dx)
    dd = den.derivative()
    num0 = (t1[0] + t2[0]) * den - t3[0] * dd
    num1 = (t1[1] + t2[1]) * den - t3[1] * dd
    return FnElt(E, num0, num1, den * den)


# ------------------------------------------------------------- series points

def _lmul(a, b, n, zero):
    out = [zero] * n
    for i, x in enumerate(a[:n]):
        if x == 0:
            continue
        for j in range(min(len(b), n - i)):
            out[i + j] += x * b[j]
    return out


def _ladd(*lists):
    out = list(lists[0])
    for l in lists[1:]:
        for i, c in enumerate(l):
            out[i] += c
    return out


def _lscale(a, c):
    return [x * c for x in a]


@dataclass(frozen=True)
class SeriesPoint:
    point: CurvePoint
    X: Any
    Y: Any
    kind: str  # "O", "x" (parameter x - x0) or "y" (parameter y - y0)


def is_ramified(E, alpha):
    return (2 * alpha.y + E.a1 * alpha.x + E.a3) == 0


@lru_cache(maxsize=4096)
def series_point(E, alpha, L):
    """Coordinates near alpha in the standard local parameter, to precision about L."""
    F = E.field
    zero, one = F.zero, F.one
    a1, a2, a3, a4, a6 = E.coeffs
    T = TruncatedLaurent
    if alpha.is_infinity:
        n = L + 6
        z = [zero, -one] + [zero] * (n - 2)  # z = -u
        z2 = _lmul(z, z, n, zero)
        z3 = _lmul(z2, z, n, zero)
        w = [zero] * n
        for _ in range(n):
            w2 = _lmul(w, w, n, zero)
            w3 = _lmul(w2, w, n, zero)
            new = _ladd(z3, _lscale(_lmul(z, w, n, zero), a1), _lscale(_lmul(z2, w, n, zero), a2),
                        _lscale(w2, a3), _lscale(_lmul(z, w2, n, zero), a4), _lscale(w3, a6))
            if new == w:
                break
            w = new
        ws = T(F, 0, w, n)
        zs = T(F, 1, [-one])
        return SeriesPoint(alpha, zs / ws, (ws.inverse()) * (-1), "O")
    x0, y0 = alpha.x, alpha.y
    n = L
    if not is_ramified(E, alpha):
        X = [x0, one] + [zero] * (n - 2)
        Y = [y0] + [zero] * (n - 1)
        fy0 = 2 * y0 + a1 * x0 + a3
        inv = 1 / fy0
        X2 = _lmul(X, X, n, zero)
        X3 = _lmul(X2, X, n, zero)
        rhs = _ladd(X3, _lscale(X2, a2), _lscale(X, a4), [a6] + [zero] * (n - 1))
        lin = _ladd(_lscale(X, a1), [a3] + [zero] * (n - 1))
        for _ in range(n):
            Fv = _ladd(_lmul(Y, Y, n, zero), _lmul(lin, Y, n, zero), _lscale(rhs, -1))
            if all(c == 0 for c in Fv):
                break
            Y = _ladd(Y, _lscale(Fv, -inv))
        return SeriesPoint(alpha, T(F, 0, X, n), T(F, 0, Y, n), "x")
    Y = [y0, one] + [zero] * (n - 2)
    X = [x0] + [zero] * (n - 1)
    fx0 = a1 * y0 - 3 * x0 * x0 - 2 * a2 * x0 - a4
    inv = 1 / fx0
    Y2 = _lmul(Y, Y, n, zero)
    for _ in range(n):
        X2 = _lmul(X, X, n, zero)
        X3 = _lmul(X2, X, n, zero)
        XY = _lmul(X, Y, n, zero)
        Fv = _ladd(Y2, _lscale(XY, a1), _lscale(Y, a3), _lscale(X3, -1), _lscale(X2, -a2),
                   _lscale(X, -a4), [-a6] + [zero] * (n - 1))
        if all(c == 0 for c in Fv):
            break
        X = _ladd(X, _lscale(Fv, -inv))
    return SeriesPoint(alpha, T(F, 0, X, n), T(F, 0, Y, n), "y")


def _horner_series(p, X):
    cs = p.coeffs()
    F = X.field
    if not cs:
        return TruncatedLaurent(F, 0, [])
    acc = TruncatedLaurent.constant(F, cs[-1])
    for c in reversed(cs[:-1]):
        acc = acc * X + c
    return acc


def _poly_at(p, sp, L):
    """p(X(t)) for a polynomial in x at a series point."""
    if sp.kind == "x":
        F = sp.X.field
        shifted = p(F.poly([sp.point.x, 1]))
        return TruncatedLaurent(F, 0, shifted.coeffs(), L)
    return _horner_series(p, sp.X)


def eval_at_series(f, sp, L):
    """f(X(t), Y(t)) as a truncated Laurent series."""
    A = _poly_at(f.n0, sp, L)
    if not P.is_zero(f.n1):
        A = A + _poly_at(f.n1, sp, L) * sp.Y
    if f.den.degree() == 0:
        return A
    D = _poly_at(f.den, sp, L)
    if D.is_zero():
        raise PrecisionLoss("denominator vanishes to working precision")
    return A * D.inverse()


def eval_on_coords(f, X, Y):
    """f at arbitrary series coordinates (X, Y)."""
    A = _horner_series(f.n0, X)
    if not P.is_zero(f.n1):
        A = A + _horner_series(f.n1, X) * Y
    if f.den.degree() == 0:
        return A
    D = _horner_series(f.den, X)
    if D.is_zero():
        raise PrecisionLoss("denominator vanishes to working precision")
    return A * D.inverse()


def series_translate(E, X, Y, gamma):
    """Coordinates of (X, Y) + gamma computed on series by the chord formulas."""
    if gamma.is_infinity:
        return X, Y
    xc, yc = gamma.x, gamma.y
    dx = X - xc
    if dx.is_zero():
        raise PrecisionLoss("chord denominator vanishes to working precision")
    lam = (Y - yc) * dx.inverse()
    nu = lam * (-xc) + yc
    X3 = lam * lam + lam * E.a1 - E.a2 - X - xc
    Y3 = (lam + E.a1) * X3 * (-1) - nu - E.a3
    return X3, Y3


# --------------------------------------------------------------- uniformizers

@dataclass(frozen=True)
class Uniformizer:
    """The local function P -> base(P - shift)."""

    base: Any
    shift: CurvePoint = O

    def __str__(self):
        if self.shift.is_infinity:
            return str(self.base)
        return f"T[{self.shift}]^-1({self.base})"


def standard_parameter(E, alpha):
    x, y = FnElt.x(E), FnElt.y(E)
    if alpha.is_infinity:
        return x / y
    if not is_ramified(E, alpha):
        return x - alpha.x
    return y - alpha.y


def _as_uniformizer(u):
    if isinstance(u, Uniformizer):
        return u
    return Uniformizer(u, O)


def uniformizer_series(E, u, sp):
    u = _as_uniformizer(u)
    X, Y = sp.X, sp.Y
    if not u.shift.is_infinity:
        X, Y = series_translate(E, X, Y, E.neg(u.shift))
    return eval_on_coords(u.base, X, Y)


def uniformizer_as_function(u):
    """Materialize a Uniformizer as an element of K."""
    u = _as_uniformizer(u)
    if u.shift.is_infinity:
        return u.base
    return translate_by(u.base, u.base.curve.neg(u.shift))


@dataclass(frozen=True)
class LocalExpansion:
    point: CurvePoint
    uniformizer: Any
    series: TruncatedLaurent

    def coeff(self, k):
        """c_k: the coefficient of u^(-k)."""
        return self.series.coefficient(-k)


_expansion_cache = {}


def _is_standard(E, alpha, u):
    return u.shift.is_infinity and u.base == standard_parameter(E, alpha)


def laurent_expand(f, alpha, u, precision):
    """Expansion of f at alpha in powers of the uniformizer u, known to O(u^precision)."""
    u = _as_uniformizer(u)
    key = (f, alpha, u, precision)
    hit = _expansion_cache.get(key)
    if hit is not None:
        return hit
    E = f.curve
    F = E.field
    if f.is_zero():
        res = LocalExpansion(alpha, u, TruncatedLaurent(F, 0, [], precision))
        return res
    standard = _is_standard(E, alpha, u)
    L = max(precision + 4, 8)
    while L <= MAX_WORKING_PRECISION:
        L = (L + 7) // 8 * 8
        sp = series_point(E, alpha, L)
        try:
            Fs = eval_at_series(f, sp, L)
            if standard:
                G = Fs
            else:
                U = uniformizer_series(E, u, sp)
                if U.is_zero():
                    raise PrecisionLoss("uniformizer series unknown")
                if U.val != 1:
                    raise NotAUniformizer(f"valuation {U.val} at {alpha}")
                if Fs.is_zero():
                    raise PrecisionLoss("function series unknown")
                G = series_compose(Fs, series_reversion(U))
        except (PrecisionLoss, ZeroSeries):
            L *= 2
            continue
        if G.prec is None or G.prec >= precision:
            res = LocalExpansion(alpha, u, G.truncate(precision))
            if len(_expansion_cache) > 200000:
                _expansion_cache.clear()
            _expansion_cache[key] = res
            return res
        deficit = precision - (G.prec if G.prec is not None else precision)
        L = L + max(deficit, 4) + (0 if G.coeffs else L)
    raise PrecisionLoss(f"could not reach precision {precision} at {alpha}")


def valuation_at(f, alpha):
    if f.is_zero():
        raise ZeroFunction("valuation of the zero function")
    E = f.curve
    L = 8
    while L <= MAX_WORKING_PRECISION:
        sp = series_point(E, alpha, L)
        try:
            Fs = eval_at_series(f, sp, L)
        except (PrecisionLoss, ZeroSeries):
            L *= 2
            continue
        if Fs.coeffs:
            return Fs.val
        L *= 2
    raise PrecisionLoss(f"valuation at {alpha} not determined")


# ------------------------------------------------------------------ divisors

def points_over(E, x0):
    """Rational points with x-coordinate x0 (raises if they are not rational)."""
    F = E.field
    V, W = curve_polys(E)
    q = F.poly([-W(x0), V(x0), 1])
    roots, nonlinear = F.roots(q)
    if nonlinear:
        raise NotRationalPoint(f"points over x = {F.format(x0)} are not rational")
    return [CurvePoint(x0, r) for r, _ in roots]


def _roots_of(F, p):
    roots, nonlinear = F.roots(p)
    if nonlinear:
        raise NotRationalPoint("a polynomial factor of degree > 1 has no rational roots")
    return [r for r, _ in roots]


def poles_of(f):
    """Sorted list of (point, order) for the poles of f."""
    E = f.curve
    out = []
    if not f.is_constant():
        for x0 in _roots_of(E.field, f.den):
            for Pt in points_over(E, x0):
                v = valuation_at(f, Pt)
                if v < 0:
                    out.append((Pt, -v))
        v = valuation_at(f, O)
        if v < 0:
            out.append((O, -v))
    out.sort(key=lambda pv: E.sort_key(pv[0]))
    return out


def pole_divisor(f):
    return Divisor({Pt: k for Pt, k in poles_of(f)})


def divisor_of(f):
    if f.is_zero():
        raise ZeroFunction("divisor of the zero function")
    E = f.curve
    if f.is_constant():
        return Divisor()
    F = E.field
    cands = set(_roots_of(F, f.den)) | set(_roots_of(F, pair_norm(E, (f.n0, f.n1))))
    m = {}
    for x0 in cands:
        for Pt in points_over(E, x0):
            v = valuation_at(f, Pt)
            if v:
                m[Pt] = v
    v = valuation_at(f, O)
    if v:
        m[O] = v
    D = Divisor(m)
    if D.degree() != 0:
        raise ConstructionFailure(f"divisor of degree {D.degree()} found")
    return D
