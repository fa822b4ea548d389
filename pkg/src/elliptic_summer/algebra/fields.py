"""Exact base fields: the rationals and F_p(t).

Elements of Q are flint ``fmpq`` values and polynomials over Q are
``fmpq_poly``.  For F_p(t) the scalars are :class:`FpT` (a reduced quotient
of ``nmod_poly``) and polynomials over it are :class:`DensePoly`, which
mimics the small part of the ``fmpq_poly`` interface that the rest of the
package relies on.
"""

import random as _random

import flint

from ..errors import DivisionByZero


def _is_prime(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


class FieldConfig:
    """Common interface of the two supported base fields."""

    kind = None
    characteristic = 0

    def __call__(self, value):
        raise NotImplementedError

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def poly(self, coeffs):
        """Univariate polynomial (in x) with the given coefficients, low degree first."""
        raise NotImplementedError

    def gen_poly(self):
        return self.poly([0, 1])

    def roots(self, poly):
        """Return (sorted list of (root, multiplicity), has_nonlinear_factor)."""
        raise NotImplementedError

    def format(self, a):
        raise NotImplementedError

    def sort_key(self, a):
        return self.format(a)

    def is_constant(self, a):
        """True when a lies in the prime/constant subfield."""
        raise NotImplementedError

    def __eq__(self, other):
        return type(self) is type(other) and self.characteristic == other.characteristic

    def __hash__(self):
        return hash((self.kind, self.characteristic))


class Rationals(FieldConfig):
    kind = "rational"
    characteristic = 0

    def __call__(self, value):
        if isinstance(value, flint.fmpq):
            return value
        if isinstance(value, str):
            value = value.strip()
            if "/" in value:
                n, d = value.split("/")
                return flint.fmpq(int(n), int(d))
            return flint.fmpq(int(value))
        return flint.fmpq(value)

    def poly(self, coeffs):
        return flint.fmpq_poly([self(c) for c in coeffs])

    def roots(self, poly):
        if poly.degree() <= 0:
            return [], False
        _, facs = poly.factor()
        out, nonlinear = [], False
        for fac, mult in facs:
            if fac.degree() == 1:
                out.append((-fac[0] / fac[1], mult))
            else:
                nonlinear = True
        out.sort(key=lambda rm: _q_key(rm[0]))
        return out, nonlinear

    def format(self, a):
        return str(a)

    def sort_key(self, a):
        return _q_key(a)

    def is_constant(self, a):
        return True

    def random(self, rng=None, height=5):
        rng = rng or _random
        return flint.fmpq(rng.randint(-height, height), rng.randint(1, height))

    def __repr__(self):
        return "Rationals()"


def _q_key(a):
    return (0, int(a.p), int(a.q))


class FpT:
    """A reduced fraction num/den of polynomials over F_p in t, den monic."""

    __slots__ = ("num", "den", "p", "_hash")

    def __init__(self, num, den, p):
        self.num = num
        self.den = den
        self.p = p
        self._hash = None

    @classmethod
    def make(cls, num, den, p):
        if den.is_zero():
            raise DivisionByZero("zero denominator in F_p(t)")
        if num.is_zero():
            return cls(num, flint.nmod_poly([1], p), p)
        g = num.gcd(den)
        if g.degree() > 0:
            num = num // g
            den = den // g
        lc = int(den[den.degree()])
        if lc != 1:
            inv = pow(lc, -1, p)
            num = num * inv
            den = den * inv
        return cls(num, den, p)

    def _coerce(self, other):
        if isinstance(other, FpT):
            return other
        if isinstance(other, int):
            return FpT(flint.nmod_poly([other % self.p], self.p), flint.nmod_poly([1], self.p), self.p)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return FpT.make(self.num + other.num, self.den, self.p)
        return FpT.make(self.num * other.den + other.num * self.den, self.den * other.den, self.p)

    __radd__ = __add__

    def __neg__(self):
        return FpT(-self.num, self.den, self.p)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FpT.make(self.num * other.num, self.den * other.den, self.p)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise DivisionByZero("inverse of zero in F_p(t)")
        return FpT.make(self.den, self.num, self.p)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        return FpT(self.num ** n, self.den ** n, self.p) if n else self._coerce(1)

    def __eq__(self, other):
        if isinstance(other, int):
            return self.den.degree() == 0 and self.num == flint.nmod_poly([other % self.p], self.p)
        if not isinstance(other, FpT):
            return NotImplemented
        return self.p == other.p and self.num == other.num and self.den == other.den

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        if self._hash is None:
            if self.den.degree() == 0 and self.num.degree() <= 0:
                # agree with hash(int) for constants so dict lookups mix safely
                self._hash = hash(int(self.num[0]) if self.num.degree() == 0 else 0)
            else:
                self._hash = hash((self.p, tuple(int(c) for c in self.num.coeffs()),
                                   tuple(int(c) for c in self.den.coeffs())))
        return self._hash

    def __bool__(self):
        return not self.num.is_zero()

    def is_constant(self):
        return self.den.degree() == 0 and self.num.degree() <= 0

    def __str__(self):
        n = _fmt_nmod(self.num)
        if self.den.degree() == 0:
            return n
        return f"({n})/({_fmt_nmod(self.den)})"

    __repr__ = __str__


def _fmt_nmod(poly):
    cs = [int(c) for c in poly.coeffs()]
    if not cs:
        return "0"
    terms = []
    for i in range(len(cs) - 1, -1, -1):
        c = cs[i]
        if c == 0:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            mono = "t" if i == 1 else f"t^{i}"
            terms.append(mono if c == 1 else f"{c}*{mono}")
    return "+".join(terms)


class PrimeFnField(FieldConfig):
    """The rational function field F_p(t)."""

    kind = "fp"

    def __init__(self, p):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.characteristic = p
        self._one_poly = flint.nmod_poly([1], p)
        self._ctx = flint.nmod_mpoly_ctx.get(("x", "t"), modulus=p)

    def __call__(self, value):
        p = self.characteristic
        if isinstance(value, FpT):
            return value
        if isinstance(value, int):
            return FpT(flint.nmod_poly([value % p], p), self._one_poly, p)
        if isinstance(value, flint.fmpq):
            return self(int(value.p)) / self(int(value.q))
        if isinstance(value, flint.nmod_poly):
            return FpT.make(value, self._one_poly, p)
        if isinstance(value, str):
            from .expr import evaluate_scalar
            return evaluate_scalar(value, self)
        raise TypeError(f"cannot coerce {value!r} into F_{p}(t)")

    @property
    def t(self):
        return FpT(flint.nmod_poly([0, 1], self.characteristic), self._one_poly, self.characteristic)

    def poly(self, coeffs):
        return DensePoly(self, [self(c) for c in coeffs])

    def roots(self, poly):
        if poly.degree() <= 0:
            return [], False
        p = self.characteristic
        cs = poly.coeffs()
        den = self._one_poly
        for c in cs:
            den = den * (c.den // den.gcd(c.den))
        terms = {}
        for i, c in enumerate(cs):
            q = c.num * (den // c.den)
            for j, v in enumerate(q.coeffs()):
                if int(v):
                    terms[(i, j)] = int(v)
        mp = self._ctx.from_dict(terms)
        _, facs = mp.factor()
        out, nonlinear = [], False
        for fac, mult in facs:
            dx = fac.degrees()[0]
            if dx == 0:
                continue
            if dx > 1:
                nonlinear = True
                continue
            a = [0] * (fac.degrees()[1] + 1)
            b = [0] * (fac.degrees()[1] + 1)
            for (ex, et), v in fac.to_dict().items():
                (b if ex == 1 else a)[et] = int(v)
            root = FpT.make(-flint.nmod_poly(a, p), flint.nmod_poly(b, p), p)
            out.append((root, mult))
        out.sort(key=lambda rm: self.sort_key(rm[0]))
        return out, nonlinear

    def format(self, a):
        return str(a)

    def sort_key(self, a):
        return (a.den.degree(), a.num.degree(), [int(c) for c in a.den.coeffs()],
                [int(c) for c in a.num.coeffs()])

    def is_constant(self, a):
        return a.is_constant()

    def random(self, rng=None, degree=2):
        rng = rng or _random
        p = self.characteristic
        num = flint.nmod_poly([rng.randrange(p) for _ in range(degree + 1)], p)
        dd = rng.randint(0, degree)
        den = flint.nmod_poly([rng.randrange(p) for _ in range(dd)] + [1], p)
        return FpT.make(num, den, p)

    def __repr__(self):
        return f"PrimeFnField({self.characteristic})"


class DensePoly:
    """Univariate polynomial over a generic exact field, low degree first."""

    __slots__ = ("field", "_c")

    def __init__(self, field, coeffs):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.field = field
        self._c = c

    def _wrap(self, other):
        if isinstance(other, DensePoly):
            return other
        return DensePoly(self.field, [self.field(other)])

    def degree(self):
        return len(self._c) - 1

    def coeffs(self):
        return list(self._c)

    def is_zero(self):
        return not self._c

    def __getitem__(self, i):
        if 0 <= i < len(self._c):
            return self._c[i]
        return self.field.zero

    def __call__(self, v):
        # composition when v is itself a polynomial
        acc = DensePoly(self.field, []) if isinstance(v, DensePoly) else self.field.zero
        for c in reversed(self._c):
            acc = acc * v + c
        return acc

    def __add__(self, other):
        other = self._wrap(other)
        a, b = self._c, other._c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return DensePoly(self.field, out)

    __radd__ = __add__

    def __neg__(self):
        return DensePoly(self.field, [-c for c in self._c])

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, DensePoly):
            other = self.field(other)
            return DensePoly(self.field, [c * other for c in self._c])
        a, b = self._c, other._c
        if not a or not b:
            return DensePoly(self.field, [])
        out = [self.field.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return DensePoly(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        out = DensePoly(self.field, [self.field.one])
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __divmod__(self, other):
        other = self._wrap(other)
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        r = list(self._c)
        db = other.degree()
        inv = other._c[-1].inverse() if hasattr(other._c[-1], "inverse") else 1 / other._c[-1]
        if len(r) <= db:
            return DensePoly(self.field, []), DensePoly(self.field, r)
        q = [self.field.zero] * (len(r) - db)
        for i in range(len(r) - 1, db - 1, -1):
            c = r[i]
            if c == 0:
                continue
            c = c * inv
            q[i - db] = c
            for j, bj in enumerate(other._c):
                r[i - db + j] = r[i - db + j] - c * bj
        return DensePoly(self.field, q), DensePoly(self.field, r[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __eq__(self, other):
        if not isinstance(other, DensePoly):
            other = self._wrap(other)
        return self._c == other._c

    def __ne__(self, other):
        return not self.__eq__(other)

    __hash__ = None

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        if a.is_zero():
            return a
        return a * a._c[-1].inverse()

    def derivative(self):
        return DensePoly(self.field, [c * i for i, c in enumerate(self._c)][1:])

    def __repr__(self):
        return f"DensePoly({self._c!r})"
