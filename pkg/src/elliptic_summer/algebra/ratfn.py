"""Rational functions in one variable x over a base field."""

from ..errors import DivisionByZero
from . import poly as P


class RatFn:
    """num/den with gcd 1 and den monic."""

    __slots__ = ("field", "num", "den", "_key")

    def __init__(self, field, num, den=None, reduce=True):
        if den is None:
            den = field.poly([1])
        if P.is_zero(den):
            raise DivisionByZero("rational function with zero denominator")
        if reduce:
            if P.is_zero(num):
                den = field.poly([1])
            else:
                g = num.gcd(den)
                if g.degree() > 0:
                    num, den = num // g, den // g
                c = P.lead(den)
                if c != 1:
                    inv = 1 / c
                    num, den = num * inv, den * inv
        self.field = field
        self.num = num
        self.den = den
        self._key = None

    @classmethod
    def const(cls, field, c):
        return cls(field, field.poly([c]), reduce=False)

    def is_zero(self):
        return P.is_zero(self.num)

    def is_constant(self):
        return self.num.degree() <= 0 and self.den.degree() == 0

    def key(self):
        if self._key is None:
            self._key = (P.key(self.num), P.key(self.den))
        return self._key

    def __eq__(self, other):
        if not isinstance(other, RatFn):
            other = RatFn.const(self.field, self.field(other))
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __add__(self, other):
        if not isinstance(other, RatFn):
            other = RatFn.const(self.field, self.field(other))
        if self.den == other.den:
            return RatFn(self.field, self.num + other.num, self.den)
        return RatFn(self.field, self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFn(self.field, -self.num, self.den, reduce=False)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, RatFn):
            other = RatFn.const(self.field, self.field(other))
        return RatFn(self.field, self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, RatFn):
            other = RatFn.const(self.field, self.field(other))
        if other.is_zero():
            raise DivisionByZero("division by zero rational function")
        return RatFn(self.field, self.num * other.den, self.den * other.num)

    def __call__(self, v):
        d = self.den(v)
        if d == 0:
            raise DivisionByZero("pole of rational function")
        return self.num(v) / d

    def __str__(self):
        n = P.fmt(self.num, self.field)
        if self.den.degree() == 0:
            return n
        return f"({n})/({P.fmt(self.den, self.field)})"

    __repr__ = __str__
