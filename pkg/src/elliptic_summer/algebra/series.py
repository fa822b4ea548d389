"""Truncated Laurent series with pessimistic precision tracking.

A series is ``sum(coeffs[i] * u**(val + i)) + O(u**prec)``; ``prec=None``
marks an exact (finite) series.  Every operation returns the largest
absolute precision it can justify from the precisions of its inputs.
"""

from ..errors import NotInvertibleOrder, PrecisionLoss, ZeroSeries


def _min(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _mul_lists(a, b, n, zero):
    """First n coefficients of the product of two coefficient lists."""
    if n <= 0 or not a or not b:
        return []
    out = [zero] * min(n, len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if i >= len(out):
            break
        if x == 0:
            continue
        for j in range(min(len(b), len(out) - i)):
            out[i + j] += x * b[j]
    return out


def _inv_list(a, n, zero):
    """First n coefficients of 1/a for a power series a with a[0] != 0."""
    inv0 = 1 / a[0]
    b = [inv0]
    for k in range(1, n):
        acc = zero
        for j in range(1, min(k, len(a) - 1) + 1):
            acc += a[j] * b[k - j]
        b.append(-acc * inv0)
    return b


class TruncatedLaurent:
    __slots__ = ("field", "val", "coeffs", "prec")

    def __init__(self, field, val, coeffs, prec=None):
        coeffs = [field(c) if isinstance(c, int) else c for c in coeffs]
        zero = field.zero
        i = 0
        while i < len(coeffs) and coeffs[i] == 0:
            i += 1
        if i:
            coeffs = coeffs[i:]
            val += i
        if prec is not None:
            if val >= prec:
                coeffs, val = [], prec
            else:
                coeffs = coeffs[: prec - val]
                coeffs += [zero] * (prec - val - len(coeffs))
        else:
            while coeffs and coeffs[-1] == 0:
                coeffs.pop()
            if not coeffs:
                val = 0
        self.field = field
        self.val = val
        self.coeffs = coeffs
        self.prec = prec

    # construction helpers
    @classmethod
    def constant(cls, field, c, prec=None):
        return cls(field, 0, [field(c)], prec)

    @classmethod
    def monomial(cls, field, c, e, prec=None):
        return cls(field, e, [field(c)], prec)

    @classmethod
    def zero_series(cls, field, prec=None):
        return cls(field, 0, [], prec)

    @property
    def leading_exponent(self):
        return self.val

    def is_exact(self):
        return self.prec is None

    def is_zero(self):
        """True when no nonzero coefficient is known (exact zero or O(u^prec))."""
        return not self.coeffs

    def valuation(self):
        if not self.coeffs:
            raise ZeroSeries("valuation of a series with no known nonzero coefficient")
        return self.val

    def rel_prec(self):
        return None if self.prec is None else self.prec - self.val

    def coefficient(self, e):
        if self.prec is not None and e >= self.prec:
            raise PrecisionLoss(f"coefficient of u^{e} unknown (precision {self.prec})")
        i = e - self.val
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.field.zero

    def truncate(self, prec):
        return TruncatedLaurent(self.field, self.val, self.coeffs, _min(self.prec, prec))

    def _coerce(self, other):
        if isinstance(other, TruncatedLaurent):
            return other
        return TruncatedLaurent.constant(self.field, other)

    # arithmetic
    def __add__(self, other):
        other = self._coerce(other)
        prec = _min(self.prec, other.prec)
        parts = [s for s in (self, other) if s.coeffs]
        if not parts:
            return TruncatedLaurent(self.field, 0, [], prec)
        lo = min(s.val for s in parts)
        hi = max(s.val + len(s.coeffs) for s in parts)
        if prec is not None:
            hi = min(hi, prec)
        if hi <= lo:
            return TruncatedLaurent(self.field, 0, [], prec)
        out = [self.field.zero] * (hi - lo)
        for s in parts:
            for i, c in enumerate(s.coeffs):
                j = s.val + i - lo
                if j >= len(out):
                    break
                out[j] += c
        return TruncatedLaurent(self.field, lo, out, prec)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedLaurent(self.field, self.val, [-c for c in self.coeffs], self.prec)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def _eff_val(self):
        return self.val if self.coeffs else self.prec

    def __mul__(self, other):
        if not isinstance(other, TruncatedLaurent):
            c = self.field(other)
            if c == 0:
                return TruncatedLaurent(self.field, 0, [])
            return TruncatedLaurent(self.field, self.val, [x * c for x in self.coeffs], self.prec)
        a, b = self, other
        if (a.prec is None and not a.coeffs) or (b.prec is None and not b.coeffs):
            return TruncatedLaurent(self.field, 0, [])
        va, vb = a._eff_val(), b._eff_val()
        val = va + vb
        prec = None
        if a.prec is not None:
            prec = a.prec + vb
        if b.prec is not None:
            prec = _min(prec, b.prec + va)
        n = len(a.coeffs) + len(b.coeffs) if prec is None else prec - val
        return TruncatedLaurent(self.field, val, _mul_lists(a.coeffs, b.coeffs, n, self.field.zero), prec)

    __rmul__ = __mul__

    def inverse(self, prec=None):
        """Multiplicative inverse; exact non-monomial input needs a target prec."""
        if not self.coeffs:
            raise ZeroSeries("inverse of a series with no known nonzero coefficient")
        v = self.val
        if self.prec is None:
            if len(self.coeffs) == 1:
                return TruncatedLaurent(self.field, -v, [1 / self.coeffs[0]])
            if prec is None:
                raise PrecisionLoss("inverse of an exact non-monomial series needs a precision")
            n = prec + v
        else:
            n = self.prec - v
            if prec is not None:
                n = min(n, prec + v)
        return TruncatedLaurent(self.field, -v, _inv_list(self.coeffs, n, self.field.zero), -v + n)

    def __truediv__(self, other):
        if not isinstance(other, TruncatedLaurent):
            return self * (1 / self.field(other))
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = TruncatedLaurent.constant(self.field, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def __eq__(self, other):
        if not isinstance(other, TruncatedLaurent):
            other = self._coerce(other)
        return (self.val, self.coeffs, self.prec) == (other.val, other.coeffs, other.prec)

    def __hash__(self):
        return hash((self.val, tuple(self.coeffs), self.prec))

    def agrees_with(self, other):
        """Equality of the known parts up to the smaller precision."""
        p = _min(self.prec, other.prec)
        d = self - other
        return not d.coeffs or (p is not None and d.val >= p)

    def __str__(self):
        fmt = self.field.format
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            e = self.val + i
            mono = "" if e == 0 else ("u" if e == 1 else f"u^{e}")
            s = fmt(c)
            if mono:
                s = mono if c == 1 else f"({s})*{mono}"
            terms.append(s)
        if self.prec is not None:
            terms.append(f"O(u^{self.prec})")
        return " + ".join(terms) if terms else "0"

    __repr__ = __str__


def series_mul_inverse(s, prec=None):
    return s.inverse(prec)


def series_compose(outer, inner, prec=None):
    """outer(inner(u)); prec optionally caps (and is required for some exact inputs)."""
    field = outer.field
    if outer.prec is None and not outer.coeffs:
        return TruncatedLaurent(field, 0, [])
    if outer.prec is None and outer.val == 0 and len(outer.coeffs) == 1:
        return TruncatedLaurent(field, 0, outer.coeffs)
    if not inner.coeffs:
        raise ZeroSeries("composition with a series with no known nonzero coefficient")
    vi = inner.val
    if vi < 1:
        raise NotInvertibleOrder("inner series must have positive valuation")
    if inner.prec is None and outer.val < 0 and len(inner.coeffs) > 1:
        if prec is None:
            raise PrecisionLoss("composition needs a target precision")
        inner = inner.truncate(prec + vi * (1 - outer.val) + 1)
    # the tail O(u^P) of outer contributes O(u^(P*vi))
    result = TruncatedLaurent(field, 0, [], None if outer.prec is None else outer.prec * vi)
    if prec is not None:
        result = result.truncate(prec)
    if outer.coeffs:
        lo = outer.val
        pw = inner ** lo if lo >= 0 else inner.inverse() ** (-lo)
        for i, c in enumerate(outer.coeffs):
            if i:
                pw = pw * inner
            if prec is not None:
                pw = pw.truncate(prec)
            if c != 0:
                result = result + pw * c
    if prec is not None:
        if result.prec is not None and result.prec < prec:
            raise PrecisionLoss(f"composition reached precision {result.prec} < {prec}")
        result = result.truncate(prec)
    return result


def series_reversion(s, prec=None):
    """Compositional inverse r with s(r(u)) = u and r(s(u)) = u."""
    field = s.field
    if not s.coeffs or s.val != 1:
        raise NotInvertibleOrder("reversion needs leading exponent exactly 1")
    P = _min(s.prec, prec)
    if P is None:
        if len(s.coeffs) == 1:
            return TruncatedLaurent(field, 1, [1 / s.coeffs[0]])
        raise PrecisionLoss("reversion of an exact non-linear series needs a precision")
    n = P - 1  # number of coefficients of u^1 .. u^(P-1)
    zero = field.zero
    a = (s.coeffs + [zero] * n)[:n]
    inv_a1 = 1 / a[0]
    r = [inv_a1] + [zero] * (n - 1)
    for k in range(1, n):
        # coefficient of u^(k+1) in s(r(u)) using powers of r truncated to n terms
        comp = _compose_power_series(a, r, k + 1, zero)
        r[k] = r[k] - comp[k] * inv_a1
    return TruncatedLaurent(field, 1, r, P)


def _compose_power_series(a, r, n, zero):
    """a(r(u)) where a, r list coefficients from u^1 upward; first n terms."""
    out = [zero] * n
    pw = list(r[:n])
    for i in range(min(len(a), n)):
        if i:
            pw = _mul_lists([zero] + pw, r, n, zero)
        c = a[i]
        if c != 0:
            for j in range(min(n, len(pw))):
                out[j] += c * pw[j]
    return out
