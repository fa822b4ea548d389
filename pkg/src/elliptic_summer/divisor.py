"""Formal sums of points with integer multiplicities."""

from .curve import point_key


class Divisor:
    __slots__ = ("_m",)

    def __init__(self, entries=None):
        m = {}
        for P, k in dict(entries or {}).items():
            k = int(k)
            if k:
                m[P] = m.get(P, 0) + k
                if m[P] == 0:
                    del m[P]
        self._m = m

    @classmethod
    def point(cls, P, k=1):
        return cls({P: k})

    def __getitem__(self, P):
        return self._m.get(P, 0)

    def items(self):
        return sorted(self._m.items(), key=lambda it: point_key(it[0]))

    def support(self):
        return [P for P, _ in self.items()]

    def degree(self):
        return sum(self._m.values())

    def is_zero(self):
        return not self._m

    def is_effective(self):
        return all(k > 0 for k in self._m.values())

    def restrict(self, points):
        pts = set(points)
        return Divisor({P: k for P, k in self._m.items() if P in pts})

    def __add__(self, other):
        m = dict(self._m)
        for P, k in other._m.items():
            m[P] = m.get(P, 0) + k
        return Divisor(m)

    def __neg__(self):
        return Divisor({P: -k for P, k in self._m.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, n):
        return Divisor({P: n * k for P, k in self._m.items()})

    def __eq__(self, other):
        return isinstance(other, Divisor) and self._m == other._m

    def __hash__(self):
        return hash(frozenset(self._m.items()))

    def __len__(self):
        return len(self._m)

    def __str__(self):
        if not self._m:
            return "0"
        parts = []
        for P, k in self.items():
            pt = "[O]" if P.is_infinity else f"[{P.x},{P.y}]"
            sign = "-" if k < 0 else "+"
            parts.append((sign, f"{abs(k)}*{pt}"))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    __repr__ = __str__
