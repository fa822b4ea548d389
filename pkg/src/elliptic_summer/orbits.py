"""tau-orbits of points and tau-pinnings (representatives plus uniformizers)."""

from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Any

import flint

from .curve import O, CurvePoint, point_key
from .errors import NotRationalPoint
from .function_field import Uniformizer, standard_parameter

DEFAULT_ORBIT_BOUND = 128


class Multiples:
    """Lazy map n*s -> n for |n| <= bound.

    Lookups first try to prove by reduction that a point is not a multiple of
    s; only otherwise are further multiples computed.
    """

    def __init__(self, E, s, bound):
        self.E, self.s, self.bound = E, s, bound
        self._map = {O: 0}
        self._last = O
        self._n = 0

    def _extend(self):
        self._n += 1
        self._last = self.E.add(self._last, self.s)
        self._map.setdefault(self._last, self._n)
        self._map.setdefault(self.E.neg(self._last), -self._n)

    def get(self, P, default=None):
        hit = self._map.get(P)
        if hit is not None:
            return hit
        if self._n >= self.bound or proven_outside_Zs(self.E, self.s, P):
            return default
        while self._n < self.bound:
            self._extend()
            hit = self._map.get(P)
            if hit is not None:
                return hit
        return default

    def __getitem__(self, P):
        n = self.get(P)
        if n is None:
            raise KeyError(P)
        return n

    def __contains__(self, P):
        return self.get(P) is not None


@lru_cache(maxsize=64)
def multiples_of(E, s, bound):
    return Multiples(E, s, bound)


# ------------------------------------------------ separation by reduction

class _PrimeCtx:
    """Arithmetic in Z/l on plain ints."""

    def __init__(self, l):
        self.size = l
        self.l = l

    def elt(self, v):
        return v % self.l

    def inv(self, a):
        return pow(a % self.l, -1, self.l)

    def mul(self, a, b):
        return a * b % self.l

    def add(self, *xs):
        return sum(xs) % self.l


class _ExtCtx:
    """Arithmetic in F_p[t]/(q) for an irreducible q; elements are coefficient tuples."""

    def __init__(self, q):
        self.q = q
        self.p = q.modulus()
        self.size = self.p ** q.degree()

    def _poly(self, a):
        return a if isinstance(a, flint.nmod_poly) else flint.nmod_poly(list(a) if isinstance(a, tuple)
                                                                       else [a], self.p)

    def _tup(self, poly):
        return tuple(int(c) for c in (poly % self.q).coeffs())

    def elt(self, v):
        return self._tup(self._poly(v))

    def inv(self, a):
        g, u, _ = self._poly(a).xgcd(self.q)
        if g.degree() != 0:
            raise ZeroDivisionError("not invertible")
        return self._tup(u * pow(int(g[0]), -1, self.p))

    def mul(self, a, b):
        return self._tup(self._poly(a) * self._poly(b))

    def add(self, *xs):
        acc = flint.nmod_poly([], self.p)
        for x in xs:
            acc = acc + self._poly(x)
        return self._tup(acc)


def _reduction_maps(E, max_places=40):
    """Yield (ctx, reduce) for good places; reduce(a) lies in the residue field, or is None at a pole."""
    F = E.field
    if F.kind == "rational":
        def make(l):
            def red(a):
                q = int(a.q)
                if q % l == 0:
                    return None
                return int(a.p) * pow(q, -1, l) % l
            return red
        places = ((_PrimeCtx(l), make(l)) for l in _primes(3, 400))
    else:
        def make_fp(ctx):
            def red(a):
                d = a.den % ctx.q
                if d.is_zero():
                    return None
                return ctx.mul(ctx.elt(a.num), ctx.inv(d))
            return red
        places = ((ctx, make_fp(ctx)) for ctx in _fp_places(F.characteristic))
    count = 0
    for ctx, red in places:
        cs = [red(a) for a in E.coeffs]
        if any(c is None for c in cs):
            continue
        if red(E.discriminant()) in (None, 0, ()):
            continue
        yield ctx, red
        count += 1
        if count >= max_places:
            return


def _fp_places(p, max_degree=3):
    """Monic irreducible polynomials over F_p of degree <= max_degree, as residue contexts."""
    from itertools import product
    for d in range(1, max_degree + 1):
        for tail in product(range(p), repeat=d):
            q = flint.nmod_poly(list(reversed(tail)) + [1], p)
            if d > 1:
                _, facs = q.factor()
                if len(facs) != 1 or facs[0][1] != 1 or facs[0][0].degree() != d:
                    continue
            yield _ExtCtx(q)


def _primes(lo, hi):
    out = []
    for n in range(max(lo, 2), hi):
        if all(n % d for d in range(2, int(n ** 0.5) + 1)):
            out.append(n)
    return out


def _add_mod(P, Q, a, ctx):
    if P is None:
        return Q
    if Q is None:
        return P
    a1, a2, a3, a4, a6 = a
    x1, y1 = P
    x2, y2 = Q
    mul, add = ctx.mul, ctx.add
    neg = ctx.elt(-1)
    if x1 == x2:
        if add(y1, y2, mul(a1, x2), a3) == ctx.elt(0):
            return None
        num = add(mul(3, mul(x1, x1)), mul(2, mul(a2, x1)), a4, mul(neg, mul(a1, y1)))
        den = add(mul(2, y1), mul(a1, x1), a3)
    else:
        num, den = add(y2, mul(neg, y1)), add(x2, mul(neg, x1))
    lam = mul(num, ctx.inv(den))
    nu = add(y1, mul(neg, mul(lam, x1)))
    x3 = add(mul(lam, lam), mul(a1, lam), mul(neg, a2), mul(neg, x1), mul(neg, x2))
    y3 = add(mul(neg, mul(add(lam, a1), x3)), mul(neg, nu), mul(neg, a3))
    return (x3, y3)


@lru_cache(maxsize=64)
def _zs_images(E, s):
    """(reduce-point, image of Zs) for good places where s reduces to an affine point."""
    out = []
    for ctx, red in _reduction_maps(E):
        a = tuple(red(c) for c in E.coeffs)

        def rp(P, red=red):
            if P.is_infinity:
                return None
            x, y = red(P.x), red(P.y)
            if x is None or y is None:
                return None
            return (x, y)

        sb = rp(s)
        if sb is None:
            continue
        seen = set()
        R = sb
        bound = ctx.size + 2 * int(ctx.size ** 0.5) + 2     # Hasse bound
        while R is not None and R not in seen and len(seen) <= bound:
            seen.add(R)
            R = _add_mod(R, sb, a, ctx)
        if R is not None and R not in seen:
            continue    # cycle not closed, no conclusion possible here
        out.append((rp, frozenset(seen)))
    return out


def proven_outside_Zs(E, s, gamma):
    """True if gamma is provably not an integer multiple of s (by reduction at good places)."""
    if gamma.is_infinity:
        return False
    for rp, image in _zs_images(E, s):
        gb = rp(gamma)
        if gb is not None and gb not in image:
            return True
    return False


# ------------------------------------------------------------- orbit data

@dataclass(frozen=True)
class Orbit:
    """A tau-orbit met by a finite point set; members map point -> shift from the rep."""

    id: CurvePoint
    rep: CurvePoint
    members: tuple  # ((point, shift), ...), sorted by shift

    def shift_of(self, P):
        return dict(self.members)[P]

    @property
    def is_zs(self):
        return self.id.is_infinity

    def label(self):
        return "Zs" if self.is_zs else str(self.id)


@dataclass
class Decomposition:
    orbits: list
    bound_caveat: bool = False

    def __iter__(self):
        return iter(self.orbits)

    def __len__(self):
        return len(self.orbits)

    def orbit_of(self, P):
        for o in self.orbits:
            if any(Q == P for Q, _ in o.members):
                return o
        return None


def orbit_decompose(points, s, bound, E, include_zs=True):
    """Group points into tau-orbits by searching multiples of s up to ``bound``."""
    table = multiples_of(E, s, bound)
    pts = sorted(set(points), key=point_key)
    zs = [(P, table[P]) for P in pts if P in table]
    rest = [P for P in pts if P not in table]
    orbits = []
    if zs or include_zs:
        orbits.append(Orbit(O, O, tuple(sorted(zs, key=lambda pn: pn[1]))))
    while rest:
        rep = rest[0]
        mem, left = [(rep, 0)], []
        for Q in rest[1:]:
            n = table.get(E.sub(Q, rep))
            if n is None:
                left.append(Q)
            else:
                mem.append((Q, n))
        orbits.append(Orbit(rep, rep, tuple(sorted(mem, key=lambda pn: pn[1]))))
        rest = left
    caveat = False
    reps = [o.rep for o in orbits if not o.is_zs]
    for i, a in enumerate(reps):
        if not proven_outside_Zs(E, s, a):
            caveat = True
            break
        for b in reps[i + 1:]:
            if not proven_outside_Zs(E, s, E.sub(b, a)):
                caveat = True
                break
        if caveat:
            break
    return Decomposition(orbits, caveat)


# -------------------------------------------------------------- pinnings

@dataclass(frozen=True)
class OrbitPin:
    """Pinning data of one orbit.

    The uniformizer at anchor + n*s is P -> u0(P - gamma0 - n*s).
    """

    id: CurvePoint
    rep: CurvePoint
    anchor: CurvePoint
    u0: Any
    gamma0: CurvePoint = O


class Pinning:
    """A tau-pinning restricted to finitely many orbits."""

    def __init__(self, E, s, zs, orbits=(), mode="tau", bound=DEFAULT_ORBIT_BOUND, bound_caveat=False):
        self.curve = E
        self.s = s
        self.zs = zs
        self.orbits = tuple(sorted(orbits, key=lambda o: point_key(o.id)))
        self.mode = mode
        self.bound = bound
        self.bound_caveat = bound_caveat
        self._loc = {}

    def key(self):
        return (self.curve, self.s, self.zs, self.orbits, self.mode)

    def __eq__(self, other):
        return isinstance(other, Pinning) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    @property
    def table(self):
        return multiples_of(self.curve, self.s, self.bound)

    def all_orbits(self):
        return (self.zs,) + self.orbits

    def orbit(self, oid):
        if oid.is_infinity:
            return self.zs
        for o in self.orbits:
            if o.id == oid:
                return o
        raise KeyError(f"unknown orbit {oid}")

    def rep(self, oid):
        return self.orbit(oid).rep

    def locate(self, P):
        """(orbit pin, shift from rep, shift from anchor) for a point of a known orbit."""
        hit = self._loc.get(P)
        if hit is not None:
            return hit
        E, table = self.curve, self.table
        for o in self.all_orbits():
            na = table.get(E.sub(P, o.anchor))
            if na is None:
                continue
            nr = table.get(E.sub(P, o.rep))
            if nr is None:
                raise NotRationalPoint(f"representative of orbit {o.id} is too far from {P}")
            hit = (o, nr, na)
            self._loc[P] = hit
            return hit
        raise KeyError(f"{P} lies in no orbit of this pinning")

    def knows(self, P):
        try:
            self.locate(P)
            return True
        except KeyError:
            return False

    def member(self, oid, n):
        o = self.orbit(oid)
        return self.curve.add(o.rep, self.curve.mul(n, self.s))

    def uniformizer_at(self, P):
        o, _, na = self.locate(P)
        E = self.curve
        return Uniformizer(o.u0, E.add(o.gamma0, E.mul(na, self.s)))

    @property
    def u_O(self):
        return Uniformizer(self.zs.u0, self.zs.gamma0)

    # pinning changes
    def with_reps(self, reps):
        """New pinning with representatives replaced (uniformizers untouched)."""
        zs = self.zs
        if O in reps:
            zs = replace(zs, rep=reps[O])
        orbs = tuple(replace(o, rep=reps[o.id]) if o.id in reps else o for o in self.orbits)
        return Pinning(self.curve, self.s, zs, orbs, self.mode, self.bound, self.bound_caveat)

    def with_uniformizers(self, u_O=None, bases=None):
        """New pinning with a different base uniformizer at O and/or at orbit anchors."""
        bases = bases or {}
        zs = self.zs if u_O is None else replace(self.zs, u0=u_O)
        orbs = []
        for o in self.orbits:
            if o.id in bases:
                u0, g0 = bases[o.id]
                o = replace(o, u0=u0, gamma0=g0)
            elif self.mode == "super" and u_O is not None:
                o = replace(o, u0=u_O)
            orbs.append(o)
        mode = self.mode if not bases else "tau"
        return Pinning(self.curve, self.s, zs, tuple(orbs), mode, self.bound, self.bound_caveat)

    def extended(self, points):
        """Pinning with fresh orbits added for points not yet covered."""
        new = [P for P in points if not self.knows(P)]
        if not new:
            return self
        dec = orbit_decompose(new, self.s, self.bound, self.curve, include_zs=False)
        extra = [_orbit_pin(self.curve, o, self.mode, self.zs.u0) for o in dec.orbits]
        E, caveat = self.curve, self.bound_caveat or dec.bound_caveat
        for a in extra:
            if any(not proven_outside_Zs(E, self.s, E.sub(a.rep, b.rep)) for b in self.orbits):
                caveat = True
        return Pinning(E, self.s, self.zs, self.orbits + tuple(extra), self.mode, self.bound, caveat)

    def describe(self):
        lines = []
        for o in self.all_orbits():
            label = "Zs" if o.id.is_infinity else str(o.id)
            lines.append(f"{label}: rep {o.rep}, anchor {o.anchor}")
        return lines


def _orbit_pin(E, orbit, mode, u_O):
    rep = orbit.rep
    if mode == "super":
        return OrbitPin(orbit.id, rep, rep, u_O, rep)
    return OrbitPin(orbit.id, rep, rep, standard_parameter(E, rep), O)


def default_u_O(E):
    return standard_parameter(E, O)


def build_pinning(decomposition, s, E, mode="tau", rep_zs="O", u_O=None, bound=DEFAULT_ORBIT_BOUND):
    """tau-pinning over the orbits of ``decomposition``.

    ``mode`` is "tau" (standard parameter at each representative, propagated
    along the orbit) or "super" (u_alpha(P) = u_O(P - alpha) everywhere).
    ``rep_zs`` is "O" or "auto" (smallest listed member of Zs), or a point.
    """
    if mode not in ("tau", "super"):
        raise ValueError(f"unknown pinning mode {mode!r}")
    u_O = u_O if u_O is not None else default_u_O(E)
    zs_rep = O
    others = []
    for o in decomposition:
        if o.is_zs:
            if isinstance(rep_zs, CurvePoint):
                zs_rep = rep_zs
            elif rep_zs == "auto" and o.members:
                zs_rep = sorted((P for P, _ in o.members), key=point_key)[0]
        else:
            others.append(_orbit_pin(E, o, mode, u_O))
    zs = OrbitPin(O, zs_rep, O, u_O, O)
    return Pinning(E, s, zs, tuple(others), mode, bound, decomposition.bound_caveat)
