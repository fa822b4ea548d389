"""Divisor bookkeeping, Abel-Jacobi evaluation, principal functions and Riemann-Roch bases."""

from .algebra.linalg import kernel, rref
from .curve import O, point_key
from .divisor import Divisor
from .errors import ConstructionFailure, EmptySpace, NotPrincipal, NotRationalPoint
from .function_field import (FnElt, is_ramified, laurent_expand, points_over, series_point,
                             standard_parameter, valuation_at)
from .algebra.series import TruncatedLaurent

__all__ = [
    "Divisor", "divisor_degree", "divisor_support", "omega_component", "ev_abel_jacobi",
    "principal_function", "rr_basis", "rr_dimension",
]


def divisor_degree(D):
    return D.degree()


def divisor_support(D):
    return set(D.support())


def omega_component(D, orbit):
    """D restricted to the points of ``orbit`` (an Orbit or an iterable of points)."""
    members = getattr(orbit, "members", None)
    pts = [Q for Q, _ in members] if members is not None else list(orbit)
    return D.restrict(pts)


def omega_component_in(D, pinning, oid):
    """D_omega for the orbit ``oid`` of a pinning: every support point lying in that orbit."""
    keep = []
    for Q in D.support():
        o, _, _ = pinning.locate(Q)
        if o.id == oid:
            keep.append(Q)
    return D.restrict(keep)


def ev_abel_jacobi(D, E):
    """The group-law sum of m_P * P over the support of D."""
    acc = O
    for Q, m in D.items():
        acc = E.add(acc, E.mul(m, Q))
    return acc


# ------------------------------------------------------ principal functions

def _vertical(E, R):
    if R.is_infinity:
        return FnElt.const(E, 1)
    return FnElt.x(E) - R.x


def _line(E, R1, R2):
    """Line through R1 and R2 (tangent if equal); divisor R1 + R2 + (-(R1+R2)) - 3O."""
    x, y = FnElt.x(E), FnElt.y(E)
    if R1.x == R2.x and E.add(R1, R2).is_infinity:
        return x - R1.x
    if R1 == R2:
        lam = (3 * R1.x * R1.x + 2 * E.a2 * R1.x + E.a4 - E.a1 * R1.y) / (2 * R1.y + E.a1 * R1.x + E.a3)
    else:
        lam = (R2.y - R1.y) / (R2.x - R1.x)
    nu = R1.y - lam * R1.x
    return y - x * lam - nu


def _combine(E, a, b):
    """Merge Miller pairs: div f = D' - ([R] - [O])."""
    (R1, f1), (R2, f2) = a, b
    if R1.is_infinity:
        return R2, f1 * f2
    if R2.is_infinity:
        return R1, f1 * f2
    R3 = E.add(R1, R2)
    return R3, f1 * f2 * _line(E, R1, R2) / _vertical(E, R3)


def _miller(E, Q, m):
    """Pair (m*Q, f) with div f = m([Q] - [O]) - ([mQ] - [O]) for m >= 0."""
    result = (O, FnElt.const(E, 1))
    base = (Q, FnElt.const(E, 1))
    while m:
        if m & 1:
            result = _combine(E, result, base)
        m >>= 1
        if m:
            base = _combine(E, base, base)
    return result


def _normalize_at_O(f):
    E = f.curve
    v = valuation_at(f, O)
    lead = laurent_expand(f, O, standard_parameter(E, O), v + 1).series.coefficient(v)
    return f / lead


def principal_function(D, E):
    """r with div(r) = D, normalized to leading coefficient 1 at O in x/y."""
    if D.degree() != 0:
        raise NotPrincipal(f"degree {D.degree()} is not zero")
    if not ev_abel_jacobi(D, E).is_infinity:
        raise NotPrincipal("Abel-Jacobi sum is not the identity")
    acc = (O, FnElt.const(E, 1))
    for Q, m in D.items():
        if Q.is_infinity:
            continue
        R, f = _miller(E, Q, abs(m))
        if m < 0:
            f = (f * _vertical(E, R)).inverse()
            R = E.neg(R)
        acc = _combine(E, acc, (R, f))
    R, f = acc
    if not R.is_infinity:
        raise ConstructionFailure("Miller accumulation did not close up")
    return _normalize_at_O(f)


# ----------------------------------------------------------- Riemann-Roch

def _monomials(N):
    """Exponents (i, j) of x^i y^j with j <= 1 and 2i + 3j <= N, by pole order at O."""
    out = []
    for w in range(N + 1):
        if w % 2 == 0:
            out.append((w // 2, 0))
        elif w >= 3:
            out.append(((w - 3) // 2, 1))
    return out


def _monomial_fn(E, i, j):
    f = FnElt.x(E) ** i if i else FnElt.const(E, 1)
    return f * FnElt.y(E) if j else f


def _local_conditions(E, Q, r, monos):
    """Rows forcing every combination of ``monos`` to vanish to order >= r at Q."""
    sp = series_point(E, Q, r + 4)
    X, Y = sp.X.truncate(r), sp.Y.truncate(r)
    powers = [TruncatedLaurent.constant(E.field, E.field.one, r)]
    for _ in range(max(i for i, _ in monos)):
        powers.append((powers[-1] * X).truncate(r))
    cols = []
    for i, j in monos:
        s = powers[i] * Y if j else powers[i]
        cols.append([s.coefficient(e) for e in range(r)])
    return [[c[e] for c in cols] for e in range(r)]


def _check_points(D, E):
    for Q in D.support():
        if not Q.is_infinity and not E.contains(Q):
            raise NotRationalPoint(f"{Q} is not a point of the curve")


def rr_basis(D, E):
    """Basis of L(D) = {f : div(f) + D >= 0}."""
    _check_points(D, E)
    deg = D.degree()
    if deg < 0:
        raise EmptySpace(f"L(D) = 0 for deg D = {deg}")
    if deg == 0:
        if D.is_zero():
            return [FnElt.const(E, 1)]
        if not ev_abel_jacobi(D, E).is_infinity:
            raise EmptySpace("degree zero divisor is not principal")
        return [principal_function(-D, E)]
    F = E.field
    # multiplier h = prod (x - c)^e_c clears the affine poles
    expo = {}
    for Q, m in D.items():
        if not Q.is_infinity and m > 0:
            expo[Q.x] = max(expo.get(Q.x, 0), m)
    hpoly = F.poly([1])
    for c, e in expo.items():
        hpoly = hpoly * F.poly([-c, 1]) ** e
    N = D[O] + 2 * hpoly.degree()
    if N < 0:
        raise EmptySpace("no room for poles at O")
    monos = _monomials(N)
    need = {}
    for c, e in expo.items():
        for Q in points_over(E, c):
            v = 2 if is_ramified(E, Q) else 1
            r = e * v - D[Q]
            if r > 0:
                need[Q] = r
    for Q, m in D.items():
        if not Q.is_infinity and m < 0 and Q not in need:
            need[Q] = -m
    rows = []
    for Q in sorted(need, key=point_key):
        rows.extend(_local_conditions(E, Q, need[Q], monos))
    # columns in decreasing pole order so the RREF pivots are the leading monomials
    order = list(reversed(range(len(monos))))
    ncols = len(monos)
    if rows:
        perm_rows = [[row[k] for k in order] for row in rows]
        vecs = kernel(perm_rows, ncols, F.zero, F.one)
    else:
        vecs = []
        for idx in range(ncols):
            v = [F.zero] * ncols
            v[idx] = F.one
            vecs.append(v)
    if not vecs:
        raise EmptySpace("no nonzero function satisfies the conditions")
    red, _ = rref(vecs, ncols)
    h = FnElt.from_poly_x(E, hpoly)
    out = []
    for v in red:
        g = FnElt.const(E, 0)
        for pos, coeff in enumerate(v):
            if coeff != 0:
                i, j = monos[order[pos]]
                g = g + _monomial_fn(E, i, j) * coeff
        out.append(g / h)
    out.reverse()
    if len(out) != deg:
        raise ConstructionFailure(f"found {len(out)} basis elements for degree {deg}")
    return out


def rr_dimension(D, E):
    try:
        return len(rr_basis(D, E))
    except EmptySpace:
        return 0
