"""Ancillary functions of a tau-pinning: zeta differences, phi, phi-hat and structural constants."""

from dataclasses import dataclass, field

from .curve import O
from .divisor import Divisor
from .divisors import rr_basis
from .errors import ConstructionFailure
from .function_field import (FnElt, delta, laurent_expand, standard_parameter, tau_shift,
                             uniformizer_as_function)


def local_coeff(f, P, pinning, k):
    """c_k(f, P) relative to the pinned uniformizer at P."""
    if f.is_zero():
        return f.field.zero
    return laurent_expand(f, P, pinning.uniformizer_at(P), 1 - k).coeff(k)


def local_coeffs(f, P, pinning, order):
    """[c_0, c_1, ..., c_order] of f at P."""
    F = f.field
    if f.is_zero():
        return [F.zero] * (order + 1)
    ex = laurent_expand(f, P, pinning.uniformizer_at(P), 1)
    return [ex.coeff(k) for k in range(order + 1)]


def u_O_function(pinning):
    return uniformizer_as_function(pinning.u_O)


def differential_scale(pinning):
    """h0 = delta(u_O)(O): the pinned invariant differential is h0 times dx/(2y + a1 x + a3)."""
    E = pinning.curve
    du = delta(u_O_function(pinning))
    return laurent_expand(du, O, standard_parameter(E, O), 1).coeff(0)


@dataclass
class StructuralConstants:
    d: dict = field(default_factory=dict)   # (orbit id, k) -> d
    e: dict = field(default_factory=dict)   # (orbit id, n, k) -> e


class Ancillary:
    """Lazily built ancillary data of one pinning (cached, values are immutable)."""

    def __init__(self, pinning):
        self.pinning = pinning
        self.curve = pinning.curve
        self.s = pinning.s
        self._zeta = None
        self._zeta_tr = {}
        self._phi0 = {}
        self._phi_direct = {}
        self._phi_hat = {}
        self._phi_tr = {}
        self._d = {}
        self._c0_zeta = {}
        self._e = {}

    # ------------------------------------------------------------ zeta
    @property
    def zeta10(self):
        if self._zeta is None:
            self._zeta = self._build_zeta10()
        return self._zeta

    def _build_zeta10(self):
        E, s, pin = self.curve, self.s, self.pinning
        basis = rr_basis(Divisor({s: 1, O: 1}), E)
        g = next(b for b in basis if not b.is_constant())
        g = g / local_coeff(g, s, pin, 1)
        g = g - local_coeff(g, O, pin, 0)
        if local_coeff(g, O, pin, 1) != -1:
            raise ConstructionFailure("c_1(zeta_(1,0), O) is not -1")
        return g

    def zeta_translate(self, i):
        """tau^(-i)(zeta_(1,0))."""
        hit = self._zeta_tr.get(i)
        if hit is None:
            hit = self.zeta10 if i == 0 else tau_shift(self.zeta10, -i, self.s)
            self._zeta_tr[i] = hit
        return hit

    def zeta(self, l, m):
        """zeta_(l,m) as a signed sum of translates of zeta_(1,0)."""
        E = self.curve
        if l == m:
            return FnElt.const(E, 0)
        lo, hi, sign = (m, l, 1) if l > m else (l, m, -1)
        acc = FnElt.const(E, 0)
        for i in range(lo, hi):
            acc = acc + self.zeta_translate(i)
        return acc if sign > 0 else -acc

    # ------------------------------------------------------------- phi
    def is_exceptional(self, oid):
        return oid.is_infinity and self.pinning.zs.rep.is_infinity

    def _phi_point(self, oid, n):
        E = self.curve
        return E.add(self.pinning.rep(oid), E.mul(n, self.s))

    def build_phi_direct(self, oid, n, k):
        """phi_(omega,n,k) by the inductive construction at shift n."""
        key = (oid, n, k)
        if key in self._phi_direct:
            return self._phi_direct[key]
        E, pin = self.curve, self.pinning
        if self.is_exceptional(oid):
            res = FnElt.const(E, 0) if k == 1 else self.build_phi_hat(n, k)
            self._phi_direct[key] = res
            return res
        A = self._phi_point(oid, n)
        B = E.mul(n, self.s)
        basis = rr_basis(Divisor({A: k}) + Divisor({B: 1}), E)
        g = next(b for b in basis if local_coeff(b, A, pin, k) != 0)
        phi = g / local_coeff(g, A, pin, k)
        cs = local_coeffs(phi, A, pin, k)
        for j in range(1, k):
            if cs[j] != 0:
                phi = phi - self.build_phi_direct(oid, n, j) * cs[j]
        phi = phi - local_coeff(phi, B, pin, 0)
        cs = local_coeffs(phi, A, pin, k)
        if any(cs[j] != (1 if j == k else 0) for j in range(1, k + 1)):
            raise ConstructionFailure(f"phi({oid}, {n}, {k}) fails its coefficient conditions")
        if local_coeff(phi, B, pin, 0) != 0:
            raise ConstructionFailure(f"phi({oid}, {n}, {k}) has c_0 != 0 at {B}")
        self._phi_direct[key] = phi
        return phi

    def build_phi_hat(self, n, k):
        """phi-hat_(Zs,n,k) in L(k[ns]), k >= 2."""
        if k < 2:
            raise ValueError("phi-hat needs k >= 2")
        key = (n, k)
        if key in self._phi_hat:
            return self._phi_hat[key]
        E, pin = self.curve, self.pinning
        A = E.mul(n, self.s)
        basis = rr_basis(Divisor({A: k}), E)
        g = next(b for b in basis if local_coeff(b, A, pin, k) != 0)
        phi = g / local_coeff(g, A, pin, k)
        cs = local_coeffs(phi, A, pin, k)
        for j in range(2, k):
            if cs[j] != 0:
                phi = phi - self.build_phi_hat(n, j) * cs[j]
        phi = phi - local_coeff(phi, A, pin, 0)
        cs = local_coeffs(phi, A, pin, k)
        if cs[k] != 1 or cs[0] != 0 or any(cs[j] != 0 for j in range(2, k)):
            raise ConstructionFailure(f"phi-hat({n}, {k}) fails its coefficient conditions")
        self._phi_hat[key] = phi
        return phi

    def phi0(self, oid, k):
        hit = self._phi0.get((oid, k))
        if hit is None:
            hit = self.build_phi_direct(oid, 0, k)
            self._phi0[(oid, k)] = hit
        return hit

    def phi_translate(self, oid, k, j):
        """tau^j(phi_(omega,0,k)) = phi_(omega,-j,k)."""
        key = (oid, k, j)
        hit = self._phi_tr.get(key)
        if hit is None:
            base = self.phi0(oid, k)
            hit = base if j == 0 or base.is_zero() else tau_shift(base, j, self.s)
            self._phi_tr[key] = hit
        return hit

    def phi(self, oid, n, k, direct=False):
        if direct:
            return self.build_phi_direct(oid, n, k)
        return self.phi_translate(oid, k, -n)

    # --------------------------------------------- structural constants
    def d(self, oid, k):
        key = (oid, k)
        if key not in self._d:
            if self.is_exceptional(oid) and k == 1:
                val = self.curve.field.one
            else:
                val = -local_coeff(self.phi0(oid, k), O, self.pinning, 1)
            self._d[key] = val
        return self._d[key]

    def c0_zeta_n0(self, n):
        """c_0(zeta_(n,0), O)."""
        if n in self._c0_zeta:
            return self._c0_zeta[n]
        E, s, pin = self.curve, self.s, self.pinning
        z = self.zeta10
        acc = E.field.zero
        if n > 0:
            for i in range(n):
                acc += local_coeff(z, E.mul(-i, s), pin, 0)
        elif n < 0:
            for j in range(1, -n + 1):
                acc -= local_coeff(z, E.mul(j, s), pin, 0)
        self._c0_zeta[n] = acc
        return acc

    def e(self, oid, n, k):
        key = (oid, n, k)
        if key in self._e:
            return self._e[key]
        E = self.curve
        phi = self.phi0(oid, k)
        c0 = E.field.zero if phi.is_zero() else local_coeff(phi, E.mul(-n, self.s), self.pinning, 0)
        val = c0 + self.d(oid, k) * self.c0_zeta_n0(n)
        self._e[key] = val
        return val

    def d_series_recipe(self, kmax):
        """d_(Zs,k) for k <= kmax from the expansion of h0 * u_O / delta(u_O) at O."""
        pin = self.pinning
        du = delta(u_O_function(pin))
        ex = laurent_expand(du, O, pin.u_O, kmax)
        ser = ex.series
        h0 = ser.coefficient(0)
        inv = ser.inverse()
        return {k: h0 * inv.coefficient(k - 1) for k in range(1, kmax + 1)}


_ANCILLARY = {}


def ancillary_for(pinning):
    anc = _ANCILLARY.get(pinning)
    if anc is None:
        if len(_ANCILLARY) > 64:
            _ANCILLARY.clear()
        anc = Ancillary(pinning)
        _ANCILLARY[pinning] = anc
    return anc


def build_zeta10(pinning):
    return ancillary_for(pinning).zeta10


def build_zeta_lm(l, m, pinning):
    return ancillary_for(pinning).zeta(l, m)


def build_phi(oid, n, k, pinning, direct=False):
    return ancillary_for(pinning).phi(oid, n, k, direct=direct)


def build_phi_hat(n, k, pinning):
    return ancillary_for(pinning).build_phi_hat(n, k)


def structural_constants(pinning, orbits, k_max, shifts=(), check=True):
    """d for every (orbit, k <= k_max), e for every (orbit, n in shifts, k).

    With ``check`` the Zs constants are also derived from the series of
    h0 * u_O / delta(u_O) and compared.
    """
    anc = ancillary_for(pinning)
    sc = StructuralConstants()
    for oid in orbits:
        for k in range(1, k_max + 1):
            sc.d[(oid, k)] = anc.d(oid, k)
            for n in shifts:
                sc.e[(oid, n, k)] = anc.e(oid, n, k)
    if sc.d.get((O, 1), 1) != 1:
        raise ConstructionFailure("d_(Zs,1) != 1")
    if any(sc.d[(oid, 1)] == 0 for oid in orbits):
        raise ConstructionFailure("some d_(omega,1) vanishes")
    if check and O in orbits:
        alt = anc.d_series_recipe(k_max)
        for k in range(1, k_max + 1):
            if alt[k] != sc.d[(O, k)]:
                raise ConstructionFailure(f"d_(Zs,{k}) disagrees with the series recipe")
    return sc
