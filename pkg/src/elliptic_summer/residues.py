"""Orbital and panorbital residues, the summability decision and its certificate."""

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Any

from .ancillary import ancillary_for, differential_scale, local_coeffs
from .curve import O, assert_non_torsion, point_key
from .errors import CrossCheckFailure
from .function_field import (FnElt, delta, laurent_expand, poles_of, standard_parameter, tau_shift,
                             uniformizer_as_function)
from .orbits import DEFAULT_ORBIT_BOUND, build_pinning, orbit_decompose

TORSION_CHECK_BOUND = 12


@dataclass
class PoleData:
    point: Any
    orbit: Any      # orbit id
    shift: int      # P = rep + shift*s
    coeffs: list    # [c_0, ..., c_m]

    @property
    def order(self):
        return len(self.coeffs) - 1


@dataclass
class ResidueReport:
    f: Any
    pinning: Any
    poles: list
    ores: dict          # (orbit id, k) -> value
    pano0: Any
    pano1: Any
    c0_at_O: Any
    d: dict = field(default_factory=dict)
    e: dict = field(default_factory=dict)

    @property
    def bound_caveat(self):
        return self.pinning.bound_caveat

    def orbit_ids(self):
        return sorted({oid for oid, _ in self.ores}, key=point_key)

    def all_vanish(self):
        return self.pano0 == 0 and self.pano1 == 0 and all(v == 0 for v in self.ores.values())

    def residue_identity(self):
        """sum ores(f, omega, k) * d_(omega, k); zero by the residue theorem."""
        F = self.pinning.curve.field
        acc = F.zero
        for key, v in self.ores.items():
            acc += v * self.d[key]
        return acc

    def nonzero_ores(self):
        return {k: v for k, v in self.ores.items() if v != 0}


@dataclass
class Summable:
    f: Any
    certificate: Any    # g with tau(g) - g = f
    report: ResidueReport

    summable = True

    def __bool__(self):
        return True


@dataclass
class NotSummable:
    f: Any
    report: ResidueReport
    _reduced: Any = None

    summable = False

    def __bool__(self):
        return False

    @property
    def reduced_form(self):
        if self._reduced is None:
            self._reduced = reduced_form(self.report)
        return self._reduced


# ------------------------------------------------------------------ setup

def default_pinning(E, s, points=(), mode="tau", rep_zs="O", bound=DEFAULT_ORBIT_BOUND, u_O=None,
                    check_torsion=True):
    if check_torsion:
        assert_non_torsion(s, E, TORSION_CHECK_BOUND)
    dec = orbit_decompose(list(points), s, bound, E)
    return build_pinning(dec, s, E, mode=mode, rep_zs=rep_zs, u_O=u_O, bound=bound)


def _prepare(f, pinning):
    poles = poles_of(f)
    pin = pinning.extended([P for P, _ in poles])
    return poles, pin


# -------------------------------------------------------------- residues

def residue_report(f, pinning):
    """All orbital residues and both panorbital residues of f relative to the pinning."""
    poles, pin = _prepare(f, pinning)
    anc = ancillary_for(pin)
    F = f.field
    data = []
    maxk = defaultdict(int)
    for P, m in poles:
        o, nr, _ = pin.locate(P)
        cs = local_coeffs(f, P, pin, m)
        data.append(PoleData(P, o.id, nr, cs))
        maxk[o.id] = max(maxk[o.id], m)
    maxk.setdefault(O, 0)
    ores = {}
    for oid, km in maxk.items():
        for k in range(1, km + 1):
            ores[(oid, k)] = F.zero
    for pd in data:
        for k in range(1, pd.order + 1):
            ores[(pd.orbit, k)] += pd.coeffs[k]
    d, e = {}, {}
    for oid, k in ores:
        d[(oid, k)] = anc.d(oid, k)
    c0 = None
    for pd in data:
        if pd.point.is_infinity:
            c0 = pd.coeffs[0]
    if c0 is None:
        c0 = local_coeffs(f, O, pin, 0)[0]
    pano0, pano1 = c0, F.zero
    for pd in data:
        for k in range(1, pd.order + 1):
            c = pd.coeffs[k]
            if c == 0:
                continue
            ek = anc.e(pd.orbit, pd.shift, k)
            e[(pd.orbit, pd.shift, k)] = ek
            pano0 -= c * ek
            pano1 += pd.shift * c * d[(pd.orbit, k)]
    return ResidueReport(f, pin, data, ores, pano0, pano1, c0, d, e)


def orbital_residues(f, pinning):
    return residue_report(f, pinning).ores


def panorbital_residues(f, pinning):
    """(pano0, pano1); pano1 is recomputed from invariant-differential residues and compared."""
    r = residue_report(f, pinning)
    if pano1_via_residues(f, r.pinning) != r.pano1:
        raise CrossCheckFailure("pano1 disagrees with the twisted residue sum")
    return r.pano0, r.pano1


def residue_std(f, P):
    """res(f * dx/(2y + a1 x + a3), P) from the standard-parameter expansion."""
    E = f.curve
    t = standard_parameter(E, P)
    return laurent_expand(f / delta(t), P, t, 0).coeff(1)


def pano1_via_residues(f, pinning):
    """sum over poles of shift * res(f * varpi_P, P), varpi_P the pinned invariant differential."""
    poles, pin = _prepare(f, pinning)
    h0 = differential_scale(pin)
    acc = f.field.zero
    for P, _ in poles:
        _, nr, _ = pin.locate(P)
        if nr:
            acc += nr * residue_std(f, P)
    return h0 * acc


# ---------------------------------------------------- reduction machinery

def _certificate_parts(report):
    """Integer-indexed coefficients of g0 with f_bar - f = tau(g0) - g0.

    Returns (a, b): g0 = sum a[(omega,k,j)] tau^j(phi_(omega,0,k)) + sum b[i] tau^(-i)(zeta_(1,0)).
    """
    anc = ancillary_for(report.pinning)
    F = report.pinning.curve.field
    a = defaultdict(lambda: F.zero)
    ct = defaultdict(lambda: F.zero)
    for pd in report.poles:
        n = pd.shift
        for k in range(1, pd.order + 1):
            c = pd.coeffs[k]
            if c == 0:
                continue
            ct[n] += c * report.d[(pd.orbit, k)]
            if n == 0 or (anc.is_exceptional(pd.orbit) and k == 1):
                continue
            if n > 0:
                for j in range(-n, 0):
                    a[(pd.orbit, k, j)] += c
            else:
                for j in range(0, -n):
                    a[(pd.orbit, k, j)] -= c
    b = defaultdict(lambda: F.zero)
    pos = sorted(n for n in ct if n >= 2)
    neg = sorted(n for n in ct if n <= -1)
    if pos:
        for j in range(2, pos[-1] + 1):
            C = sum((ct[n] for n in pos if n >= j), F.zero)
            if C != 0:
                for i in range(1, j):
                    b[i] += C
    if neg:
        for j in range(neg[0], 0):
            C = sum((ct[n] for n in neg if n <= j), F.zero)
            if C != 0:
                for i in range(j + 1, 1):
                    b[i] += C
    return a, b


def telescoper(report):
    """g0 with f_bar - f = tau(g0) - g0."""
    anc = ancillary_for(report.pinning)
    E = report.pinning.curve
    a, b = _certificate_parts(report)
    g0 = FnElt.const(E, 0)
    for (oid, k, j), c in sorted(a.items(), key=lambda it: (point_key(it[0][0]), it[0][1], it[0][2])):
        if c != 0:
            g0 = g0 + anc.phi_translate(oid, k, j) * c
    for i, c in sorted(b.items()):
        if c != 0:
            g0 = g0 + anc.zeta_translate(i) * c
    return g0


def reduced_form(report):
    """pano0 + pano1 * zeta_(1,0) + sum ores * phi_(omega,0,k)."""
    anc = ancillary_for(report.pinning)
    E = report.pinning.curve
    out = FnElt.const(E, report.pano0)
    if report.pano1 != 0:
        out = out + anc.zeta10 * report.pano1
    for (oid, k), v in sorted(report.ores.items(), key=lambda it: (point_key(it[0][0]), it[0][1])):
        if v != 0:
            out = out + anc.phi0(oid, k) * v
    return out


def verify_reduction(report):
    """Check f_bar - f = tau(g0) - g0 exactly."""
    s = report.pinning.s
    g0 = telescoper(report)
    fbar = reduced_form(report)
    return fbar - report.f == tau_shift(g0, 1, s) - g0


def decide_summable(f, pinning, certify=True):
    """Summable(certificate) or NotSummable(report) relative to the given pinning."""
    report = residue_report(f, pinning)
    if not report.all_vanish():
        return NotSummable(f, report)
    if f.is_zero():
        return Summable(f, FnElt.const(f.curve, 0), report)
    g = -telescoper(report)
    if certify and tau_shift(g, 1, report.pinning.s) - g != f:
        raise CrossCheckFailure("certificate does not telescope to f")
    return Summable(f, g, report)


def is_summable(f, pinning):
    return bool(decide_summable(f, pinning).summable)


# ------------------------------------------------------- pinning changes

def change_reps_check(f, pinning, new_reps):
    """Both sides of the representative-change laws for pano(f, 1) and pano(f, 0).

    Returns {"pano1": (lhs, rhs), "pano0": (lhs, rhs)}.
    """
    r = residue_report(f, pinning)
    pin = r.pinning
    pin2 = pin.with_reps(new_reps)
    r2 = residue_report(f, pin2)
    anc = ancillary_for(pin)
    E = pin.curve
    table = pin.table
    rhs1, rhs0 = r.pano1, r.pano0
    for (oid, k), v in r.ores.items():
        if v == 0:
            continue
        n_w = table[E.sub(pin2.rep(oid), pin.rep(oid))]
        rhs1 -= n_w * v * r.d[(oid, k)]
        rhs0 += v * anc.e(oid, n_w, k)
    return {"pano1": (r2.pano1, rhs1), "pano0": (r2.pano0, rhs0)}


def _h_series(pin, pin2, kmax):
    """h(u') = u'/u at O, for u = u_O of pin and u' = u_O of pin2."""
    u = uniformizer_as_function(pin.u_O)
    ser = laurent_expand(u, O, pin2.u_O, kmax + 2).series
    one = pin.curve.field.one
    return (ser * ser.__class__.monomial(ser.field, one, -1)).inverse()


def change_uniformizers_check(f, pinning, new_pinning):
    """Both sides of the uniformizer-change laws, including the exceptional alpha_Zs = O branch.

    Returns a dict of (lhs, rhs) pairs; "pano0_alt" is present only in the exceptional case.
    """
    r = residue_report(f, pinning)
    pin = r.pinning
    pin2 = new_pinning.extended([pd.point for pd in r.poles])
    r2 = residue_report(f, pin2)
    kmax = max([k for _, k in r.ores] + [1])
    h = _h_series(pin, pin2, kmax)
    h0, h1 = h.coefficient(0), h.coefficient(1)
    out = {"pano1": (r2.pano1, h0 * r.pano1)}
    rhs0 = r.pano0 - h1 * r.pano1
    if not pin.zs.rep.is_infinity:
        out["pano0"] = (r2.pano0, rhs0)
        return out
    E, s = pin.curve, pin.s
    shifts = set()
    for pd in r.poles:
        o, _, na = pin.locate(pd.point)
        if o.id.is_infinity:
            shifts.add(na)
    corr = E.field.zero
    for n in shifts:
        P = E.mul(n, s)
        corr += local_coeffs(f, P, pin2, 0)[0] - local_coeffs(f, P, pin, 0)[0]
    out["pano0"] = (r2.pano0, rhs0 + corr)
    alt = E.field.zero
    for k in range(1, kmax + 1):
        v = r.ores.get((O, k), E.field.zero)
        if v != 0:
            alt += (h ** k).coefficient(k) * v
    out["pano0_alt"] = (r2.pano0, rhs0 + alt)
    return out
