"""Built-in suite of worked examples and theorem checks at desk scale."""

import random

from .algebra import PrimeFnField, Rationals
from .ancillary import ancillary_for, structural_constants
from .applications import (additive_integrability, dlog_summable, gauge_equivalent_constant,
                           summable_rr_dim, summable_rr_dim_bruteforce, summable_up_to_constant)
from .curve import O, CurveSpec
from .divisor import Divisor
from .divisors import rr_basis
from .function_field import FnElt, tau_shift
from .residues import (decide_summable, default_pinning, pano1_via_residues, residue_report,
                       verify_reduction)


def curve_37a():
    Q = Rationals()
    E = CurveSpec(Q, 0, 0, 1, -1, 0)
    return E, E.point(0, 0)


def curve_389a():
    Q = Rationals()
    E = CurveSpec(Q, 0, 1, 1, -2, 0)
    return E, E.point(0, 0), E.point(1, 0)


def curve_f5_supersingular():
    """y^2 = x^3 + 1 - t^3 over F_5(t), s = (t, 1), second orbit through (-t^2, 2t^3 + 1)."""
    F = PrimeFnField(5)
    t = F.t
    E = CurveSpec(F, 0, 0, 0, 0, 1 - t ** 3)
    return E, E.point(t, F(1)), E.point(-t * t, 2 * t ** 3 + 1)


def curve_f5_ordinary():
    """y^2 = x^3 + t^2 x + 1 over F_5(t), s = (4, 2t), second orbit through (2t, 1)."""
    F = PrimeFnField(5)
    t = F.t
    E = CurveSpec(F, 0, 0, 0, t * t, 1)
    return E, E.point(F(4), 2 * t), E.point(2 * t, F(1))


def _checks():
    E, s = curve_37a()
    pin = default_pinning(E, s)
    anc = ancillary_for(pin)
    x, y = FnElt.x(E), FnElt.y(E)

    def zero_summable():
        r = decide_summable(FnElt.const(E, 0), pin)
        return r.summable and r.certificate.is_zero()

    def constant_obstruction():
        r = decide_summable(FnElt.const(E, 3), pin)
        return not r.summable and r.report.pano0 == 3 and r.report.pano1 == 0

    def zeta_pano1():
        for l, m in ((1, 0), (2, 0), (3, 1), (-1, 0)):
            r = decide_summable(anc.zeta(l, m), pin)
            if r.summable or r.report.pano1 != l - m or r.report.pano0 != 0:
                return False
            if any(v != 0 for v in r.report.ores.values()):
                return False
        return True

    def psi_summable():
        for n in range(-3, 5):
            psi = anc.zeta(1, 0) * n - anc.zeta(n, 0)
            if not decide_summable(psi, pin).summable:
                return False
        return True

    def phi_obstruction():
        # phi(Zs, 0, 1) vanishes when the Zs representative is O
        for k in (2, 3):
            r = decide_summable(anc.phi0(O, k), pin)
            if r.summable or r.report.ores.get((O, k)) != 1:
                return False
        return True

    def weierstrass_difference():
        f = x - tau_shift(x, -1, s)
        r = decide_summable(f, pin)
        return r.summable and tau_shift(r.certificate, 1, s) - r.certificate == f

    def round_trip():
        rng = random.Random(7)
        basis = rr_basis(Divisor({s: 2, E.mul(-2, s): 1, O: 2}), E)
        for _ in range(3):
            g = FnElt.const(E, 0)
            for b in basis:
                g = g + b * rng.randint(-3, 3)
            f = tau_shift(g, 1, s) - g
            r = decide_summable(f, pin)
            if not r.summable or tau_shift(r.certificate, 1, s) - r.certificate != f:
                return False
        return True

    def diff_pano_and_identity():
        f = y / (x - 1) ** 2 + x / (x + 1) + x * y
        r = residue_report(f, pin)
        return (pano1_via_residues(f, pin) == r.pano1 and r.residue_identity() == 0
                and verify_reduction(r))

    def summable_rr():
        D = Divisor({s: 2, E.mul(2, s): 2})
        return summable_rr_dim(D, pin) == 1 and summable_rr_dim_bruteforce(D, pin)[0] == 1

    def constants_recipe():
        structural_constants(pin, [O], 5, check=True)
        return anc.d(O, 1) == 1

    def zeta_witness():
        z = anc.zeta10
        v = additive_integrability(z, pin)
        return v.decision and not summable_up_to_constant(z, pin)[0]

    def gauge_round_trip():
        r = y * (x - 1) / (x + 1) ** 2
        a = tau_shift(r, 1, s) / r * 5
        v = gauge_equivalent_constant(a, pin)
        if not v.decision:
            return False
        r2, c = v.certificate
        return a == tau_shift(r2, 1, s) / r2 * c and dlog_summable(a, pin).decision

    def dlog_weighted():
        a = tau_shift(x, 1, s) / x * (x + 1)
        v = dlog_summable(a, pin)
        return v.decision == decide_summable(v.direct.f, pin).summable

    def two_orbits():
        E2, s2, b2 = curve_389a()
        pin2 = default_pinning(E2, s2, [b2])
        a2 = ancillary_for(pin2)
        W = pin2.orbits[0].id
        for k in (1, 2, 3):
            r = decide_summable(a2.phi0(W, k), pin2)
            if r.summable or r.report.ores[(W, k)] != 1:
                return False
        return not pin2.bound_caveat

    def char5_condition_two():
        E5, s5, b5 = curve_f5_supersingular()
        pin5 = default_pinning(E5, s5, [b5])
        a5 = ancillary_for(pin5)
        W = pin5.orbits[0].id
        hat = a5.build_phi_hat(0, 5)
        v1 = additive_integrability(hat, pin5)
        v2 = additive_integrability(a5.phi0(W, 5) - hat * a5.d(W, 1) ** 5, pin5)
        return (not v1.decision and v1.conditions["ores_outside_pZ"][0]
                and v2.decision)

    def char5_law():
        E5, s5, b5 = curve_f5_ordinary()
        pin5 = default_pinning(E5, s5, [b5])
        a5 = ancillary_for(pin5)
        W = pin5.orbits[0].id
        return a5.d(W, 5) == a5.d(W, 1) ** 5 * a5.d(O, 5) and a5.d(O, 5) != 0

    return [
        ("decide(0) is summable with g = 0", zero_summable),
        ("constant c has pano0 = c", constant_obstruction),
        ("zeta(l, m) has pano1 = l - m", zeta_pano1),
        ("Psi_n summable for n in -3..4", psi_summable),
        ("phi(Zs, 0, k) has ores = 1 for k = 2, 3", phi_obstruction),
        ("x - tau^-1(x) summable", weierstrass_difference),
        ("tau(g) - g round trip", round_trip),
        ("pano1 twisted residue sum and residue identity", diff_pano_and_identity),
        ("dim S(2[s] + 2[2s]) = 1", summable_rr),
        ("d(Zs, k) series recipe", constants_recipe),
        ("zeta(1,0) integrable but not constant-gauge", zeta_witness),
        ("gauge round trip a = 5 tau(r)/r", gauge_round_trip),
        ("dlog verdict agrees with direct decision", dlog_weighted),
        ("phi(W, 0, k) on a second orbit of 389a", two_orbits),
        ("char 5: condition (2) decides", char5_condition_two),
        ("char 5: d(W, 5) = d(W, 1)^5 d(Zs, 5)", char5_law),
    ]


def run_selftest(out=None):
    """Run every check; returns (passed, results) with results a list of (name, ok, error)."""
    results = []
    for name, fn in _checks():
        try:
            ok, err = bool(fn()), ""
        except Exception as exc:    # a crash counts as a failure
            ok, err = False, f"{type(exc).__name__}: {exc}"
        results.append((name, ok, err))
        if out is not None:
            out(f"{'PASS' if ok else 'FAIL'}  {name}" + (f"  ({err})" if err else ""))
    return all(ok for _, ok, _ in results), results
