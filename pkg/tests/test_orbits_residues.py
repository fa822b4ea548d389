import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import random_divisor, random_in_L, random_in_L_fp
from elliptic_summer import (O, CurveSpec, FnElt, Rationals, decide_summable, default_pinning,
                             orbit_decompose, orbital_residues, panorbital_residues, residue_report, tau_shift)
from elliptic_summer.ancillary import ancillary_for, local_coeffs
from elliptic_summer.errors import TorsionPoint
from elliptic_summer.function_field import poles_of
from elliptic_summer.orbits import multiples_of, proven_outside_Zs
from elliptic_summer.residues import reduced_form, verify_reduction
from elliptic_summer.selftest import curve_37a, curve_389a


# ---------------------------------------------------------------- orbits

def test_multiples_lookup(c37):
    E, s, _ = c37
    table = multiples_of(E, s, 128)
    for n in (-9, -1, 0, 3, 11):
        assert table[E.mul(n, s)] == n
    assert E.mul(40, s) in table


def test_separation_by_reduction(c389):
    E, s, b, _ = c389
    assert proven_outside_Zs(E, s, b)
    assert proven_outside_Zs(E, s, E.mul(2, b))
    assert proven_outside_Zs(E, s, E.sub(E.mul(2, b), b))
    assert not proven_outside_Zs(E, s, E.mul(3, s))
    assert not proven_outside_Zs(E, s, O)


def test_orbit_decomposition_389a(c389):
    E, s, b, _ = c389
    pts = [E.mul(2, s), E.add(b, s), E.sub(b, E.mul(2, s)), E.mul(2, b), E.mul(-1, s)]
    dec = orbit_decompose(pts, s, 128, E)
    assert not dec.bound_caveat
    assert len(dec) == 3
    zs = dec.orbit_of(E.mul(2, s))
    assert zs.is_zs and dict(zs.members) == {E.mul(2, s): 2, E.mul(-1, s): -1}
    ob = dec.orbit_of(E.add(b, s))
    assert ob is dec.orbit_of(E.sub(b, E.mul(2, s)))
    assert sorted(n for _, n in ob.members) in ([0, 3], [-3, 0])


def test_bound_caveat_when_search_is_short(c37):
    E, s, _ = c37
    dec = orbit_decompose([E.mul(6, s)], s, 3, E)
    assert dec.bound_caveat
    assert len(dec) == 2


def test_torsion_rejected():
    E = CurveSpec(Rationals(), 0, 0, 0, 0, 1)
    with pytest.raises(TorsionPoint):
        default_pinning(E, E.point(2, 3))


@given(st.integers(-6, 6), st.integers(-6, 6))
def test_locate_shifts(m, n):
    E, s, b = curve_389a()
    pin = default_pinning(E, s, [b])
    P = E.add(b, E.mul(m, s))
    o, nr, na = pin.locate(P)
    assert o.id == b and nr == m and na == m
    o2, nr2, _ = pin.locate(E.mul(n, s))
    assert o2.id.is_infinity and nr2 == n


def test_rep_zs_auto_and_super_mode(c389):
    E, s, b, _ = c389
    pin = default_pinning(E, s, [E.mul(2, s), b], rep_zs="auto")
    assert pin.zs.rep == E.mul(2, s)
    sup = default_pinning(E, s, [b], mode="super")
    assert sup.orbits[0].u0 == sup.zs.u0
    with pytest.raises(ValueError):
        default_pinning(E, s, [b], mode="other")


# -------------------------------------------------------------- residues

def test_constant_and_zeta(c37):
    E, s, pin = c37
    r = residue_report(FnElt.const(E, 3), pin)
    assert r.pano0 == 3 and r.pano1 == 0 and r.nonzero_ores() == {}
    z = ancillary_for(pin).zeta10
    r = residue_report(z, pin)
    assert r.pano1 == 1 and r.pano0 == 0 and r.nonzero_ores() == {}
    assert panorbital_residues(z, pin) == (0, 1)


def test_x_on_37a_is_obstructed_at_order_two(c37):
    E, s, pin = c37
    x = FnElt.x(E)
    ores = orbital_residues(x, pin)
    assert ores[(O, 2)] == 1 and ores[(O, 1)] == 0
    assert not decide_summable(x, pin).summable


@pytest.mark.parametrize("seed", range(6))
def test_residues_linear_and_shift_invariant(seed, c389):
    E, s, b, pin = c389
    rng = random.Random(100 + seed)
    f = random_in_L(rng, E, random_divisor(rng, E, s, [O, b], span=2))
    g = random_in_L(rng, E, random_divisor(rng, E, s, [O, b], span=2))
    big = pin.extended([P for h in (f, g) for P, _ in poles_of(h)])
    rf, rg, rfg = (residue_report(h, big) for h in (f, g, f + g))
    for key in rfg.ores:
        assert rfg.ores[key] == rf.ores.get(key, 0) + rg.ores.get(key, 0)
    assert rfg.pano0 == rf.pano0 + rg.pano0
    assert rfg.pano1 == rf.pano1 + rg.pano1
    # tau(f) - f is summable, so f and tau(f) share every residue
    rt = residue_report(tau_shift(f, 1, s), big)
    assert rt.nonzero_ores() == rf.nonzero_ores()
    assert (rt.pano0, rt.pano1) == (rf.pano0, rf.pano1)


@pytest.mark.parametrize("seed", range(6))
def test_reduced_form_certificate(seed, c389):
    E, s, b, pin = c389
    rng = random.Random(200 + seed)
    f = random_in_L(rng, E, random_divisor(rng, E, s, [O, b], span=2))
    r = residue_report(f, pin)
    assert verify_reduction(r)
    fbar = reduced_form(r)
    rb = residue_report(fbar, r.pinning)
    assert rb.nonzero_ores() == r.nonzero_ores()
    assert (rb.pano0, rb.pano1) == (r.pano0, r.pano1)
    assert decide_summable(fbar - f, r.pinning).summable


def test_char5_decision(f5ss):
    E, s, b, pin = f5ss
    rng = random.Random(5)
    D = random_divisor(rng, E, s, [O, b], span=1, max_order=2)
    g = random_in_L_fp(rng, E, D)
    f = tau_shift(g, 1, s) - g
    res = decide_summable(f, pin)
    assert res.summable
    assert tau_shift(res.certificate, 1, s) - res.certificate == f
    assert not decide_summable(FnElt.x(E), pin).summable


def test_phi_coefficient_conditions(c389):
    E, s, b, pin = c389
    anc = ancillary_for(pin)
    for k in (1, 2, 3):
        phi = anc.phi0(b, k)
        cs = local_coeffs(phi, b, pin, k)
        assert cs[1:] == [0] * (k - 1) + [1]
        assert local_coeffs(phi, O, pin, 0)[0] == 0
    # 37a: d(Zs, k) for k <= 5, frozen from the independent series oracle
    E37, s37 = curve_37a()
    a37 = ancillary_for(default_pinning(E37, s37))
    assert [a37.d(O, k) for k in range(1, 6)] == [1, 0, 0, -2, -2]
