import os
import random

import pytest
from hypothesis import HealthCheck, settings

from elliptic_summer import Divisor, FnElt, default_pinning, rr_basis
from elliptic_summer.selftest import (curve_37a, curve_389a, curve_f5_ordinary,
                                      curve_f5_supersingular)

settings.register_profile(
    "default", deadline=None, max_examples=int(os.environ.get("HYP_EXAMPLES", "15")),
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture],
)
settings.load_profile("default")


# ----------------------------------------------------------------- curves

@pytest.fixture(scope="session")
def c37():
    E, s = curve_37a()
    return E, s, default_pinning(E, s)


@pytest.fixture(scope="session")
def c389():
    E, s, b = curve_389a()
    return E, s, b, default_pinning(E, s, [b])


@pytest.fixture(scope="session")
def f5ss():
    E, s, b = curve_f5_supersingular()
    return E, s, b, default_pinning(E, s, [b])


@pytest.fixture(scope="session")
def f5ord():
    E, s, b = curve_f5_ordinary()
    return E, s, b, default_pinning(E, s, [b])


# ------------------------------------------------------------- generators

def orbit_points(E, s, bases, span=3):
    """Candidate pole points: base + n*s for |n| <= span, per base (O stands for Zs)."""
    out = []
    for b in bases:
        pts = [E.add(b, E.mul(n, s)) for n in range(-span, span + 1)]
        out.append(pts)
    return out


def random_divisor(rng, E, s, bases, max_orbits=3, max_order=3, max_points=3, span=3, max_deg=None):
    """Random effective divisor with support in at most ``max_orbits`` orbits."""
    groups = orbit_points(E, s, bases, span)
    rng.shuffle(groups)
    groups = groups[:rng.randint(1, min(max_orbits, len(groups)))]
    m = {}
    npts = rng.randint(1, max_points)
    for _ in range(npts):
        P = rng.choice(rng.choice(groups))
        m[P] = rng.randint(1, max_order)
    D = Divisor(m)
    if max_deg is not None:
        while D.degree() > max_deg:
            P = max(D.support(), key=lambda Q: D[Q])
            m[P] -= 1
            D = Divisor(m)
    return D


def random_in_L(rng, E, D, height=3):
    basis = rr_basis(D, E)
    g = FnElt.const(E, 0)
    for b in basis:
        c = rng.randint(-height, height)
        if c:
            g = g + b * c
    return g


def random_fp_scalar(rng, F):
    return F.random(rng, degree=1)


def random_in_L_fp(rng, E, D):
    basis = rr_basis(D, E)
    g = FnElt.const(E, 0)
    for b in basis:
        c = random_fp_scalar(rng, E.field)
        if c != 0:
            g = g + b * c
    return g


@pytest.fixture
def rng():
    return random.Random(20240601)


# ------------------------------------------------------- acceptance lines

ACCEPTANCE = {}


class criterion:
    """Context manager recording PASS when the block completes and FAIL when it raises."""

    def __init__(self, n, detail):
        self.n, self.detail = n, detail

    def __enter__(self):
        ACCEPTANCE[self.n] = (False, self.detail)
        return self

    def __exit__(self, exc_type, exc, tb):
        ACCEPTANCE[self.n] = (exc_type is None, self.detail)
        return False


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
