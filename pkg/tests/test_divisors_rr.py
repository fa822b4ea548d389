import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import random_divisor
from elliptic_summer import (O, Divisor, FnElt, divisor_of, ev_abel_jacobi, principal_function,
                             rr_basis, rr_dimension)
from elliptic_summer.algebra.linalg import kernel, rank
from elliptic_summer.errors import NotPrincipal
from elliptic_summer.function_field import laurent_expand, poles_of, standard_parameter, valuation_at
from elliptic_summer.selftest import curve_37a, curve_389a, curve_f5_supersingular

E37, S37 = curve_37a()


def _in_L(f, D):
    """div(f) + D >= 0, for effective D: every pole of f is bounded by D."""
    if f.is_zero():
        return True
    return all(k <= D[P] for P, k in poles_of(f))


def _independent(basis, D, E):
    """Rank of the principal-part plus constant-term matrix of the basis."""
    rows = []
    for b in basis:
        row = []
        for P in sorted(D.support(), key=E.sort_key):
            ex = laurent_expand(b, P, standard_parameter(E, P), 1)
            row += [ex.coeff(k) for k in range(D[P], -1, -1)]
        rows.append(row)
    return rank(rows, len(rows[0])) == len(basis) if rows else True


def test_divisor_arithmetic():
    s, t = S37, E37.mul(2, S37)
    D = Divisor({s: 2, t: -1, O: 0})
    assert D.degree() == 1
    assert O not in D.support()
    assert (D - D).is_zero()
    assert D + Divisor({t: 1}) == Divisor({s: 2})
    assert 3 * Divisor({s: 1}) == Divisor({s: 3})
    assert not D.is_effective() and Divisor({s: 1}).is_effective()


def test_abel_jacobi():
    E, s = E37, S37
    D = Divisor({s: 1, E.mul(2, s): 1, E.mul(-3, s): 1, O: -3})
    assert ev_abel_jacobi(D, E) == O
    assert ev_abel_jacobi(Divisor({s: 2, O: -2}), E) == E.mul(2, s)


@given(st.lists(st.tuples(st.integers(-4, 4), st.integers(-2, 2)), min_size=1, max_size=4))
def test_principal_function_round_trip(terms):
    E, s, b = curve_389a()
    m = {}
    for n, k in terms:
        P = E.add(E.mul(n, s), b) if k % 2 else E.mul(n, s)
        m[P] = m.get(P, 0) + k
    D = Divisor(m)
    # close up: subtract the sum point and balance the degree at O
    tot = ev_abel_jacobi(D, E)
    if not tot.is_infinity:
        D = D + Divisor({E.neg(tot): 1})
    D = D + Divisor({O: -D.degree()})
    if D.is_zero():
        return
    r = principal_function(D, E)
    assert divisor_of(r) == D
    # normalized: leading coefficient 1 in x/y at O
    v = valuation_at(r, O)
    assert laurent_expand(r, O, standard_parameter(E, O), v + 1).series.coefficient(v) == 1


def test_principal_function_rejects():
    with pytest.raises(NotPrincipal):
        principal_function(Divisor({S37: 1, O: -1}), E37)
    with pytest.raises(NotPrincipal):
        principal_function(Divisor({S37: 1}), E37)


@pytest.mark.parametrize("seed", range(8))
def test_rr_basis_dimension_and_membership(seed):
    rng = random.Random(seed)
    E, s, b = curve_389a()
    D = random_divisor(rng, E, s, [O, b], max_points=3, max_order=3, span=2)
    basis = rr_basis(D, E)
    assert len(basis) == D.degree() == rr_dimension(D, E)
    assert all(_in_L(f, D) for f in basis)
    assert _independent(basis, D, E)


def test_rr_small_cases():
    E, s = E37, S37
    assert rr_dimension(Divisor(), E) == 1
    assert rr_dimension(Divisor({s: 1}), E) == 1
    assert rr_dimension(Divisor({O: 2}), E) == 2
    basis = rr_basis(Divisor({O: 3}), E)
    x, y = FnElt.x(E), FnElt.y(E)
    # L(3[O]) = <1, x, y>
    rows = [[f.n0[0], f.n0[1], f.n1[0]] for f in basis]
    assert rank(rows, 3) == 3
    assert all(_in_L(f, Divisor({O: 3})) for f in (x, y))
    assert kernel(rows, 3, E.field.zero, E.field.one) == []


def test_rr_sign_convention():
    # x lies in L(2[O]) but not in L(2[s])
    E, s = E37, S37
    x = FnElt.x(E)
    assert _in_L(x, Divisor({O: 2}))
    assert not _in_L(x, Divisor({s: 2}))


def test_rr_over_f5():
    E, s, b = curve_f5_supersingular()
    D = Divisor({s: 2, b: 1, O: 1})
    basis = rr_basis(D, E)
    assert len(basis) == 4
    assert all(_in_L(f, D) for f in basis)
