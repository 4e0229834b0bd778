import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mwdrw.comparison import (
    ComparisonMap,
    FrobLift,
    coordinate_map,
    functoriality_check,
    induced_form_map,
    overconvergence_profile,
    project_slot0,
    witt_coordinate_ring,
)
from mwdrw.errors import BoundViolation, IncompatibleLifts, NotDivisible
from mwdrw.forms import Form, RingMap, exterior_derivative, wedge
from mwdrw.homotopy import build_strong_homotopy, chain_homotopy
from mwdrw.poly import LaurentRing
from mwdrw.randgen import rand_frobenius_lift, rng_for
from mwdrw.witt import WittVec, ghost, witt_add, witt_mul

from strategies import polys


def ring(p, N, n, inv=False):
    return LaurentRing(p, N + n - 1, ("x",), (inv,))


def agree(u, v):
    return u.n == v.n and all(a.equal_at(b, min(a.prec, b.prec)) for a, b in zip(u, v))


@pytest.mark.parametrize("p", [2, 3, 5])
def test_teichmuller_for_standard_lift(p):
    R = ring(p, 3, 3)
    x = R.gen(0)
    cm = ComparisonMap(FrobLift.standard(R), 3, 3)
    for a in (x, x**4, R.one()):
        s = cm.s_f(a)
        assert s.ledger == (5, 4, 3)
        assert s[0] == a and all(c.is_zero() for c in s.comps[1:])
    t = cm.t_f(x)
    assert t == WittVec.teichmuller(x.reduce(1), 3)


def test_perturbed_lift_example():
    for p in (2, 3, 5):
        R = ring(p, 3, 2)
        x = R.gen(0)
        cm = ComparisonMap(FrobLift(RingMap(R, R, [x**p + x.times_p(1)])), 2, 3)
        s = cm.s_f(x)
        assert s[0] == x and s[1] == x.reduce(3)


def test_one_maps_to_one_for_every_lift():
    rng = rng_for(0, "one")
    for p in (2, 3):
        R = ring(p, 2, 3, inv=True)
        cm = ComparisonMap(FrobLift(rand_frobenius_lift(rng, R)), 3, 2)
        assert agree(cm.s_f(R.one()), WittVec.one(R, 3))


def test_ghost_of_s_f_is_the_frobenius_orbit():
    R = ring(3, 2, 3)
    x = R.gen(0)
    f = RingMap(R, R, [x**3 + (x**2).times_p(1)])
    cm = ComparisonMap(FrobLift(f), 3, 2)
    a = x**2 + R.const(4) * x
    g = ghost(cm.s_f(a))
    orbit = [a, f(a), f(f(a))]
    for gi, oi in zip(g, orbit):
        assert gi.equal_at(oi, gi.prec)


def test_non_frobenius_map():
    R = ring(3, 2, 2)
    x = R.gen(0)
    with pytest.raises(NotDivisible):
        FrobLift(RingMap(R, R, [x**3 + x]))
    cm = ComparisonMap(FrobLift(RingMap(R, R, [x**3 + x]), check=False), 2, 2)
    with pytest.raises(NotDivisible):
        cm.s_f(x)


@settings(max_examples=200)
@given(st.sampled_from([2, 3, 5]), st.integers(1, 4), st.integers(1, 3), st.data())
def test_t_f_is_ring_homomorphism(p, n, N, data):
    R = ring(p, N, n, inv=data.draw(st.booleans()))
    rng = rng_for(data.draw(st.integers(0, 10**6)), "lift")
    cm = ComparisonMap(FrobLift(rand_frobenius_lift(rng, R)), n, N)
    deg = 3 if p == 5 else 4
    a, b = data.draw(polys(R, max_terms=3, max_deg=deg)), data.draw(polys(R, max_terms=3, max_deg=deg))
    ta, tb = cm.t_f(a), cm.t_f(b)
    assert agree(cm.t_f(a + b), witt_add(ta, tb))
    assert agree(cm.t_f(a * b), witt_mul(ta, tb))
    assert cm.t_f(a)[0] == a.reduce(1)


def test_functoriality_square():
    R = ring(3, 3, 3)
    x = R.gen(0)
    cm = ComparisonMap(FrobLift.standard(R), 3, 3)
    tests = [x, x + R.one(), x**3]
    assert all(ok for _, ok in functoriality_check(cm, cm, RingMap.identity(R), tests))
    assert all(ok for _, ok in functoriality_check(cm, cm, RingMap(R, R, [x**2]), tests))
    with pytest.raises(IncompatibleLifts):
        functoriality_check(cm, cm, RingMap(R, R, [x + R.one()]), tests)


def test_functoriality_between_different_lifts():
    # phi: x -> 1/x intertwines f and f'(x) = 1/f(1/x)
    R = ring(3, 2, 2, inv=True)
    x = R.gen(0)
    f = RingMap(R, R, [x**3 + x.times_p(1)])
    f2 = RingMap(R, R, [(x**-3 + (x**-1).times_p(1)).inverse()])
    phi = RingMap(R, R, [x**-1])
    cm, cm2 = ComparisonMap(FrobLift(f), 2, 2), ComparisonMap(FrobLift(f2), 2, 2)
    assert all(ok for _, ok in functoriality_check(cm, cm2, phi, [x, x**2 + x**-1]))


def test_profile_examples():
    R = ring(2, 3, 4)
    x = R.gen(0)
    std = ComparisonMap(FrobLift.standard(R), 4, 3)
    assert overconvergence_profile(std, x) == [(0, 1, 1), (1, None, 2), (2, None, 4), (3, None, 8)]
    R3 = ring(3, 3, 2)
    y = R3.gen(0)
    cm = ComparisonMap(FrobLift(RingMap(R3, R3, [y**3 + y.times_p(1)])), 2, 3)
    assert overconvergence_profile(cm, y) == [(0, 1, 1), (1, 1, 3)]
    for p in (2, 3):
        Rp = ring(p, 3, 4)
        z = Rp.gen(0)
        cm = ComparisonMap(FrobLift(RingMap(Rp, Rp, [z**p + (z**p).times_p(1)])), 4, 3)
        prof = overconvergence_profile(cm, z**2)
        assert all(d is None or d <= 2 * p**i for i, d, _ in prof)


def test_profile_precondition():
    R = ring(2, 2, 3)
    x = R.gen(0)
    cm = ComparisonMap(FrobLift(RingMap(R, R, [x**2 + (x**3).times_p(1)])), 3, 2)
    with pytest.raises(BoundViolation):
        overconvergence_profile(cm, x)


def test_induced_form_map_examples():
    R = ring(3, 2, 3)
    R.gen(0)
    cm = ComparisonMap(FrobLift.standard(R), 3, 2)
    C = witt_coordinate_ring(R, 3)
    assert C.names == ("x_0", "x_1", "x_2")
    assert induced_form_map(cm, Form.dx(R, 0)) == Form.dx(C.with_prec(cm.M), 0)


def test_induced_form_map_is_dga_and_reduces_to_identity():
    rng = rng_for(3, "dga")
    for p in (2, 3):
        R = LaurentRing(p, 4, ("x", "y"), (True, False))
        x, y = R.gens()
        cm = ComparisonMap(FrobLift(rand_frobenius_lift(rng, R, terms=2, degree=1)), 2, 3)
        a = Form.function(x * y + x**-1)
        b = Form.dx(R, 1).scale(x**2) + Form.dx(R, 0).scale(y)
        assert induced_form_map(cm, exterior_derivative(a)) == exterior_derivative(induced_form_map(cm, a))
        assert induced_form_map(cm, wedge(a, b)) == wedge(induced_form_map(cm, a), induced_form_map(cm, b))
        assert project_slot0(induced_form_map(cm, b), cm.ring, 2) == b.reduce(1)
        db = exterior_derivative(b)
        assert project_slot0(induced_form_map(cm, db), cm.ring, 2) == db.reduce(1)


def test_two_lifts_give_homotopic_form_maps():
    for p in (2, 3):
        R = ring(p, 3, 2, inv=True)
        x = R.gen(0)
        c1 = ComparisonMap(FrobLift.standard(R), 2, 3)
        c2 = ComparisonMap(FrobLift(RingMap(R, R, [x**p + (x**-1).times_p(1)])), 2, 3)
        assert c1.t_f(x)[0] == c2.t_f(x)[0]
        cert = build_strong_homotopy(coordinate_map(c1), coordinate_map(c2))
        for w in (Form.dx(R, 0), Form.dx(R, 0).scale(x**-1), Form.function(x**2 + x)):
            assert chain_homotopy(cert, w).verified
