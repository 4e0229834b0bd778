from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mwdrw.errors import NotCongruentModP, PrecisionExhausted, VariableMismatch
from mwdrw.forms import Form, RingMap, TForm, adjoin_t, eval_t, exterior_derivative, pullback
from mwdrw.homotopy import (
    L,
    apply_homotopy,
    build_strong_homotopy,
    chain_homotopy,
    check_homotopy_identity,
    safe_t_window,
)
from mwdrw.poly import LaurentRing
from mwdrw.randgen import rand_congruent_pair, rand_form, rand_ring, rand_tform, rng_for
from mwdrw.scalars import valuation


def tform(base, build):
    """TForm from a callable receiving (T, dT, generators of B[T])."""
    R = adjoin_t(base)
    gens = R.gens()
    return TForm.from_form(build(gens[0], Form.dx(R, 0), gens[1:], R), base)


def rational(p, num, den, N):
    q = Fraction(num, den)
    return q.numerator * pow(q.denominator, -1, p**N) % p**N


@pytest.mark.parametrize("p", [3, 5, 7])
def test_L_examples(p):
    N = 4
    B = LaurentRing(p, N, ("x",))
    assert L(tform(B, lambda T, dT, g, R: dT)) == Form.function(B.const(p))
    got = L(tform(B, lambda T, dT, g, R: dT.scale(T)))
    assert got == Form.function(B.const(rational(p, p**2, 2, N)))
    assert L(tform(B, lambda T, dT, g, R: Form.function(T**3 + g[0]))).is_zero()


@pytest.mark.parametrize("p", [2, 3, 5])
def test_identity_examples(p):
    B = LaurentRing(p, 3, ("x",))
    for build, lhs in [
        (lambda T, dT, g, R: Form.function(T), p),
        (lambda T, dT, g, R: Form.function(T**2), p**2),
        (lambda T, dT, g, R: dT.scale(T), None),
    ]:
        res = check_homotopy_identity(tform(B, build))
        assert res.ok
        if lhs is not None:
            assert res.lhs == Form.function(B.const(lhs))
        else:
            assert res.lhs.is_zero() and res.rhs.is_zero()


def brute_window(p, prec, horizon=2000):
    for D in range(prec, horizon):
        if all(i + 1 - valuation(i + 1, p) >= prec for i in range(D, horizon)):
            return D


@pytest.mark.parametrize("p", [2, 3, 5, 7])
@pytest.mark.parametrize("prec", range(1, 9))
def test_safe_window_matches_brute_force(p, prec):
    assert safe_t_window(p, prec) == brute_window(p, prec)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_worked_example(p):
    R = LaurentRing(p, 4, ("x",))
    x = R.gen(0)
    cert = build_strong_homotopy(RingMap(R, R, [x**p]), RingMap(R, R, [x**p + x.times_p(1)]))
    T = cert.phi.target.gen(0)
    xt = cert.phi.target.gen(1)
    assert cert.phi.images[0] == (xt**p + T * xt).reduce(3)
    assert cert.prec == 3
    res = chain_homotopy(cert, Form.dx(R, 0))
    assert res.verified
    assert res.primitive == Form.function(x.times_p(1).reduce(3))
    assert res.lhs == Form.dx(R, 0).scale(R.const(p)).reduce(3)
    one = chain_homotopy(cert, Form.function(R.one()))
    assert one.verified and one.primitive.is_zero() and one.lhs.is_zero()
    assert chain_homotopy(cert, Form.dx(R, 0).scale(x)).verified


def test_equal_maps_give_zero_homotopy():
    R = LaurentRing(3, 3, ("x", "y"), (True, False))
    x, y = R.gens()
    phi = RingMap(R, R, [x**2, y * x + 1])
    cert = build_strong_homotopy(phi, phi)
    assert all(im.degree_in(0) <= 0 for im in cert.phi.images)
    w = Form.dx(R, 0).scale(y) + Form.dx(R, 1).scale(x**-1)
    assert apply_homotopy(cert, w).is_zero()


def test_errors():
    R = LaurentRing(3, 3, ("x",))
    x = R.gen(0)
    with pytest.raises(NotCongruentModP):
        build_strong_homotopy(RingMap(R, R, [x]), RingMap(R, R, [x + 1]))
    R1 = LaurentRing(3, 1, ("x",))
    with pytest.raises(PrecisionExhausted):
        build_strong_homotopy(RingMap.identity(R1), RingMap.identity(R1))
    S = LaurentRing(3, 3, ("y",))
    with pytest.raises(VariableMismatch):
        build_strong_homotopy(RingMap(R, R, [x]), RingMap(R, S, [S.gen(0)]))


def test_certificate_json():
    R = LaurentRing(2, 3, ("x",))
    x = R.gen(0)
    cert = build_strong_homotopy(RingMap(R, R, [x**2]), RingMap(R, R, [x**2 + 2 * x]))
    doc = cert.to_json()
    assert doc["psi1"] == ["1*x^2"] and doc["precision"] == 2 and doc["t_window"] == safe_t_window(2, 2)


@settings(max_examples=150)
@given(st.sampled_from([2, 3, 5]), st.integers(1, 4), st.integers(0, 10**9))
def test_identity_on_random_tforms(p, N, seed):
    rng = rng_for(seed, "tform")
    base = rand_ring(rng, p, N)
    w = rand_tform(rng, base, rng.randint(0, base.nvars + 1))
    assert check_homotopy_identity(w, strict=False).ok


@settings(max_examples=60)
@given(st.sampled_from([2, 3, 5]), st.integers(2, 4), st.integers(0, 10**9))
def test_chain_homotopy_on_random_pairs(p, N, seed):
    rng = rng_for(seed, "pair")
    src, tgt = rand_ring(rng, p, N), rand_ring(rng, p, N)
    psi1, psi2 = rand_congruent_pair(rng, src, tgt)
    cert = build_strong_homotopy(psi1, psi2)
    for deg in range(src.nvars + 1):
        w = rand_form(rng, src, deg, terms=2, poly_degree=2)
        res = chain_homotopy(cert, w, strict=False)
        assert res.verified
        # the primitive is independent of the T-window once it is safe
        assert (exterior_derivative(res.primitive) + apply_homotopy(cert, exterior_derivative(w))).equal_at(
            (pullback(psi2, w) - pullback(psi1, w)), cert.prec
        )


def test_h0_and_hp_of_phi_recover_the_maps():
    R = LaurentRing(5, 3, ("x", "y"), (True, True))
    x, y = R.gens()
    psi1 = RingMap(R, R, [x**2 * y, y**-1])
    psi2 = RingMap(R, R, [x**2 * y + (x * y).times_p(1), y**-1 + R.const(5)])
    cert = build_strong_homotopy(psi1, psi2)
    B = R.with_prec(cert.prec)
    for j in range(2):
        f = TForm.from_form(Form.function(cert.phi.images[j]), B)
        assert eval_t(f, 0).coefficient(()).equal_at(psi1.images[j], cert.prec)
        assert eval_t(f, 5).coefficient(()).equal_at(psi2.images[j], cert.prec)
