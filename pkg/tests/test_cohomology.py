import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mwdrw.cohomology import (
    GradedComplex,
    assembled_cohomology,
    boundary_matrix,
    cohomology,
    exactness_witness,
    format_block_table,
    homology,
    lift_independence_on_cohomology,
)
from mwdrw.errors import NotClosed, NotCongruentModP, WindowOverflow
from mwdrw.forms import Form, RingMap, exterior_derivative
from mwdrw.poly import LaurentRing
from mwdrw.randgen import rand_form, rng_for
from mwdrw.scalars import valuation


def vp(m, p):
    v = 0
    while m % p == 0:
        m //= p
        v += 1
    return v


def test_boundary_matrix_examples():
    A1 = GradedComplex.standard("A1", 5, 2, window=10)
    for m in range(1, 11):
        assert boundary_matrix(A1, 0, (m,)) == [[m % 25]]
    Gm = GradedComplex.standard("Gm", 3, 2, window=4)
    assert boundary_matrix(Gm, 0, (0,)) == [[0]]
    A2 = GradedComplex.standard("A2", 3, 2, window=3)
    basis = A2.basis(1, (1, 1))
    M = boundary_matrix(A2, 0, (1, 1))
    col = dict(zip(basis, (row[0] for row in M)))
    assert col == {((0,), (0, 1)): 1, ((1,), (1, 0)): 1}


def test_boundary_matrix_outside_window():
    cx = GradedComplex.standard("A1", 2, 3, window=4)
    with pytest.raises(WindowOverflow):
        boundary_matrix(cx, 0, (5,))


def test_boundary_matches_exterior_derivative():
    rng = rng_for(0, "bd")
    cx = GradedComplex(LaurentRing(3, 3, ("x", "y", "z"), (True, False, True)), 2)
    for m in cx.multidegrees()[::7]:
        for i in range(3):
            M = boundary_matrix(cx, i, m)
            n = len(cx.basis(i, m))
            if not n:
                continue
            v = [rng.randrange(27) for _ in range(n)]
            w = cx.form(i, m, v)
            got = [sum(a * b for a, b in zip(row, v)) % 27 for row in M]
            assert got == cx.vector(exterior_derivative(w), m)


def test_d_squared_zero_on_blocks():
    cx = GradedComplex(LaurentRing(2, 4, ("x", "y", "z"), (False, True, True)), 2)
    for m in cx.multidegrees():
        for i in range(2):
            A, B = boundary_matrix(cx, i, m), boundary_matrix(cx, i + 1, m)
            if A and A[0] and B and B[0]:
                prod = [[sum(B[r][k] * A[k][c] for k in range(len(A))) % 16 for c in range(len(A[0]))] for r in range(len(B))]
                assert all(x == 0 for row in prod for x in row)


def test_a1_orders_example():
    rep = cohomology(GradedComplex.standard("A1", 2, 3, window=8))
    assert [rep.order(1, (m,)) for m in range(1, 9)] == [1, 2, 1, 4, 1, 2, 1, 8]
    assert rep.block(0, (0,)).exponents == [3]
    assert str(rep.block(0, (0,)).generators[0]) == "(1)"
    assert str(rep.block(1, (8,)).generators[0]) == "(1*T^7)*dT"


@pytest.mark.parametrize("p,N", [(2, 3), (3, 3), (2, 2), (3, 2), (5, 2)])
def test_a1_closed_form(p, N):
    rep = cohomology(GradedComplex.standard("A1", p, N))
    for m in range(1, p**3 + 1):
        e = min(vp(m, p), N)
        b = rep.block(1, (m,))
        assert b.exponents == ([e] if e else [])


def test_h0_torsion_at_finite_level():
    # 4 T^2 is a cocycle over Z/8 (d gives 8 T dT); it is not a constant
    rep = cohomology(GradedComplex.standard("A1", 2, 3, window=8))
    assert rep.block(0, (2,)).exponents == [1]
    assert str(rep.block(0, (2,)).generators[0]) == "(4*T^2)"
    assert rep.block(0, (1,)).exponents == []


@pytest.mark.parametrize("p", [2, 3])
def test_gm(p):
    rep = cohomology(GradedComplex.standard("Gm", p, 3, window=8))
    free = rep.block(1, (0,))
    assert free.exponents == [3]
    assert str(free.generators[0]) == "(1*x^-1)*dx"
    for m in range(-8, 9):
        if m:
            e = min(vp(abs(m), p), 3)
            assert rep.block(1, (m,)).exponents == ([e] if e else [])
    assert rep.block(0, (0,)).exponents == [3]


@pytest.mark.parametrize(
    "geometry,p,N,window",
    [("A1", 2, 3, 8), ("Gm", 3, 2, 5), ("A2", 2, 2, 3), ("Gm2", 3, 2, 2), ("A2", 3, 3, 2)],
)
def test_blockwise_equals_assembled(geometry, p, N, window):
    cx = GradedComplex.standard(geometry, p, N, window=window)
    rep = cohomology(cx)
    whole = assembled_cohomology(cx)
    for i in range(cx.ring.nvars + 1):
        assert rep.exponent_multiset(i) == whole[i]


def test_mixed_ring_assembled():
    cx = GradedComplex(LaurentRing(2, 2, ("x", "y"), (True, False)), [(-2, 2), (0, 3)])
    rep = cohomology(cx)
    whole = assembled_cohomology(cx)
    assert all(rep.exponent_multiset(i) == whole[i] for i in range(3))


def test_gm2_kunneth_block():
    # dx/x ^ dy/y generates a free summand in block (0, 0)
    rep = cohomology(GradedComplex.standard("Gm2", 2, 2, window=2))
    assert rep.block(2, (0, 0)).exponents == [2]
    assert rep.block(1, (0, 0)).exponents == [2, 2]


def test_witness_examples():
    for p in (2, 3, 5):
        cx = GradedComplex.standard("A1", p, 3)
        T = cx.ring.gen(0)
        w = Form.dx(cx.ring, 0).scale(T ** (p - 1))
        res = exactness_witness(cx, w)
        assert not res.exact and res.order == p
        assert res.primitive == Form.function(T**p)
        assert exterior_derivative(res.primitive) == w.scale(p)
    cx = GradedComplex.standard("A1", 3, 2)
    T = cx.ring.gen(0)
    res = exactness_witness(cx, Form.dx(cx.ring, 0).scale(cx.ring.const(2) * T))
    assert res.exact and res.primitive == Form.function(T**2)
    Gm = GradedComplex.standard("Gm", 3, 3, window=4)
    x = Gm.ring.gen(0)
    res = exactness_witness(Gm, Form.dx(Gm.ring, 0).scale(x**-1))
    assert res.order_exponent == 3
    assert res.to_json()["status"] == "not_exact"


def test_witness_errors():
    cx = GradedComplex.standard("A2", 2, 2, window=3)
    x, y = cx.ring.gens()
    with pytest.raises(NotClosed):
        exactness_witness(cx, Form.dx(cx.ring, 0).scale(y))
    with pytest.raises(WindowOverflow):
        exactness_witness(cx, exterior_derivative(Form.function(x**5)))


def test_witness_on_functions():
    cx = GradedComplex.standard("A1", 2, 3, window=8)
    res = exactness_witness(cx, Form.function(cx.ring.const(4) * cx.ring.gen(0) ** 2))
    assert res.order_exponent == 1


@settings(max_examples=40)
@given(st.sampled_from([2, 3]), st.integers(1, 3), st.integers(0, 10**6))
def test_witness_on_boundaries_and_multiples(p, N, seed):
    rng = rng_for(seed, "wit")
    ring = LaurentRing(p, N, ("x", "y"), (rng.random() < 0.5, rng.random() < 0.5))
    cx = GradedComplex(ring, 4)
    eta = rand_form(rng, ring, rng.randint(0, 1), terms=3, poly_degree=3)
    w = exterior_derivative(eta)
    res = exactness_witness(cx, w)
    assert res.exact
    assert exterior_derivative(res.primitive) == w
    # p^k times a generator of order p^f has order p^(f-k)
    rep = cohomology(cx)
    for (i, m), b in list(rep.blocks.items())[:4]:
        if i == 0:
            continue
        for f, g in zip(b.exponents, b.generators):
            k = rng.randint(0, f)
            res = exactness_witness(cx, g.scale(p**k))
            assert res.order_exponent == f - k
            assert exterior_derivative(res.primitive).equal_at(g.scale(p**f), N)


def test_generators_are_cycles_and_normalized():
    cx = GradedComplex.standard("Gm2", 3, 2, window=3)
    for (i, m), b in cohomology(cx).blocks.items():
        for g in b.generators:
            assert exterior_derivative(g).is_zero()
            lead = cx.vector(g, m)
            first = next(c for c in lead if c)
            assert first == 3 ** valuation(first, 3, 2)


def test_homology_length_identity_trivial():
    assert homology([[]], [], 1, 2, 3) == [(3, [1])]
    assert homology([[2]], [], 1, 2, 3) == [(1, [1])]
    assert homology([[1]], [], 1, 2, 3) == []


def test_lift_independence_a1():
    for p in (2, 3):
        src = GradedComplex.standard("A1", p, 3, window=p**2)
        tgt = GradedComplex.standard("A1", p, 3, window=3 * p**2)
        T = src.ring.gen(0)
        phi1 = RingMap(src.ring, src.ring, [T**2])
        phi2 = RingMap(src.ring, src.ring, [T**2 + (T**3).times_p(1)])
        rep = lift_independence_on_cohomology(phi1, phi2, src, tgt)
        assert rep.ok and rep.prec == 2
        h1 = [c for c in rep.checks if c.degree == 1]
        assert len(h1) == sum(1 for m in range(1, p**2 + 1) if m % p == 0)
        assert any(not c.difference.is_zero() for c in h1)


def test_lift_independence_equal_maps():
    src = GradedComplex.standard("A1", 2, 3, window=4)
    T = src.ring.gen(0)
    phi = RingMap(src.ring, src.ring, [T**2 + T])
    rep = lift_independence_on_cohomology(phi, phi, src, GradedComplex.standard("A1", 2, 3, window=8))
    assert rep.ok and all(c.difference.is_zero() and c.primitive.is_zero() for c in rep.checks)


def test_lift_independence_gm():
    for p in (2, 3):
        cx = GradedComplex.standard("Gm", p, 3, window=p**2)
        x = cx.ring.gen(0)
        ident = RingMap.identity(cx.ring)
        shifted = RingMap(cx.ring, cx.ring, [x + cx.ring.const(p)])
        tgt = GradedComplex(cx.ring, [(-40, p**2)])
        rep = lift_independence_on_cohomology(ident, shifted, cx, tgt)
        assert rep.ok
        assert any(c.multidegree == (0,) and c.degree == 1 for c in rep.checks)


def test_lift_independence_errors():
    src = GradedComplex.standard("A1", 2, 3, window=4)
    T = src.ring.gen(0)
    phi1 = RingMap(src.ring, src.ring, [T**2])
    with pytest.raises(WindowOverflow):
        lift_independence_on_cohomology(phi1, RingMap(src.ring, src.ring, [T**2 + (T**3).times_p(1)]), src, src)
    with pytest.raises(NotCongruentModP):
        lift_independence_on_cohomology(phi1, RingMap(src.ring, src.ring, [T**2 + T]), src, src)


def test_table_rendering():
    text = format_block_table(cohomology(GradedComplex.standard("A1", 2, 2, window=4)))
    assert text.splitlines()[0] == "p=2 N=2 variables=T"
    assert "H^1 [4]: 2^2  [(1*T^3)*dT]" in text
