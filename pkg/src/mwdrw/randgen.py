"""Seeded generators for randomized verification inputs.

Coefficients are uniform in [0, p^N).  Supports have at most ``terms``
monomials (default 6) of total degree at most ``degree`` (default p^2);
invertible variables also take exponents down to ``-degree``.  Every
generator takes a ``random.Random`` so a seed fixes the whole input.
"""

from __future__ import annotations

import random

from .forms import Form, RingMap, TForm, basis_indices
from .poly import LaurentRing, LPoly
from .witt import WittVec


def rng_for(seed, *labels) -> random.Random:
    """Independent stream per (seed, label) so suites do not share state."""
    return random.Random("|".join(str(x) for x in (seed,) + labels))


def rand_exponent(rng, ring: LaurentRing, degree: int):
    budget = rng.randint(0, degree)
    exp = [0] * ring.nvars
    for _ in range(budget):
        exp[rng.randrange(ring.nvars)] += 1
    for j, inv in enumerate(ring.invertible):
        if inv and rng.random() < 0.5:
            exp[j] = -rng.randint(0, degree)
    return tuple(exp)


def rand_poly(rng, ring: LaurentRing, *, terms: int = 6, degree: int | None = None, nonzero=False) -> LPoly:
    degree = ring.p**2 if degree is None else degree
    mod = ring.modulus
    while True:
        k = rng.randint(1 if nonzero else 0, terms)
        f = LPoly(ring, {rand_exponent(rng, ring, degree): rng.randrange(mod) for _ in range(k)})
        if f or not nonzero:
            return f


def rand_unit_scalar(rng, ring: LaurentRing) -> int:
    while True:
        c = rng.randrange(1, ring.modulus)
        if c % ring.p:
            return c


def rand_unit(rng, ring: LaurentRing, *, terms=2, degree=2) -> LPoly:
    """c x^e (1 + p h) with e supported on invertible variables."""
    exp = tuple(rng.randint(-degree, degree) if inv else 0 for inv in ring.invertible)
    u = ring.monomial(exp, rand_unit_scalar(rng, ring))
    h = rand_poly(rng, ring, terms=terms, degree=degree)
    return u + u * h.times_p(1).reduce(ring.prec) if ring.prec > 1 else u


def rand_form(rng, ring: LaurentRing, degree: int, *, terms=3, poly_degree=None) -> Form:
    idx = basis_indices(ring.nvars, degree)
    if not idx:
        return Form(ring, degree)
    chosen = rng.sample(idx, rng.randint(1, len(idx)))
    return Form(ring, degree, {S: rand_poly(rng, ring, terms=terms, degree=poly_degree) for S in chosen})


def rand_tform(rng, base: LaurentRing, degree: int, *, t_degree=3, terms=3, poly_degree=None) -> TForm:
    """A random T-form: coefficients of T^i for i <= t_degree."""
    prime, dprime = {}, {}
    for i in range(t_degree + 1):
        if degree <= base.nvars and rng.random() < 0.8:
            prime[i] = rand_form(rng, base, degree, terms=terms, poly_degree=poly_degree)
        if degree >= 1 and rng.random() < 0.8:
            dprime[i] = rand_form(rng, base, degree - 1, terms=terms, poly_degree=poly_degree)
    return TForm(base, degree, prime, dprime)


def rand_witt(rng, ring: LaurentRing, n: int, *, terms=3, degree=None) -> WittVec:
    return WittVec(rand_poly(rng, ring, terms=terms, degree=degree) for _ in range(n))


def rand_image(rng, target: LaurentRing, invertible: bool, *, terms=3, degree=2) -> LPoly:
    if invertible:
        return rand_unit(rng, target, terms=terms, degree=degree)
    return rand_poly(rng, target, terms=terms, degree=degree)


def rand_congruent_pair(rng, source: LaurentRing, target: LaurentRing, *, terms=3, degree=2):
    """psi1 random, psi2 = psi1 + p g generator-wise (units stay units)."""
    img1, img2 = [], []
    for inv in source.invertible:
        a = rand_image(rng, target, inv, terms=terms, degree=degree)
        g = rand_poly(rng, target, terms=terms, degree=degree)
        img1.append(a)
        img2.append(a + g.times_p(1).reduce(target.prec))
    return RingMap(source, target, img1), RingMap(source, target, img2)


def rand_frobenius_lift(rng, ring: LaurentRing, *, terms=3, degree=None) -> RingMap:
    """x_j -> x_j^p + p g_j with deg g_j <= degree (default p)."""
    degree = ring.p if degree is None else degree
    images = []
    for x in ring.gens():
        g = rand_poly(rng, ring, terms=terms, degree=degree)
        images.append(x**ring.p + g.times_p(1).reduce(ring.prec))
    return RingMap(ring, ring, images)


def rand_matrix(rng, rows: int, cols: int, p: int, N: int, *, sparsity=0.0):
    """Entries uniform mod p^N; with probability ``sparsity`` an entry is 0,
    and a random p-power factor is applied to vary valuations."""
    mod = p**N
    out = []
    for _ in range(rows):
        row = []
        for _ in range(cols):
            if rng.random() < sparsity:
                row.append(0)
            else:
                row.append(rng.randrange(mod) * p ** rng.randint(0, N) % mod)
        out.append(row)
    return out


def rand_ring(rng, p: int, N: int, max_vars=3, *, names=("x", "y", "z")) -> LaurentRing:
    k = rng.randint(1, max_vars)
    return LaurentRing(p, N, names[:k], tuple(rng.random() < 0.5 for _ in range(k)))


__all__ = [
    "rng_for",
    "rand_poly",
    "rand_unit",
    "rand_form",
    "rand_tform",
    "rand_witt",
    "rand_congruent_pair",
    "rand_frobenius_lift",
    "rand_matrix",
    "rand_ring",
]
