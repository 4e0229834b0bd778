"""Compare the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Workloads: sparse products of random univariate and bivariate polynomials,
a Witt-vector multiplication (dominated by p-th powers), and Smith normal
forms of random matrices.  Both kernels are called through the same
wrappers, so packing and unpacking costs are included.
"""

import argparse
import random
import time

from mwdrw import _backend, _kernels_py
from mwdrw.poly import LaurentRing, LPoly
from mwdrw.witt import WittVec, witt_mul


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def rand_terms(rng, nvars, nterms, deg, mod):
    return {tuple(rng.randint(0, deg) for _ in range(nvars)): rng.randrange(1, mod) for _ in range(nterms)}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not _backend.HAVE_COMPILED:
        print("compiled extension not built; only the Python kernel is available")
        return
    compiled = _backend._compiled
    rng = random.Random(0)
    mod = 5**6
    rows = []

    for nvars, nterms, deg in [(1, 200, 400), (1, 2000, 4000), (2, 300, 60), (3, 200, 20)]:
        a = rand_terms(rng, nvars, nterms, deg, mod)
        b = rand_terms(rng, nvars, nterms, deg, mod)
        assert _backend.mul_terms(a, b, mod, impl=compiled) == _backend.mul_terms(a, b, mod, impl=_kernels_py)
        tc = best_of(lambda: _backend.mul_terms(a, b, mod, impl=compiled), args.repeat)
        tp = best_of(lambda: _backend.mul_terms(a, b, mod, impl=_kernels_py), args.repeat)
        rows.append((f"mul {nvars} vars, {len(a)}x{len(b)} terms", tc, tp))

    R = LaurentRing(5, 4, ("x",))
    u = WittVec(LPoly(R, rand_terms(rng, 1, 4, 25, R.modulus)) for _ in range(4))
    v = WittVec(LPoly(R, rand_terms(rng, 1, 4, 25, R.modulus)) for _ in range(4))

    def witt(impl):
        saved = _backend._compiled
        _backend._compiled = impl
        try:
            witt_mul(u, v)
        finally:
            _backend._compiled = saved

    tc = best_of(lambda: witt(compiled), args.repeat)
    tp = best_of(lambda: witt(None), args.repeat)
    rows.append(("witt_mul p=5 n=4 deg 25", tc, tp))

    for size in (8, 32, 64):
        A = [[rng.randrange(3**4) * 3 ** rng.randint(0, 3) % 3**4 for _ in range(size)] for _ in range(size)]
        assert _backend.snf(A, 3, 4, impl=compiled) == _backend.snf(A, 3, 4, impl=_kernels_py)
        tc = best_of(lambda: _backend.snf(A, 3, 4, impl=compiled), args.repeat)
        tp = best_of(lambda: _backend.snf(A, 3, 4, impl=_kernels_py), args.repeat)
        rows.append((f"snf {size}x{size} over Z/81", tc, tp))

    width = max(len(r[0]) for r in rows)
    print(f"{'workload':<{width}}  {'cython s':>10}  {'python s':>10}  {'speedup':>8}")
    for name, tc, tp in rows:
        print(f"{name:<{width}}  {tc:>10.4f}  {tp:>10.4f}  {tp / tc:>7.1f}x")


if __name__ == "__main__":
    main()
