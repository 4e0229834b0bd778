"""Universal Witt polynomials over Q built with sympy (independent of mwdrw)."""

from functools import lru_cache

import sympy as sp


def ghost_poly(xs, p, m):
    return sum(p**i * xs[i] ** (p ** (m - i)) for i in range(m + 1))


@lru_cache(maxsize=None)
def universal(p, n, op):
    """Polynomials (S_0..S_{n-1}) or (P_0..) in X_i, Y_i with integer coefficients."""
    X = sp.symbols(f"X0:{n}")
    Y = sp.symbols(f"Y0:{n}")
    out = []
    for m in range(n):
        gx, gy = ghost_poly(X, p, m), ghost_poly(Y, p, m)
        target = gx + gy if op == "add" else gx * gy
        rest = sum(p**i * out[i] ** (p ** (m - i)) for i in range(m))
        out.append(sp.expand((target - rest) / p**m))
    return X, Y, tuple(out)


def witt_op_integers(p, n, op, xs, ys, mod):
    X, Y, polys = universal(p, n, op)
    subs = dict(zip(X, xs)) | dict(zip(Y, ys))
    vals = []
    for poly in polys:
        v = sp.Integer(poly.subs(subs))
        vals.append(int(v) % mod)
    return vals


def poly_terms(expr, gens, mod):
    """sympy expression -> {exponent tuple: residue}."""
    P = sp.Poly(expr, *gens)
    out = {}
    for mon, c in P.terms():
        r = int(c) % mod
        if r:
            out[tuple(mon)] = r
    return out
