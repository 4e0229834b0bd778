"""Matrices over Z/p^N: Smith normal form, linear solves and kernels.

Matrices are plain nested lists of Python ints.  The elimination itself runs
in the compiled kernel when available (see ``_backend``).
"""

from __future__ import annotations

from dataclasses import dataclass

from . import _backend
from .scalars import valuation


def matmul(A, B, mod):
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    return [[sum(A[i][k] * B[k][j] for k in range(inner)) % mod for j in range(cols)] for i in range(len(A))]


def matvec(A, v, mod):
    return [sum(a * x for a, x in zip(row, v)) % mod for row in A]


@dataclass
class SmithForm:
    """``U @ A @ V == D`` with D diagonal, diagonal entries p^e with e ascending.

    ``exponents`` lists e for the first ``rank`` diagonal entries; the rest
    of the diagonal is zero.
    """

    p: int
    N: int
    D: list
    U: list
    Uinv: list
    V: list
    Vinv: list
    rank: int

    @property
    def modulus(self):
        return self.p**self.N

    @property
    def exponents(self):
        return [valuation(self.D[i][i], self.p, self.N) for i in range(self.rank)]

    @property
    def diagonal(self):
        k = min(len(self.D), len(self.D[0]) if self.D else 0)
        return [self.D[i][i] for i in range(k)]


def smith_normal_form(A, p: int, N: int, *, impl=None) -> SmithForm:
    """Smith normal form over Z/p^N with minimal-valuation pivoting.

    Ties are broken by lowest row index, then lowest column index, so the
    result is deterministic.  Works for empty matrices (shape m x 0 or 0 x n
    given as ``[[]] * m`` or ``[]``).
    """
    m = len(A)
    n = len(A[0]) if m else 0
    if m == 0 or n == 0:
        eye_m = [[int(i == j) for j in range(m)] for i in range(m)]
        eye_n = [[int(i == j) for j in range(n)] for i in range(n)]
        return SmithForm(p, N, [list(r) for r in A], eye_m, [r[:] for r in eye_m], eye_n, [r[:] for r in eye_n], 0)
    D, U, Ui, V, Vi, rank = _backend.snf(A, p, N, impl=impl)
    return SmithForm(p, N, D, U, Ui, V, Vi, rank)


def solve_min_multiple(A, b, p: int, N: int, snf: SmithForm | None = None):
    """Least e with p^e b in the column span of A, and x with A x = p^e b.

    ``A`` is m x n (possibly n = 0), ``b`` has length m.
    """
    mod = p**N
    m = len(b)
    n = len(A[0]) if A and A[0] is not None else 0
    if snf is None:
        snf = smith_normal_form(A if n else [[] for _ in range(m)], p, N)
    c = matvec(snf.U, b, mod) if m else []
    e = 0
    exps = snf.exponents
    for k, ck in enumerate(c):
        vk = valuation(ck, p, N)
        if k < snf.rank:
            need = max(0, exps[k] - vk)
        else:
            need = N - vk
        e = max(e, need)
    pe = p**e
    y = [0] * n
    for k in range(snf.rank):
        ck = c[k] * pe % mod
        y[k] = (ck // p ** exps[k]) % mod
    x = matvec(snf.V, y, mod) if n else []
    return e, x


def kernel_generators(A, p: int, N: int):
    """Columns generating {x : A x = 0} over Z/p^N."""
    mod = p**N
    m = len(A)
    n = len(A[0]) if m else 0
    if n == 0:
        return []
    if m == 0:
        return [[int(i == j) for i in range(n)] for j in range(n)]
    snf = smith_normal_form(A, p, N)
    exps = snf.exponents
    gens = []
    for k in range(n):
        if k < snf.rank:
            if exps[k] == 0:
                continue
            scale = p ** (N - exps[k])
        else:
            scale = 1
        gens.append([snf.V[i][k] * scale % mod for i in range(n)])
    return gens


def determinant_mod_p(A, p):
    """Determinant of a square matrix modulo p (Gaussian elimination over F_p)."""
    M = [[x % p for x in row] for row in A]
    n = len(M)
    det = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det = det * M[c][c] % p
        inv = pow(M[c][c], -1, p)
        for r in range(c + 1, n):
            f = M[r][c] * inv % p
            if f:
                M[r] = [(a - f * b) % p for a, b in zip(M[r], M[c])]
    return det % p
