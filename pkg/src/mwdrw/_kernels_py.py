"""Pure-Python implementations of the hot kernels.

These mirror ``_kernels.pyx`` exactly (same signatures, same pivoting) and
are used when the compiled extension is unavailable or the modulus is too
large for 64-bit accumulation.
"""


def mul_packed(ka, ca, kb, cb, mod, span):
    """Multiply two Kronecker-packed sparse polynomials modulo ``mod``.

    ``ka``/``kb`` are packed exponent keys, ``ca``/``cb`` the coefficients.
    Returns sorted keys and coefficients of the nonzero product terms.
    """
    acc = {}
    kb = [int(k) for k in kb]
    cb = [int(c) for c in cb]
    for k1, c1 in zip(ka, ca):
        k1 = int(k1)
        c1 = int(c1)
        for k2, c2 in zip(kb, cb):
            k = k1 + k2
            acc[k] = (acc.get(k, 0) + c1 * c2) % mod
    keys = sorted(k for k, c in acc.items() if c)
    return keys, [acc[k] for k in keys]


def _valuation(a, p, N):
    if a == 0:
        return N
    v = 0
    while a % p == 0:
        a //= p
        v += 1
    return v


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def snf(A, p, N):
    """Smith normal form of ``A`` over Z/p^N.

    Returns ``(D, U, Uinv, V, Vinv, rank)`` with ``U A V = D``.  The pivot is
    the entry of least p-adic valuation in the remaining submatrix, ties
    broken by lowest row index and then lowest column index; each pivot is
    normalised to an exact power of p.
    """
    mod = p**N
    m = len(A)
    n = len(A[0]) if m else 0
    A = [[int(x) % mod for x in row] for row in A]
    U = _identity(m)
    Uinv = _identity(m)
    V = _identity(n)
    Vinv = _identity(n)
    rank = 0
    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                if row[j]:
                    v = _valuation(row[j], p, N)
                    if best is None or v < best[0]:
                        best = (v, i, j)
                        if v == 0:
                            break
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        v, i0, j0 = best
        if i0 != t:
            A[t], A[i0] = A[i0], A[t]
            U[t], U[i0] = U[i0], U[t]
            for row in Uinv:
                row[t], row[i0] = row[i0], row[t]
        if j0 != t:
            for row in A:
                row[t], row[j0] = row[j0], row[t]
            for row in V:
                row[t], row[j0] = row[j0], row[t]
            Vinv[t], Vinv[j0] = Vinv[j0], Vinv[t]
        pv = p**v
        unit = A[t][t] // pv
        s = pow(unit, -1, mod)
        if s != 1:
            A[t] = [x * s % mod for x in A[t]]
            U[t] = [x * s % mod for x in U[t]]
            for row in Uinv:
                row[t] = row[t] * unit % mod
        for i in range(t + 1, m):
            f = A[i][t] // pv
            if f:
                Ai, At = A[i], A[t]
                A[i] = [(x - f * y) % mod for x, y in zip(Ai, At)]
                U[i] = [(x - f * y) % mod for x, y in zip(U[i], U[t])]
                for row in Uinv:
                    row[t] = (row[t] + f * row[i]) % mod
        for j in range(t + 1, n):
            f = A[t][j] // pv
            if f:
                for row in A:
                    row[j] = (row[j] - f * row[t]) % mod
                for row in V:
                    row[j] = (row[j] - f * row[t]) % mod
                Vinv[t] = [(x + f * y) % mod for x, y in zip(Vinv[t], Vinv[j])]
        rank += 1
    return A, U, Uinv, V, Vinv, rank
