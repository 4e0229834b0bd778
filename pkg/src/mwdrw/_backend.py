"""Kernel selection: compiled extension when importable, pure Python otherwise.

Set ``MWDRW_PURE_PYTHON=1`` to force the fallback (used by the benchmark and
the backend-agreement tests).
"""

import os

import numpy as np

from . import _kernels_py

_INT64_SAFE_MOD = 1 << 31
_SMALL_PRODUCT = 48

try:
    if os.environ.get("MWDRW_PURE_PYTHON"):
        raise ImportError("forced pure-Python backend")
    from . import _kernels as _compiled
except ImportError:
    _compiled = None

HAVE_COMPILED = _compiled is not None
BACKEND = "cython" if HAVE_COMPILED else "python"


def _mul_small(a, b, mod):
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = (out.get(e, 0) + ca * cb) % mod
    return {e: c for e, c in out.items() if c}


def mul_terms(a, b, mod, *, impl=None):
    """Product of two term dicts ``{exponent tuple: residue}`` modulo ``mod``.

    ``impl`` pins a kernel module (used by tests and the benchmark); by
    default tiny products stay in Python and the rest go to the compiled
    kernel when the modulus allows 64-bit accumulation.
    """
    if not a or not b:
        return {}
    na, nb = len(a), len(b)
    if impl is None and na * nb <= _SMALL_PRODUCT:
        return _mul_small(a, b, mod)
    kernel = _compiled if impl is None else impl
    if kernel is None or (kernel is not _kernels_py and mod >= _INT64_SAFE_MOD):
        kernel = _kernels_py
    nvars = len(next(iter(a)))
    if nvars == 0:
        return _mul_small(a, b, mod)
    ea = np.array(list(a), dtype=np.int64).reshape(na, nvars)
    eb = np.array(list(b), dtype=np.int64).reshape(nb, nvars)
    lo_a = ea.min(axis=0)
    lo_b = eb.min(axis=0)
    span = ea.max(axis=0) - lo_a + eb.max(axis=0) - lo_b + 1
    total = 1
    for s in span.tolist():
        total *= s
    if total >= 1 << 62:
        return _mul_small(a, b, mod)
    strides = np.ones(nvars, dtype=np.int64)
    for j in range(nvars - 2, -1, -1):
        strides[j] = strides[j + 1] * span[j + 1]
    ka = np.ascontiguousarray((ea - lo_a) @ strides)
    kb = np.ascontiguousarray((eb - lo_b) @ strides)
    if kernel is not _kernels_py:
        ca = np.fromiter(a.values(), dtype=np.int64, count=na)
        cb = np.fromiter(b.values(), dtype=np.int64, count=nb)
        keys, vals = kernel.mul_packed(ka, ca, kb, cb, mod, int(total))
        keys = np.asarray(keys, dtype=np.int64)
        vals = np.asarray(vals).tolist()
    else:
        keys, vals = _kernels_py.mul_packed(ka.tolist(), list(a.values()), kb.tolist(), list(b.values()), mod, total)
        keys = np.asarray(keys, dtype=np.int64)
    if not len(keys):
        return {}
    lo = lo_a + lo_b
    exps = (keys[:, None] // strides) % span + lo
    return dict(zip(map(tuple, exps.tolist()), vals))


def snf(A, p, N, *, impl=None):
    """Smith form over Z/p^N as nested lists: ``(D, U, Uinv, V, Vinv, rank)``."""
    kernel = impl if impl is not None else _compiled
    m = len(A)
    n = len(A[0]) if m else 0
    if kernel is None or kernel is _kernels_py or m == 0 or n == 0 or p**N >= _INT64_SAFE_MOD:
        return _kernels_py.snf(A, p, N)
    D, U, Ui, V, Vi, rank = kernel.snf(A, p, N)
    return D.tolist(), U.tolist(), Ui.tolist(), V.tolist(), Vi.tolist(), int(rank)
