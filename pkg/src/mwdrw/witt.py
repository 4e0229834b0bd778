"""p-typical Witt vectors of finite length over Laurent-polynomial rings.

Ring operations go through the ghost map: components are lifted, ghost
coordinates combined componentwise, and the result inverted.  Ghost
coordinate m of a vector whose slots are known modulo p^N is itself known
modulo p^(N+m), which is exactly the precision that inversion consumes, so
no digits are lost in a round trip.

Each slot carries its own precision (that of its :class:`LPoly`); the tuple
of slot precisions is the *ledger* and is non-increasing along the vector.
"""

from __future__ import annotations

from .errors import LengthUnderflow, PrecisionExhausted, VariableMismatch
from .poly import LaurentRing, LPoly


def frobenius_power(f: LPoly, k: int) -> LPoly:
    """``f ** (p ** k)`` by repeated p-th powers."""
    for _ in range(k):
        f = f ** f.p
    return f


class GhostVec:
    """Ghost coordinates ``(g_0, ..., g_{n-1})``; slot m has its own precision."""

    __slots__ = ("comps",)

    def __init__(self, comps):
        comps = tuple(comps)
        if not comps:
            raise LengthUnderflow("ghost vectors have length >= 1")
        for c in comps[1:]:
            if not c.ring.same_variables(comps[0].ring):
                raise VariableMismatch("ghost components over different rings")
        self.comps = comps

    @property
    def n(self):
        return len(self.comps)

    @property
    def ledger(self):
        return tuple(c.prec for c in self.comps)

    def __getitem__(self, m):
        return self.comps[m]

    def __add__(self, other):
        return GhostVec(a + b for a, b in zip(self.comps, other.comps))

    def __mul__(self, other):
        return GhostVec(a * b for a, b in zip(self.comps, other.comps))

    def __neg__(self):
        return GhostVec(-a for a in self.comps)

    def __eq__(self, other):
        return isinstance(other, GhostVec) and self.comps == other.comps

    def __repr__(self):
        return "GhostVec(" + ", ".join(str(c) for c in self.comps) + f"; ledger={self.ledger})"


class WittVec:
    """A Witt vector ``(x_0, ..., x_{n-1})`` with a per-slot precision ledger."""

    __slots__ = ("comps",)

    def __init__(self, comps):
        comps = tuple(comps)
        if not comps:
            raise LengthUnderflow("Witt vectors have length >= 1")
        ring = comps[0].ring
        for c in comps[1:]:
            if not c.ring.same_variables(ring):
                raise VariableMismatch("Witt components over different rings")
        ledger = [c.prec for c in comps]
        if any(b > a for a, b in zip(ledger, ledger[1:])):
            raise ValueError(f"precision ledger {ledger} must be non-increasing")
        self.comps = comps

    # construction helpers

    @classmethod
    def teichmuller(cls, a: LPoly, n: int) -> WittVec:
        return cls((a,) + (a.ring.zero(),) * (n - 1))

    @classmethod
    def zero(cls, ring: LaurentRing, n: int) -> WittVec:
        return cls((ring.zero(),) * n)

    @classmethod
    def one(cls, ring: LaurentRing, n: int) -> WittVec:
        return cls.teichmuller(ring.one(), n)

    @classmethod
    def from_integer(cls, k: int, ring: LaurentRing, n: int) -> WittVec:
        """The image of the integer ``k`` (ghost vector ``(k, ..., k)``)."""
        ghosts = GhostVec(ring.with_prec(ring.prec + m).const(k) for m in range(n))
        return ghost_invert(ghosts)

    # properties

    @property
    def n(self) -> int:
        return len(self.comps)

    @property
    def p(self) -> int:
        return self.comps[0].p

    @property
    def ring(self) -> LaurentRing:
        return self.comps[0].ring

    @property
    def ledger(self):
        return tuple(c.prec for c in self.comps)

    def __getitem__(self, i):
        return self.comps[i]

    def __iter__(self):
        return iter(self.comps)

    def uniform(self, prec: int) -> WittVec:
        """All slots reduced to one precision (must not exceed the ledger)."""
        return WittVec(c.reduce(prec) for c in self.comps)

    def map(self, fn) -> WittVec:
        """Apply a ring map componentwise: this is W(phi)."""
        return WittVec(fn(c) for c in self.comps)

    def equal_at_ledger(self, other: WittVec) -> bool:
        if self.n != other.n:
            return False
        return all(
            a.equal_at(b, min(a.prec, b.prec)) for a, b in zip(self.comps, other.comps)
        )

    def __add__(self, other):
        return witt_add(self, other)

    def __mul__(self, other):
        return witt_mul(self, other)

    def __neg__(self):
        return witt_neg(self)

    def __sub__(self, other):
        return witt_add(self, witt_neg(other))

    def __eq__(self, other):
        return isinstance(other, WittVec) and self.comps == other.comps

    def __hash__(self):
        return hash(self.comps)

    def __repr__(self):
        return "WittVec(" + ", ".join(str(c) for c in self.comps) + f"; ledger={self.ledger})"

    def to_json(self):
        return {"components": [str(c) for c in self.comps], "ledger": list(self.ledger)}


def ghost(w: WittVec) -> GhostVec:
    """Ghost coordinates g_m = sum_{i<=m} p^i x_i^(p^(m-i)).

    With slot precisions k_i, g_m is determined modulo p^(min_{i<=m} k_i + m).
    """
    out = []
    low = w.comps[0].prec
    for m in range(w.n):
        low = min(low, w.comps[m].prec)
        target = low + m
        g = None
        for i in range(m + 1):
            term = frobenius_power(w.comps[i].at_prec(target - i), m - i).times_p(i)
            g = term if g is None else g + term
        out.append(g)
    return GhostVec(out)


def ghost_invert(g: GhostVec) -> WittVec:
    """Recover Witt components x_m = (g_m - sum_{i<m} p^i x_i^(p^(m-i))) / p^m.

    Slot m is known to min(prec(g_m) - m, prec(x_0), ..., prec(x_{m-1})) digits.
    Raises ``NotDivisible`` if the input is not a ghost vector of an integral
    Witt vector and ``PrecisionExhausted`` when a slot would carry no digits.
    """
    xs = []
    for m, gm in enumerate(g.comps):
        if m == 0:
            xs.append(gm)
            continue
        q = min([gm.prec] + [x.prec + m for x in xs])
        if q - m < 1:
            raise PrecisionExhausted(f"slot {m} would be known to {q - m} digits")
        s = gm.reduce(q)
        for i, x in enumerate(xs):
            s = s - frobenius_power(x.at_prec(q - i), m - i).times_p(i)
        xs.append(s.divexact_p(m))
    return WittVec(xs)


def _check_pair(u: WittVec, v: WittVec):
    if u.n != v.n:
        raise ValueError(f"Witt lengths differ: {u.n} vs {v.n}")
    if not u.ring.same_variables(v.ring):
        raise VariableMismatch(f"{u.ring} vs {v.ring}")
    return min(u.ledger + v.ledger)


def witt_add(u: WittVec, v: WittVec) -> WittVec:
    prec = _check_pair(u, v)
    return ghost_invert(ghost(u.uniform(prec)) + ghost(v.uniform(prec)))


def witt_mul(u: WittVec, v: WittVec) -> WittVec:
    prec = _check_pair(u, v)
    return ghost_invert(ghost(u.uniform(prec)) * ghost(v.uniform(prec)))


def witt_neg(u: WittVec) -> WittVec:
    prec = min(u.ledger)
    return ghost_invert(-ghost(u.uniform(prec)))


def witt_mul_int(u: WittVec, k: int) -> WittVec:
    """``u + u + ... + u`` (k times), by double-and-add on Witt sums."""
    if k < 0:
        return witt_mul_int(witt_neg(u), -k)
    result = WittVec.zero(u.ring.with_prec(min(u.ledger)), u.n)
    base = u
    while k:
        if k & 1:
            result = witt_add(result, base)
        k >>= 1
        if k:
            base = witt_add(base, base)
    return result


def verschiebung(u: WittVec, *, extend: bool = False) -> WittVec:
    """V(x_0, ..., x_{n-1}) = (0, x_0, ..., x_{n-1}).

    By default the last slot is dropped to keep length n; ``extend=True``
    returns the full length n+1 vector.
    """
    zero = u.comps[0].ring.zero()
    comps = (zero,) + u.comps
    return WittVec(comps if extend else comps[:-1])


def frobenius(u: WittVec) -> WittVec:
    """F with ghost(F u)_m = ghost(u)_{m+1}; the result has length n-1."""
    if u.n < 2:
        raise LengthUnderflow("Frobenius needs length >= 2")
    prec = min(u.ledger)
    g = ghost(u.uniform(prec))
    out = ghost_invert(GhostVec(g.comps[1:]))
    return out.uniform(min(prec, min(out.ledger)))


def reduce_mod_p(w: WittVec) -> WittVec:
    """W(pi): reduce every component's coefficients modulo p."""
    return WittVec(c.reduce(1) for c in w.comps)
