"""Residue classes modulo p^N with an explicit known-precision exponent."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotDivisible, PrecisionExhausted


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


def valuation(a: int, p: int, cap: int | None = None) -> int:
    """p-adic valuation of ``a``; zero gets ``cap`` (or raises if no cap)."""
    if a == 0:
        if cap is None:
            raise ValueError("valuation of 0 needs a cap")
        return cap
    v = 0
    while a % p == 0:
        a //= p
        v += 1
        if cap is not None and v >= cap:
            return cap
    return v


@dataclass(frozen=True)
class PrimeCtx:
    """A prime ``p`` together with the working precision exponent ``N``."""

    p: int
    N: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.N < 1:
            raise ValueError("working precision N must be >= 1")

    @property
    def modulus(self) -> int:
        return self.p**self.N

    def scalar(self, value: int, prec: int | None = None) -> PrecScalar:
        return PrecScalar(self.p, value, self.N if prec is None else prec)

    def ring(self, names, invertible=None, prec=None):
        from .poly import LaurentRing

        names = tuple(names)
        if invertible is None:
            invertible = (False,) * len(names)
        return LaurentRing(self.p, self.N if prec is None else prec, names, tuple(invertible))


@dataclass(frozen=True)
class PrecScalar:
    """An element of Z/p^prec; the class is asserted modulo p^prec only."""

    p: int
    value: int
    prec: int

    def __post_init__(self):
        if self.prec < 1:
            raise PrecisionExhausted(f"precision {self.prec} < 1")
        object.__setattr__(self, "value", self.value % self.p**self.prec)

    def _coerce(self, other):
        if isinstance(other, PrecScalar):
            if other.p != self.p:
                raise ValueError("scalars over different primes")
            return other
        if isinstance(other, int):
            return PrecScalar(self.p, other, self.prec)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return PrecScalar(self.p, self.value + other.value, min(self.prec, other.prec))

    __radd__ = __add__

    def __neg__(self):
        return PrecScalar(self.p, -self.value, self.prec)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return PrecScalar(self.p, self.value * other.value, min(self.prec, other.prec))

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            return (self.value - other) % self.p**self.prec == 0
        if isinstance(other, PrecScalar):
            return (self.p, self.value, self.prec) == (other.p, other.value, other.prec)
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.value, self.prec))

    def valuation(self) -> int:
        return valuation(self.value, self.p, cap=self.prec)

    def is_unit(self) -> bool:
        return self.value % self.p != 0

    def inverse(self) -> PrecScalar:
        if not self.is_unit():
            raise NotDivisible(f"{self.value} is not a unit mod {self.p}^{self.prec}")
        return PrecScalar(self.p, pow(self.value, -1, self.p**self.prec), self.prec)

    def __repr__(self):
        return f"{self.value} (mod {self.p}^{self.prec})"


def scalar_div_exact(a: PrecScalar, v: int) -> PrecScalar:
    """Return ``b`` with ``p^v * b == a``; ``b`` is known to ``a.prec - v`` digits."""
    if v < 0:
        raise ValueError("v must be non-negative")
    new_prec = a.prec - v
    if new_prec < 1:
        raise PrecisionExhausted(f"dividing by {a.p}^{v} leaves precision {new_prec}")
    q, r = divmod(a.value, a.p**v)
    if r:
        raise NotDivisible(f"{a.p}^{v} does not divide {a.value} mod {a.p}^{a.prec}")
    return PrecScalar(a.p, q, new_prec)


def unit_coeff_int(p: int, i: int, prec: int) -> int:
    """p^(i+1)/(i+1) reduced into [0, p^prec)."""
    if i < 0:
        raise ValueError("i must be non-negative")
    v = valuation(i + 1, p)
    u = (i + 1) // p**v
    e = i + 1 - v
    if e >= prec:
        return 0
    mod = p**prec
    return p**e * pow(u, -1, mod) % mod


def unit_coeff(ctx: PrimeCtx, i: int) -> PrecScalar:
    """The coefficient p^(i+1)/(i+1) as an element of Z/p^N."""
    return PrecScalar(ctx.p, unit_coeff_int(ctx.p, i, ctx.N), ctx.N)
