"""Sparse multivariate Laurent polynomials over Z/p^prec.

A polynomial lives in a :class:`LaurentRing`, which fixes the prime, the
precision to which coefficients are known, the ordered variable names and
which variables are invertible.  Coefficients are stored as residues in
``[0, p**prec)``; zero coefficients are never stored.

Canonical text form: terms ``c*x1^e1*...*xk^ek`` in descending lexicographic
order of exponent vectors, joined by ``+``.  The coefficient is always
written; variables with exponent 0 are omitted and exponent 1 is written
bare.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import cached_property

from . import _backend
from .errors import NonUnitSubstitution, NotDivisible, PrecisionExhausted, VariableMismatch
from .scalars import PrecScalar, is_prime, valuation

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class LaurentRing:
    """Z/p^prec[x_1^(+-1), ..., x_k^(+-1)] with per-variable invertibility."""

    p: int
    prec: int
    names: tuple
    invertible: tuple = None

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        flags = (False,) * len(self.names) if self.invertible is None else self.invertible
        object.__setattr__(self, "invertible", tuple(bool(f) for f in flags))
        if self.prec < 1:
            raise PrecisionExhausted(f"ring precision {self.prec} < 1")
        if len(self.names) != len(self.invertible):
            raise ValueError("one invertibility flag per variable is required")
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate variable names in {self.names}")
        for name in self.names:
            if not _NAME.match(name):
                raise ValueError(f"bad variable name {name!r}")
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @cached_property
    def modulus(self) -> int:
        return self.p**self.prec

    @property
    def nvars(self) -> int:
        return len(self.names)

    def with_prec(self, prec: int) -> LaurentRing:
        if prec == self.prec:
            return self
        return LaurentRing(self.p, prec, self.names, self.invertible)

    def same_variables(self, other: LaurentRing) -> bool:
        return self.p == other.p and self.names == other.names and self.invertible == other.invertible

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise VariableMismatch(f"no variable {name!r} in {self.names}") from None

    def prepend(self, names, invertible=None) -> LaurentRing:
        names = tuple(names)
        flags = tuple(invertible) if invertible is not None else (False,) * len(names)
        return LaurentRing(self.p, self.prec, names + self.names, flags + self.invertible)

    def zero(self) -> LPoly:
        return LPoly._raw(self, {})

    def one(self) -> LPoly:
        return self.const(1)

    def const(self, c) -> LPoly:
        if isinstance(c, PrecScalar):
            ring = self.with_prec(min(self.prec, c.prec))
            return ring.const(c.value)
        c %= self.modulus
        return LPoly._raw(self, {(0,) * self.nvars: c} if c else {})

    def gen(self, which) -> LPoly:
        j = self.index(which) if isinstance(which, str) else which
        exp = [0] * self.nvars
        exp[j] = 1
        return LPoly._raw(self, {tuple(exp): 1})

    def gens(self):
        return tuple(self.gen(j) for j in range(self.nvars))

    def monomial(self, exp, c=1) -> LPoly:
        return LPoly(self, {tuple(exp): c})

    def parse(self, text: str) -> LPoly:
        return parse_poly(self, text)

    def __repr__(self):
        vs = ", ".join(n + ("^+-1" if f else "") for n, f in zip(self.names, self.invertible))
        return f"LaurentRing(Z/{self.p}^{self.prec}[{vs}])"


class LPoly:
    """An element of a :class:`LaurentRing`; immutable."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: LaurentRing, terms=None):
        mod = ring.modulus
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != ring.nvars:
                raise VariableMismatch(f"exponent {exp} has wrong length for {ring}")
            for e, inv, name in zip(exp, ring.invertible, ring.names):
                if e < 0 and not inv:
                    raise ValueError(f"negative exponent on non-invertible variable {name}")
            c = (clean.get(exp, 0) + int(c)) % mod
            if c:
                clean[exp] = c
            else:
                clean.pop(exp, None)
        self.ring = ring
        self.terms = clean

    @classmethod
    def _raw(cls, ring, terms):
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.terms = terms
        return obj

    # -- basic properties ---------------------------------------------------

    @property
    def p(self) -> int:
        return self.ring.p

    @property
    def prec(self) -> int:
        return self.ring.prec

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def coeff(self, exp) -> PrecScalar:
        return PrecScalar(self.p, self.terms.get(tuple(exp), 0), self.prec)

    def degree(self):
        """Maximal total degree; ``-inf`` for the zero polynomial."""
        if not self.terms:
            return -math.inf
        return max(sum(e) for e in self.terms)

    def degree_in(self, j: int):
        if not self.terms:
            return -math.inf
        return max(e[j] for e in self.terms)

    def valuation(self) -> int:
        """Minimal p-adic valuation of the coefficients (``prec`` for zero)."""
        return min((valuation(c, self.p, self.prec) for c in self.terms.values()), default=self.prec)

    def constant_term(self) -> int:
        return self.terms.get((0,) * self.ring.nvars, 0)

    # -- coercion -----------------------------------------------------------

    def _align(self, other):
        """Return (ring, my terms, other terms) at the common precision."""
        if isinstance(other, int):
            return self.ring, self.terms, self.ring.const(other).terms
        if isinstance(other, PrecScalar):
            other = self.ring.const(other)
        if not isinstance(other, LPoly):
            return None
        if not self.ring.same_variables(other.ring):
            raise VariableMismatch(f"{self.ring} vs {other.ring}")
        if self.prec == other.prec:
            return self.ring, self.terms, other.terms
        if self.prec < other.prec:
            return self.ring, self.terms, other.reduce(self.prec).terms
        return other.ring, self.reduce(other.prec).terms, other.terms

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        aligned = self._align(other)
        if aligned is None:
            return NotImplemented
        ring, a, b = aligned
        mod = ring.modulus
        out = dict(a)
        for e, c in b.items():
            s = (out.get(e, 0) + c) % mod
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LPoly._raw(ring, out)

    __radd__ = __add__

    def __neg__(self):
        mod = self.ring.modulus
        return LPoly._raw(self.ring, {e: mod - c for e, c in self.terms.items()})

    def __sub__(self, other):
        aligned = self._align(other)
        if aligned is None:
            return NotImplemented
        ring, a, b = aligned
        return LPoly._raw(ring, a) + (-LPoly._raw(ring, b))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            mod = self.ring.modulus
            out = {}
            for e, c in self.terms.items():
                c = c * other % mod
                if c:
                    out[e] = c
            return LPoly._raw(self.ring, out)
        aligned = self._align(other)
        if aligned is None:
            return NotImplemented
        ring, a, b = aligned
        return LPoly._raw(ring, _backend.mul_terms(a, b, ring.modulus))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            return self.terms == self.ring.const(other).terms
        if isinstance(other, LPoly):
            return self.ring == other.ring and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def equal_at(self, other: LPoly, prec: int) -> bool:
        """Equality of the two classes modulo p^prec."""
        return (self.reduce(prec) - other.reduce(prec)).is_zero()

    # -- precision ----------------------------------------------------------

    def reduce(self, prec: int) -> LPoly:
        if prec > self.prec:
            raise PrecisionExhausted(f"cannot raise precision {self.prec} -> {prec} by reduction")
        if prec == self.prec:
            return self
        ring = self.ring.with_prec(prec)
        mod = ring.modulus
        out = {}
        for e, c in self.terms.items():
            c %= mod
            if c:
                out[e] = c
        return LPoly._raw(ring, out)

    def lift(self, prec: int) -> LPoly:
        """Reinterpret the stored representatives modulo a higher power of p."""
        if prec < self.prec:
            raise ValueError("lift cannot lower precision; use reduce")
        return LPoly._raw(self.ring.with_prec(prec), dict(self.terms))

    def at_prec(self, prec: int) -> LPoly:
        return self.reduce(prec) if prec <= self.prec else self.lift(prec)

    def divexact_p(self, v: int) -> LPoly:
        """Exact division by p^v; the result is known to ``prec - v`` digits."""
        if v == 0:
            return self
        new_prec = self.prec - v
        if new_prec < 1:
            raise PrecisionExhausted(f"dividing by {self.p}^{v} leaves precision {new_prec}")
        pv = self.p**v
        out = {}
        for e, c in self.terms.items():
            q, r = divmod(c, pv)
            if r:
                raise NotDivisible(f"{self.p}^{v} does not divide coefficient {c} of {self}")
            out[e] = q
        return LPoly._raw(self.ring.with_prec(new_prec), out)

    def times_p(self, v: int) -> LPoly:
        """Multiply by p^v, gaining v digits of known precision."""
        if v == 0:
            return self
        pv = self.p**v
        return LPoly._raw(self.ring.with_prec(self.prec + v), {e: c * pv for e, c in self.terms.items()})

    # -- structure maps -----------------------------------------------------

    def truncate(self, j: int, bound: int) -> LPoly:
        """Drop terms whose exponent in variable ``j`` is at least ``bound``."""
        return LPoly._raw(self.ring, {e: c for e, c in self.terms.items() if e[j] < bound})

    def embed(self, ring: LaurentRing, positions) -> LPoly:
        """Relabel variables: variable j goes to position ``positions[j]`` of ``ring``."""
        k = ring.nvars
        out = {}
        for e, c in self.terms.items():
            f = [0] * k
            for j, pos in enumerate(positions):
                f[pos] = e[j]
            out[tuple(f)] = c
        return LPoly(ring.with_prec(min(ring.prec, self.prec)), out)

    def diff(self, j: int) -> LPoly:
        """Partial derivative with respect to variable ``j``."""
        mod = self.ring.modulus
        out = {}
        for e, c in self.terms.items():
            ej = e[j]
            if ej:
                c = c * ej % mod
                if c:
                    f = list(e)
                    f[j] -= 1
                    out[tuple(f)] = c
        return LPoly._raw(self.ring, out)

    def inverse(self, trunc=None) -> LPoly:
        """Inverse of a unit.

        A unit is a unit monomial in the invertible variables plus a part
        that is topologically nilpotent: divisible by p, or (when ``trunc =
        (j, D)`` is given) divisible by variable j, in which case the series
        is computed modulo ``x_j^D``.
        """
        p = self.p
        tv = trunc[0] if trunc else None
        leads = [
            (e, c)
            for e, c in self.terms.items()
            if c % p and (tv is None or e[tv] == 0)
        ]
        if len(leads) != 1:
            raise NonUnitSubstitution(f"{self} is not a unit")
        exp, c = leads[0]
        for e, inv, name in zip(exp, self.ring.invertible, self.ring.names):
            if e and not inv:
                raise NonUnitSubstitution(f"{self} is not a unit: {name} is not invertible")
        ring = self.ring
        lead_inv = LPoly._raw(ring, {tuple(-e for e in exp): pow(c, -1, ring.modulus)})
        eps = (self - LPoly._raw(ring, {exp: c})) * lead_inv
        if trunc:
            eps = eps.truncate(*trunc)
        neg_eps = -eps
        total = ring.one()
        term = ring.one()
        limit = ring.prec + (trunc[1] if trunc else 0) + 1
        for _ in range(limit):
            term = term * neg_eps
            if trunc:
                term = term.truncate(*trunc)
            if term.is_zero():
                break
            total = total + term
        else:
            raise NonUnitSubstitution(f"inverse series of {self} did not terminate")
        out = total * lead_inv
        return out.truncate(*trunc) if trunc else out

    def substitute(self, images, ring: LaurentRing | None = None, trunc=None) -> LPoly:
        """Image under the ring homomorphism sending variable j to ``images[j]``.

        Negative exponents require the image to be a unit.  ``trunc`` is
        forwarded to products and inverses (see :meth:`inverse`).
        """
        images = list(images)
        if len(images) != self.ring.nvars:
            raise VariableMismatch(f"{len(images)} images for {self.ring.nvars} variables")
        if images:
            target = images[0].ring
            for im in images[1:]:
                if not im.ring.same_variables(target):
                    raise VariableMismatch("substitution images live in different rings")
        elif ring is None:
            raise VariableMismatch("target ring required for a substitution without variables")
        else:
            target = ring
        if ring is not None and not ring.same_variables(target):
            raise VariableMismatch(f"images are not in {ring}")
        prec = min([self.prec, target.prec] + [im.prec for im in images] + ([ring.prec] if ring else []))
        target = target.with_prec(prec)
        images = [im.reduce(prec) for im in images]
        mod = target.modulus
        zero_exp = (0,) * target.nvars
        cache = {}

        def power(j, e):
            key = (j, e)
            if key not in cache:
                if e == 1:
                    val = images[j]
                elif e == -1:
                    val = images[j].inverse(trunc)
                elif e > 0:
                    half = power(j, e // 2)
                    val = half * half
                    if e % 2:
                        val = val * images[j]
                else:
                    val = power(j, -1) ** (-e)
                if trunc:
                    val = val.truncate(*trunc)
                cache[key] = val
            return cache[key]

        acc = {}
        for exp, c in self.terms.items():
            c %= mod
            if not c:
                continue
            term = LPoly._raw(target, {zero_exp: c})
            for j, e in enumerate(exp):
                if e:
                    term = term * power(j, e)
                    if trunc:
                        term = term.truncate(*trunc)
            for e2, c2 in term.terms.items():
                s = (acc.get(e2, 0) + c2) % mod
                if s:
                    acc[e2] = s
                else:
                    acc.pop(e2, None)
        return LPoly._raw(target, acc)

    # -- text ---------------------------------------------------------------

    def sorted_terms(self):
        return sorted(self.terms.items(), reverse=True)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"LPoly({format_poly(self)!r} mod {self.p}^{self.prec})"


def format_poly(f: LPoly) -> str:
    if not f.terms:
        return "0"
    parts = []
    for exp, c in f.sorted_terms():
        factors = [str(c)]
        for name, e in zip(f.ring.names, exp):
            if e == 1:
                factors.append(name)
            elif e:
                factors.append(f"{name}^{e}")
        parts.append("*".join(factors))
    return "+".join(parts)


_FACTOR = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)\s*(?:\^\s*\(?\s*([+-]?\d+)\s*\)?)?)\s*\Z")


def parse_poly(ring: LaurentRing, text: str) -> LPoly:
    """Parse the canonical text form (``-`` between terms is also accepted)."""
    src = text.strip()
    if not src:
        raise ValueError("empty polynomial string")
    protected = re.sub(r"\^\s*\(?\s*-", "^~", src)
    chunks = re.split(r"(?=[+-])", protected)
    terms = {}
    mod = ring.modulus
    for chunk in chunks:
        chunk = chunk.strip()
        if not chunk:
            continue
        sign = 1
        while chunk and chunk[0] in "+-":
            if chunk[0] == "-":
                sign = -sign
            chunk = chunk[1:].strip()
        if not chunk:
            raise ValueError(f"dangling sign in {text!r}")
        coeff = sign
        exp = [0] * ring.nvars
        for factor in chunk.split("*"):
            factor = factor.replace("~", "-").replace(")", "")
            m = _FACTOR.match(factor)
            if not m:
                raise ValueError(f"cannot parse factor {factor!r} in {text!r}")
            if m.group(1) is not None:
                coeff *= int(m.group(1))
            else:
                j = ring.index(m.group(2))
                exp[j] += int(m.group(3)) if m.group(3) is not None else 1
        key = tuple(exp)
        terms[key] = (terms.get(key, 0) + coeff) % mod
    return LPoly(ring, terms)
