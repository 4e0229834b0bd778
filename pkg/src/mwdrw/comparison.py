"""Frobenius lifts, the ghost-defined section s_f and the comparison map t_f.

For a Frobenius lift f on A = Z/p^M[x^(+-1)], s_f(a) is the Witt vector
whose ghost coordinates are (a, f(a), ..., f^(n-1)(a)); t_f = W(pi) o s_f
reduces its components modulo p.  Working precision is M = N + n - 1, so
slot m of s_f(a) is known to M - m >= N digits.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BoundViolation, FunctorialityViolation, IncompatibleLifts, NotDivisible
from .forms import Form, RingMap, pullback
from .poly import LaurentRing, LPoly
from .witt import GhostVec, WittVec, ghost_invert, reduce_mod_p


class FrobLift:
    """A ring endomorphism f with f(x_j) = x_j^p + p g_j for every generator.

    The perturbations g_j are kept as the certificate.  ``check=False``
    skips the congruence test (used to exercise the failure path of s_f).
    """

    def __init__(self, f: RingMap, *, check: bool = True):
        if not f.source.same_variables(f.target):
            raise ValueError("a Frobenius lift is an endomorphism")
        self.map = f
        self.perturbations = []
        p = f.source.p
        for j, im in enumerate(f.images):
            x = f.target.gen(j)
            diff = im - x**p
            try:
                if diff.prec == 1:
                    # congruence is checkable, g_j itself is not determined
                    if diff:
                        raise NotDivisible(str(diff))
                    self.perturbations.append(None)
                    continue
                self.perturbations.append(diff.divexact_p(1))
            except NotDivisible:
                if check:
                    raise NotDivisible(
                        f"f({f.source.names[j]}) = {im} is not congruent to {f.source.names[j]}^{p} mod p"
                    ) from None
                self.perturbations.append(None)

    @classmethod
    def from_strings(cls, ring: LaurentRing, texts, *, check=True):
        return cls(RingMap.from_strings(ring, ring, texts), check=check)

    @classmethod
    def standard(cls, ring: LaurentRing):
        """x_j -> x_j^p."""
        return cls(RingMap(ring, ring, [g**ring.p for g in ring.gens()]))

    @property
    def ring(self):
        return self.map.source

    def at_prec(self, prec):
        return FrobLift(self.map.at_prec(prec), check=False)

    def perturbation_degree(self):
        return max((g.degree() for g in self.perturbations if g is not None), default=float("-inf"))


@dataclass
class ComparisonMap:
    lift: FrobLift
    n: int
    N: int

    def __post_init__(self):
        if self.n < 1 or self.N < 1:
            raise ValueError("Witt length and precision must be positive")
        self._f = self.lift.map.at_prec(self.M)

    @property
    def M(self) -> int:
        return self.N + self.n - 1

    @property
    def ring(self) -> LaurentRing:
        return self.lift.ring.with_prec(self.M)

    def s_f(self, a: LPoly) -> WittVec:
        """Witt vector over Z/p^M with ghost coordinates (a, f(a), ...); ledger (M, M-1, ...)."""
        a = a.at_prec(self.M)
        ghosts = [a]
        for _ in range(self.n - 1):
            ghosts.append(self._f(ghosts[-1]))
        return ghost_invert(GhostVec(ghosts))

    def t_f(self, a: LPoly) -> WittVec:
        return reduce_mod_p(self.s_f(a))


def comparison_map(lift: FrobLift, n: int, N: int) -> ComparisonMap:
    return ComparisonMap(lift, n, N)


def _witt_agree(u: WittVec, v: WittVec):
    if u.n != v.n:
        return False
    return all(a.equal_at(b, min(a.prec, b.prec)) for a, b in zip(u, v))


def functoriality_check(cm: ComparisonMap, cm2: ComparisonMap, phi: RingMap, tests, *, strict=True):
    """Check W(phi) o s_f = s_f' o phi on ``tests`` after checking phi f = f' phi.

    Returns a list of ``(a, ok)`` pairs.
    """
    if cm.n != cm2.n:
        raise ValueError("comparison maps of different Witt lengths")
    M = min(cm.M, cm2.M)
    phi_m = phi.at_prec(M)
    f = cm.lift.map.at_prec(M)
    f2 = cm2.lift.map.at_prec(M)
    for j in range(phi.source.nvars):
        left = phi_m(f.images[j])
        right = f2(phi_m.images[j])
        if not left.equal_at(right, M):
            raise IncompatibleLifts(
                f"phi(f({phi.source.names[j]})) = {left} but f'(phi({phi.source.names[j]})) = {right}"
            )
    results = []
    for a in tests:
        lhs = cm.s_f(a).map(phi_m)
        rhs = cm2.s_f(phi_m(a.at_prec(M)))
        ok = _witt_agree(lhs, rhs)
        if strict and not ok:
            raise FunctorialityViolation(f"square fails on {a}", {"lhs": lhs.to_json(), "rhs": rhs.to_json()})
        results.append((a, ok))
    return results


def overconvergence_profile(cm: ComparisonMap, a: LPoly):
    """``[(i, deg slot_i of t_f(a), deg(a) * p^i)]``; zero slots report ``None``.

    Requires every perturbation g_j (f(x_j) = x_j^p + p g_j) to have total
    degree at most p.
    """
    p = cm.ring.p
    if cm.lift.perturbation_degree() > p:
        raise BoundViolation(f"perturbation degree {cm.lift.perturbation_degree()} exceeds p = {p}")
    t = cm.t_f(a)
    deg_a = a.degree()
    profile = []
    for i, slot in enumerate(t):
        deg = None if slot.is_zero() else slot.degree()
        bound = None if a.is_zero() else deg_a * p**i
        if deg is not None and deg > bound:
            raise BoundViolation(f"slot {i} of t_f({a}) has degree {deg} > {bound}")
        profile.append((i, deg, bound))
    return profile


# -- induced map on forms ---------------------------------------------------


def witt_coordinate_ring(ring: LaurentRing, n: int) -> LaurentRing:
    """Variables ``<name>_<i>`` for slot i of each variable of ``ring``."""
    names = tuple(f"{name}_{i}" for name in ring.names for i in range(n))
    flags = tuple(inv for inv in ring.invertible for _ in range(n))
    return LaurentRing(ring.p, ring.prec, names, flags)


def coordinate_map(cm: ComparisonMap) -> RingMap:
    """x_j -> sum_i p^i * s_f(x_j)_i evaluated in the slot-i coordinates.

    Slot i is moved into the variables ``<name>_i`` and weighted by p^i (the
    image of V^i), so the map is congruent to x_j -> x_j_0 modulo p for every
    Frobenius lift.
    """
    src = cm.ring
    coords = witt_coordinate_ring(src, cm.n).with_prec(cm.M)
    k, n = src.nvars, cm.n
    images = []
    for j in range(k):
        w = cm.s_f(src.gen(j))
        total = coords.zero()
        for i, slot in enumerate(w):
            positions = [jj * n + i for jj in range(k)]
            total = total + slot.embed(coords.with_prec(slot.prec), positions).times_p(i).reduce(cm.M)
        images.append(total)
    return RingMap(src, coords, images)


def induced_form_map(cm: ComparisonMap, w: Form) -> Form:
    """Pull ``w`` back along :func:`coordinate_map`; a DGA morphism."""
    return pullback(coordinate_map(cm), w)


def project_slot0(w: Form, ring: LaurentRing, n: int) -> Form:
    """Reduce a coordinate-ring form mod p and read slot-0 coordinates as the
    original variables (slot >= 1 coordinates must be absent)."""
    k = ring.nvars
    target = ring.with_prec(1)
    terms = {}
    for idx, c in w.reduce(1).terms.items():
        if any(i % n for i in idx):
            raise ValueError("form involves higher-slot differentials")
        new_idx = tuple(i // n for i in idx)
        out = {}
        for exp, a in c.terms.items():
            if any(exp[jj * n + i] for jj in range(k) for i in range(1, n)):
                raise ValueError("form involves higher-slot coordinates")
            out[tuple(exp[jj * n] for jj in range(k))] = a
        terms[new_idx] = LPoly(target, out)
    return Form(target, w.degree, terms)
