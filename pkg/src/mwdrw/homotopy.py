"""Explicit chain homotopy between maps that agree modulo p.

For forms over B<T> written as sum_i T^i (w'_i + dT ^ w''_i) the operator

    L(w) = sum_i (p^(i+1) / (i+1)) w''_i

satisfies h_p - h_0 = d L + L d, where h_c sets T = c.  Given psi_1, psi_2
with the same reduction mod p on a free Laurent algebra, the map

    phi(x_j) = psi_1(x_j) + T (psi_2(x_j) - psi_1(x_j)) / p

has h_0 phi = psi_1 and h_p phi = psi_2, so H = L o phi is a homotopy.

B<T> is represented by B[T] computed modulo T^D, where D is chosen so that
both p^i and p^(i+1)/(i+1) vanish modulo p^prec for every i >= D.  Dropping
those terms changes neither h_0, h_p nor L, so nothing is lost.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import IdentityViolation, NotCongruentModP, NotDivisible, PrecisionExhausted, VariableMismatch
from .forms import Form, RingMap, TForm, adjoin_t, eval_t, exterior_derivative, pullback
from .scalars import unit_coeff_int, valuation


def safe_t_window(p: int, prec: int) -> int:
    """Least D >= prec with i+1 - v_p(i+1) >= prec for every i >= D."""

    def floor_log(t):
        k = 0
        while p ** (k + 1) <= t:
            k += 1
        return k

    # t - floor(log_p t) is non-decreasing and bounds t - v_p(t) below, so
    # past its first crossing of prec every index is safe
    t = 1
    while t - floor_log(t) < prec:
        t += 1
    D = t - 1
    while D > prec and D - valuation(D, p) >= prec:
        D -= 1
    return max(D, prec)


def homotopy_operator(w: TForm) -> Form:
    """L(w) = sum_i p^(i+1)/(i+1) * w''_i, a form of degree deg(w) - 1 over B."""
    prec = w.prec
    base = w.base.with_prec(prec)
    total = Form(base, w.degree - 1)
    p = base.p
    for i, f in sorted(w.dprime.items()):
        c = unit_coeff_int(p, i, prec)
        if c:
            total = total + f.scale(c)
    return total


L = homotopy_operator


@dataclass
class IdentityCheck:
    lhs: Form
    rhs: Form
    ok: bool

    def to_json(self):
        return {"lhs": self.lhs.to_json(), "rhs": self.rhs.to_json(), "ok": self.ok}


def check_homotopy_identity(w: TForm, *, strict: bool = True) -> IdentityCheck:
    """Compare h_p(w) - h_0(w) with d L(w) + L(d w), exactly."""
    p = w.base.p
    lhs = eval_t(w, p) - eval_t(w, 0)
    rhs = exterior_derivative(homotopy_operator(w)) + homotopy_operator(w.d())
    prec = min(lhs.ring.prec, rhs.ring.prec)
    ok = lhs.equal_at(rhs, prec)
    if strict and not ok:
        raise IdentityViolation("h_p - h_0 != dL + Ld", {"lhs": lhs.to_json(), "rhs": rhs.to_json()})
    return IdentityCheck(lhs, rhs, ok)


@dataclass
class HomotopyCertificate:
    """phi: A -> B<T> with h_0 phi = psi1 and h_p phi = psi2 (checked on generators)."""

    psi1: RingMap
    psi2: RingMap
    phi: RingMap
    prec: int
    t_window: int
    verified: list = field(default_factory=list)

    @property
    def base(self):
        return self.psi1.target.with_prec(self.prec)

    def to_json(self):
        return {
            "psi1": self.psi1.to_json()["images"],
            "psi2": self.psi2.to_json()["images"],
            "phi": self.phi.to_json()["images"],
            "precision": self.prec,
            "t_window": self.t_window,
            "verified": list(self.verified),
        }


def _eval_generator(f, base, c):
    return eval_t(TForm.from_form(Form.function(f), base), c).coefficient(())


def build_strong_homotopy(psi1: RingMap, psi2: RingMap) -> HomotopyCertificate:
    if psi1.source != psi2.source or not psi1.target.same_variables(psi2.target):
        raise VariableMismatch("psi1 and psi2 must share source and target")
    prec = min(psi1.prec, psi2.prec) - 1
    if prec < 1:
        raise PrecisionExhausted("congruent maps need precision >= 2 to build a homotopy")
    base = psi1.target.with_prec(prec + 1)
    ring_t = adjoin_t(base).with_prec(prec)
    D = safe_t_window(base.p, prec)
    positions = list(range(1, ring_t.nvars))
    T = ring_t.gen(0)
    images = []
    for j, (a, b) in enumerate(zip(psi1.images, psi2.images)):
        a = a.reduce(prec + 1)
        try:
            c = (b.reduce(prec + 1) - a).divexact_p(1)
        except NotDivisible:
            raise NotCongruentModP(
                f"psi1({psi1.source.names[j]}) = {a} and psi2 = {b} differ mod p"
            ) from None
        images.append(a.reduce(prec).embed(ring_t, positions) + T * c.embed(ring_t, positions))
    phi = RingMap(psi1.source, ring_t, images, trunc=(0, D))
    base_lo = base.with_prec(prec)
    for j, im in enumerate(phi.images):
        at0 = _eval_generator(im, base_lo, 0)
        atp = _eval_generator(im, base_lo, base.p)
        if not (at0.equal_at(psi1.images[j], prec) and atp.equal_at(psi2.images[j], prec)):
            raise IdentityViolation(f"strong homotopy fails on generator {psi1.source.names[j]}")
    return HomotopyCertificate(psi1, psi2, phi, prec, D)


@dataclass
class HomotopyResult:
    primitive: Form
    lhs: Form
    rhs: Form
    verified: bool

    def to_json(self):
        return {
            "H": self.primitive.to_json(),
            "difference": self.lhs.to_json(),
            "dH_plus_Hd": self.rhs.to_json(),
            "verified": self.verified,
        }


def apply_homotopy(cert: HomotopyCertificate, w: Form) -> Form:
    """H(w) = L(phi^* w)."""
    base = cert.base
    lifted = pullback(cert.phi, w)
    return homotopy_operator(TForm.from_form(lifted, base.with_prec(lifted.ring.prec)))


def chain_homotopy(cert: HomotopyCertificate, w: Form, *, strict: bool = True) -> HomotopyResult:
    """Return H(w) and check psi2^* w - psi1^* w = d H(w) + H(d w) at ``cert.prec``."""
    prec = cert.prec
    h = apply_homotopy(cert, w)
    hd = apply_homotopy(cert, exterior_derivative(w))
    lhs = (pullback(cert.psi2, w) - pullback(cert.psi1, w)).reduce(prec)
    rhs = (exterior_derivative(h) + hd).reduce(prec)
    ok = lhs.equal_at(rhs, prec)
    cert.verified.append(ok)
    if strict and not ok:
        raise IdentityViolation(
            "psi2^* - psi1^* != dH + Hd",
            {"form": w.to_json(), "lhs": lhs.to_json(), "rhs": rhs.to_json()},
        )
    return HomotopyResult(h.reduce(prec), lhs, rhs, ok)
