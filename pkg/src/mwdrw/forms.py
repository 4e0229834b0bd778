"""Differential forms over Laurent-polynomial rings.

A :class:`Form` of degree q stores coefficients against strictly increasing
index tuples ``(i_1 < ... < i_q)`` meaning ``dx_{i_1} ^ ... ^ dx_{i_q}``.

A :class:`TForm` is a form over B<T> kept in the shape
``sum_i T^i (w'_i + dT ^ w''_i)`` with w'_i, w''_i forms over B.  Forms over
the ring with T adjoined as variable 0 convert losslessly to and from this
shape: dT sorts first, so the dT-part reads off w''_i with no sign change.
"""

from __future__ import annotations

from itertools import combinations

from .errors import NonUnitSubstitution, VariableMismatch
from .poly import LaurentRing, LPoly


def merge_sign(a, b):
    """Sign and merged tuple of dx_a ^ dx_b, or (0, None) when they overlap."""
    if set(a) & set(b):
        return 0, None
    inversions = sum(1 for i in a for j in b if i > j)
    return (-1) ** inversions, tuple(sorted(a + b))


class Form:
    __slots__ = ("ring", "degree", "terms")

    def __init__(self, ring: LaurentRing, degree: int, terms=None):
        # degree -1 (the target of L on 0-forms) and degrees above nvars
        # exist only as the zero module
        if degree < -1:
            raise ValueError(f"negative form degree {degree}")
        clean = {}
        prec = ring.prec
        for idx, c in (terms or {}).items():
            idx = tuple(idx)
            if len(idx) != degree or any(b <= a for a, b in zip(idx, idx[1:])):
                raise ValueError(f"index tuple {idx} is not strictly increasing of length {degree}")
            if not c.ring.same_variables(ring):
                raise VariableMismatch(f"coefficient ring {c.ring} vs {ring}")
            prec = min(prec, c.prec)
            clean[idx] = c
        self.ring = ring.with_prec(prec)
        self.degree = degree
        self.terms = {}
        for idx, c in clean.items():
            c = c.reduce(prec)
            if not c.is_zero():
                self.terms[idx] = c

    @classmethod
    def zero(cls, ring, degree):
        return cls(ring, degree)

    @classmethod
    def function(cls, f: LPoly):
        return cls(f.ring, 0, {(): f})

    @classmethod
    def dx(cls, ring, j):
        return cls(ring, 1, {(j,): ring.one()})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def coefficient(self, idx):
        return self.terms.get(tuple(idx), self.ring.zero())

    def reduce(self, prec):
        return Form(self.ring.with_prec(min(prec, self.ring.prec)), self.degree,
                    {i: c.reduce(min(prec, c.prec)) for i, c in self.terms.items()})

    def truncate(self, j, bound):
        return Form(self.ring, self.degree, {i: c.truncate(j, bound) for i, c in self.terms.items()})

    def _check(self, other):
        if not isinstance(other, Form):
            return False
        if not self.ring.same_variables(other.ring):
            raise VariableMismatch(f"{self.ring} vs {other.ring}")
        return True

    def __add__(self, other):
        if not self._check(other):
            return NotImplemented
        if self.degree != other.degree:
            raise ValueError(f"cannot add forms of degrees {self.degree} and {other.degree}")
        prec = min(self.ring.prec, other.ring.prec)
        terms = {i: c.reduce(prec) for i, c in self.terms.items()}
        for i, c in other.terms.items():
            terms[i] = terms[i] + c if i in terms else c.reduce(prec)
        return Form(self.ring.with_prec(prec), self.degree, terms)

    def __neg__(self):
        return Form(self.ring, self.degree, {i: -c for i, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, f):
        """Multiply every coefficient by a function (LPoly) or integer."""
        return Form(self.ring, self.degree, {i: c * f for i, c in self.terms.items()})

    def __mul__(self, f):
        if isinstance(f, (int, LPoly)):
            return self.scale(f)
        return NotImplemented

    __rmul__ = __mul__

    def wedge(self, other: Form) -> Form:
        self._check(other)
        out = {}
        for i, a in self.terms.items():
            for j, b in other.terms.items():
                sign, k = merge_sign(i, j)
                if sign:
                    term = a * b if sign > 0 else -(a * b)
                    out[k] = out[k] + term if k in out else term
        prec = min(self.ring.prec, other.ring.prec)
        return Form(self.ring.with_prec(prec), self.degree + other.degree, out)

    def __xor__(self, other):
        return self.wedge(other)

    def d(self) -> Form:
        return exterior_derivative(self)

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return (self.ring == other.ring and self.degree == other.degree
                and self.terms == other.terms)

    def equal_at(self, other, prec):
        if self.degree != other.degree:
            return False
        return (self.reduce(prec) - other.reduce(prec)).is_zero()

    def multidegree_parts(self):
        """Split by multidegree (dx_j weighs like x_j): {multidegree: Form}."""
        parts = {}
        for idx, c in self.terms.items():
            for exp, a in c.terms.items():
                md = list(exp)
                for i in idx:
                    md[i] += 1
                key = tuple(md)
                parts.setdefault(key, {}).setdefault(idx, {})[exp] = a
        return {
            md: Form(self.ring, self.degree, {i: LPoly._raw(self.ring, t) for i, t in pieces.items()})
            for md, pieces in sorted(parts.items())
        }

    def sorted_terms(self):
        return sorted(self.terms.items())

    def to_json(self):
        return {
            "degree": self.degree,
            "terms": [{"indices": list(i), "coefficient": str(c)} for i, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, ring, data):
        if isinstance(data, str):
            return parse_form(ring, data)
        deg = int(data["degree"])
        terms = {}
        for t in data.get("terms", []):
            idx = t["indices"]
            idx = tuple(ring.index(i) if isinstance(i, str) else int(i) for i in idx)
            if len(set(idx)) != len(idx):
                continue
            perm_sign = _perm_sign(sorted(range(len(idx)), key=lambda k: idx[k]))
            c = ring.parse(t["coefficient"]) if isinstance(t["coefficient"], str) else ring.const(int(t["coefficient"]))
            key = tuple(sorted(idx))
            c = c if perm_sign > 0 else -c
            terms[key] = terms[key] + c if key in terms else c
        return cls(ring, deg, terms)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for idx, c in self.sorted_terms():
            diff = "^".join("d" + self.ring.names[i] for i in idx)
            parts.append(f"({c})" + ("*" + diff if diff else ""))
        return " + ".join(parts)

    def __repr__(self):
        return f"Form[{self.degree}]({self})"


def _perm_sign(order):
    sign = 1
    order = list(order)
    for i in range(len(order)):
        while order[i] != i:
            j = order[i]
            order[i], order[j] = order[j], order[i]
            sign = -sign
    return sign


def parse_form(ring: LaurentRing, text: str) -> Form:
    """Parse ``coef*dx^dy + ...`` where each term is ``(poly)*dv1^dv2`` or ``poly``.

    Convenience for CLI jobs; a term's differential part is a ``^``-joined
    list of ``d<name>`` tokens after the last ``*``.
    """
    pieces = [s.strip() for s in _split_top(text)]
    terms = {}
    degree = None
    for piece in pieces:
        coef_txt, diffs = piece, []
        if "*d" in piece or piece.startswith("d"):
            head, _, tail = piece.rpartition("*") if "*d" in piece else ("1", "", piece)
            toks = tail.split("^")
            if all(tok.startswith("d") and tok[1:] in ring.names for tok in toks):
                coef_txt = head
                diffs = [ring.index(tok[1:]) for tok in toks]
        coef_txt = coef_txt.strip()
        if coef_txt.startswith("(") and coef_txt.endswith(")"):
            coef_txt = coef_txt[1:-1]
        c = ring.parse(coef_txt)
        if degree is None:
            degree = len(diffs)
        elif degree != len(diffs):
            raise ValueError(f"inhomogeneous form {text!r}")
        if len(set(diffs)) != len(diffs):
            continue
        order = sorted(range(len(diffs)), key=lambda k: diffs[k])
        if _perm_sign(order) < 0:
            c = -c
        key = tuple(sorted(diffs))
        terms[key] = terms[key] + c if key in terms else c
    return Form(ring, degree or 0, terms)


def _split_top(text):
    out, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "+" and depth == 0 and cur and not "".join(cur).rstrip().endswith("^"):
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return [s for s in out if s.strip()]


def exterior_derivative(w: Form) -> Form:
    ring = w.ring
    out = {}
    for idx, c in w.terms.items():
        for j in range(ring.nvars):
            if j in idx:
                continue
            dc = c.diff(j)
            if dc.is_zero():
                continue
            pos = sum(1 for i in idx if i < j)
            key = tuple(sorted(idx + (j,)))
            term = -dc if pos % 2 else dc
            out[key] = out[key] + term if key in out else term
    return Form(ring, w.degree + 1, out)


def d(w):
    """Exterior derivative of a :class:`Form` or a :class:`TForm`."""
    if isinstance(w, TForm):
        return w.d()
    return exterior_derivative(w)


def wedge(a: Form, b: Form) -> Form:
    return a.wedge(b)


class RingMap:
    """A ring homomorphism of Laurent rings given by generator images.

    ``trunc = (j, D)`` declares that the target is computed modulo x_j^D
    (used for the T-adic series of the strong homotopy).
    """

    __slots__ = ("source", "target", "images", "trunc")

    def __init__(self, source: LaurentRing, target: LaurentRing, images, trunc=None):
        images = tuple(images)
        if len(images) != source.nvars:
            raise VariableMismatch(f"{len(images)} images for {source.nvars} generators")
        prec = target.prec
        for im in images:
            if not im.ring.same_variables(target):
                raise VariableMismatch(f"image {im} not in {target}")
            prec = min(prec, im.prec)
        self.source = source
        self.target = target.with_prec(prec)
        self.images = tuple(im.reduce(prec) for im in images)
        self.trunc = trunc
        if trunc:
            self.images = tuple(im.truncate(*trunc) for im in self.images)
        for j, inv in enumerate(source.invertible):
            if inv:
                try:
                    self.images[j].inverse(trunc)
                except NonUnitSubstitution as exc:
                    raise NonUnitSubstitution(
                        f"invertible generator {source.names[j]} maps to non-unit {self.images[j]}"
                    ) from exc

    @classmethod
    def identity(cls, ring):
        return cls(ring, ring, ring.gens())

    @classmethod
    def from_strings(cls, source, target, texts):
        return cls(source, target, [target.parse(t) for t in texts])

    @property
    def prec(self):
        return self.target.prec

    def __call__(self, f: LPoly) -> LPoly:
        return f.substitute(self.images, self.target, self.trunc)

    def compose(self, inner: RingMap) -> RingMap:
        """``self o inner`` (apply ``inner`` first)."""
        if not inner.target.same_variables(self.source):
            raise VariableMismatch("maps are not composable")
        return RingMap(inner.source, self.target, [self(im) for im in inner.images], self.trunc)

    def at_prec(self, prec):
        return RingMap(self.source, self.target.with_prec(prec),
                       [im.at_prec(prec) for im in self.images], self.trunc)

    def differentials(self):
        return [exterior_derivative(Form.function(im)) for im in self.images]

    def __eq__(self, other):
        return (isinstance(other, RingMap) and self.source == other.source
                and self.target == other.target and self.images == other.images)

    def to_json(self):
        return {"images": [str(im) for im in self.images]}

    def __repr__(self):
        pairs = ", ".join(f"{n}->{im}" for n, im in zip(self.source.names, self.images))
        return f"RingMap({pairs})"


def pullback(phi: RingMap, w: Form) -> Form:
    """The DGA map induced by ``phi``: f dx_I -> phi(f) d(phi x_i1) ^ ... ."""
    if not w.ring.same_variables(phi.source):
        raise VariableMismatch(f"form over {w.ring}, map from {phi.source}")
    dims = phi.differentials()
    target = phi.target.with_prec(min(phi.target.prec, w.ring.prec))
    total = Form(target, w.degree)
    cache = {}
    for idx, c in w.terms.items():
        if idx not in cache:
            acc = Form.function(target.one())
            for i in idx:
                acc = acc.wedge(dims[i])
                if phi.trunc:
                    acc = acc.truncate(*phi.trunc)
            cache[idx] = acc
        piece = cache[idx].scale(phi(c))
        if phi.trunc:
            piece = piece.truncate(*phi.trunc)
        total = total + piece
    return total


# -- forms over B<T> ----------------------------------------------------------


def t_name(base: LaurentRing) -> str:
    name = "T"
    while name in base.names:
        name += "_"
    return name


def adjoin_t(base: LaurentRing) -> LaurentRing:
    """B[T] with T placed first so that dT sorts before every dx_j."""
    return base.prepend((t_name(base),))


class TForm:
    """``sum_i T^i (w'_i + dT ^ w''_i)`` with w'_i of degree q, w''_i of degree q-1."""

    __slots__ = ("base", "degree", "prime", "dprime")

    def __init__(self, base: LaurentRing, degree: int, prime=None, dprime=None):
        self.base = base
        self.degree = degree
        self.prime = {}
        self.dprime = {}
        for i, f in (prime or {}).items():
            if f.degree != degree:
                raise ValueError(f"w'_{i} has degree {f.degree}, expected {degree}")
            if not f.is_zero():
                self.prime[int(i)] = f
        for i, f in (dprime or {}).items():
            if degree == 0:
                if not f.is_zero():
                    raise ValueError("a 0-form has no dT part")
                continue
            if f.degree != degree - 1:
                raise ValueError(f"w''_{i} has degree {f.degree}, expected {degree - 1}")
            if not f.is_zero():
                self.dprime[int(i)] = f

    @property
    def prec(self):
        precs = [f.ring.prec for f in self.prime.values()] + [f.ring.prec for f in self.dprime.values()]
        return min(precs, default=self.base.prec)

    def t_degree(self):
        return max(list(self.prime) + list(self.dprime), default=-1)

    def is_zero(self):
        return not self.prime and not self.dprime

    def d(self) -> TForm:
        """d(T^i w') = i T^(i-1) dT^w' + T^i dw';  d(T^i dT^w'') = -T^i dT^dw''."""
        prime = {}
        dprime = {}
        for i, w in self.prime.items():
            dw = exterior_derivative(w)
            if not dw.is_zero():
                prime[i] = dw
            if i > 0:
                term = w.scale(i)
                dprime[i - 1] = dprime[i - 1] + term if i - 1 in dprime else term
        for i, w in self.dprime.items():
            dw = exterior_derivative(w)
            if not dw.is_zero():
                term = -dw
                dprime[i] = dprime[i] + term if i in dprime else term
        return TForm(self.base, self.degree + 1, prime, dprime)

    def __add__(self, other):
        prime = dict(self.prime)
        for i, w in other.prime.items():
            prime[i] = prime[i] + w if i in prime else w
        dprime = dict(self.dprime)
        for i, w in other.dprime.items():
            dprime[i] = dprime[i] + w if i in dprime else w
        return TForm(self.base, self.degree, prime, dprime)

    def __neg__(self):
        return TForm(self.base, self.degree, {i: -w for i, w in self.prime.items()},
                     {i: -w for i, w in self.dprime.items()})

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        return (isinstance(other, TForm) and self.degree == other.degree
                and self.prime == other.prime and self.dprime == other.dprime)

    def to_form(self) -> Form:
        """The same element as a :class:`Form` over :func:`adjoin_t` of the base."""
        ring = adjoin_t(self.base).with_prec(self.prec)
        positions = list(range(1, ring.nvars))
        terms = {}

        def put(key, c):
            terms[key] = terms[key] + c if key in terms else c

        for i, w in self.prime.items():
            for idx, c in w.terms.items():
                put(tuple(j + 1 for j in idx), _times_t(c.embed(ring, positions), i))
        for i, w in self.dprime.items():
            for idx, c in w.terms.items():
                put((0,) + tuple(j + 1 for j in idx), _times_t(c.embed(ring, positions), i))
        return Form(ring, self.degree, terms)

    @classmethod
    def from_form(cls, w: Form, base: LaurentRing) -> TForm:
        """Split a form over B[T] (T = variable 0) into the T-power-series shape."""
        ring = w.ring
        if ring.names[1:] != base.names or ring.invertible[0]:
            raise VariableMismatch(f"{ring} is not {base} with T adjoined first")
        b = base.with_prec(ring.prec)
        prime = {}
        dprime = {}
        for idx, c in w.terms.items():
            has_dt = bool(idx) and idx[0] == 0
            key = tuple(j - 1 for j in (idx[1:] if has_dt else idx))
            by_power = {}
            for exp, a in c.terms.items():
                by_power.setdefault(exp[0], {})[exp[1:]] = a
            target = dprime if has_dt else prime
            for i, t in by_power.items():
                target.setdefault(i, {})[key] = LPoly._raw(b, t)
        deg = w.degree
        return cls(
            base.with_prec(ring.prec), deg,
            {i: Form(b, deg, t) for i, t in prime.items()},
            {i: Form(b, deg - 1, t) for i, t in dprime.items()} if deg > 0 else {},
        )

    def __repr__(self):
        parts = [f"T^{i}({w})" for i, w in sorted(self.prime.items())]
        parts += [f"T^{i} dT^({w})" for i, w in sorted(self.dprime.items())]
        return f"TForm[{self.degree}](" + (" + ".join(parts) or "0") + ")"


def _times_t(c: LPoly, i: int) -> LPoly:
    if i == 0:
        return c
    return LPoly._raw(c.ring, {(e[0] + i,) + e[1:]: a for e, a in c.terms.items()})


def eval_t(w: TForm, c: int) -> Form:
    """Set T = c and dT = 0: returns sum_i c^i w'_i (this is h_0 or h_p)."""
    base = w.base.with_prec(w.prec)
    total = Form(base, w.degree)
    for i, f in sorted(w.prime.items()):
        coeff = c**i
        if coeff % base.modulus:
            total = total + f.scale(coeff)
    return total


def basis_indices(nvars, degree):
    return list(combinations(range(nvars), degree))
