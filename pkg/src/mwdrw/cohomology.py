"""Integral de Rham cohomology of windowed Laurent-polynomial complexes.

A monomial form x^e dx_S has multidegree e + 1_S (dx_j weighs like x_j).  The
exterior derivative preserves multidegree, so the complex is the direct sum
of finite blocks, one per multidegree m, and each block has the basis
{x^(m - 1_S) dx_S : |S| = i, exponents allowed}.  Cohomology is computed
blockwise from Smith normal forms over Z/p^N.

Block cohomology: with U B V = diag(p^e_k) for the outgoing boundary B, the
kernel of B is spanned by V p^(s_k) e_k with s_k = N - e_k (s_k = 0 past the
rank).  In those coordinates the incoming image plus the relations
p^(N - s_k) e_k present H as a quotient of a free module, and a second Smith
form reads off its elementary divisors and class representatives.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product

from .errors import IdentityViolation, NotClosed, VariableMismatch, WindowOverflow
from .forms import Form, RingMap, exterior_derivative, pullback
from .homotopy import build_strong_homotopy, chain_homotopy
from .linalg import matvec, smith_normal_form, solve_min_multiple
from .poly import LaurentRing, LPoly
from .scalars import valuation


class GradedComplex:
    """The de Rham complex of ``ring`` restricted to multidegrees in a window.

    ``window`` is either an int D (range [-D, D] for invertible variables,
    [0, D] otherwise) or an explicit list of ``(lo, hi)`` pairs.
    """

    def __init__(self, ring: LaurentRing, window):
        self.ring = ring
        if isinstance(window, int):
            self.ranges = tuple((-window if inv else 0, window) for inv in ring.invertible)
        else:
            self.ranges = tuple((int(lo), int(hi)) for lo, hi in window)
            if len(self.ranges) != ring.nvars:
                raise VariableMismatch("one window range per variable")
        for (lo, _), inv, name in zip(self.ranges, ring.invertible, ring.names):
            if lo < 0 and not inv:
                raise ValueError(f"negative multidegrees for non-invertible {name}")
        self._bases = {}

    @classmethod
    def standard(cls, geometry: str, p: int, N: int, window: int | None = None):
        """``A1`` (variable T), ``Gm`` (invertible x), ``A2`` (x, y) or ``Gm2``."""
        table = {
            "A1": (("T",), (False,)),
            "Gm": (("x",), (True,)),
            "A2": (("x", "y"), (False, False)),
            "Gm2": (("x", "y"), (True, True)),
        }
        if geometry not in table:
            raise ValueError(f"unknown geometry {geometry!r}; expected one of {sorted(table)}")
        names, inv = table[geometry]
        ring = LaurentRing(p, N, names, inv)
        return cls(ring, p**3 if window is None else window)

    @property
    def p(self):
        return self.ring.p

    @property
    def N(self):
        return self.ring.prec

    def with_prec(self, prec: int) -> GradedComplex:
        return GradedComplex(self.ring.with_prec(prec), list(self.ranges))

    def contains(self, m) -> bool:
        return all(lo <= a <= hi for a, (lo, hi) in zip(m, self.ranges))

    def multidegrees(self):
        return list(product(*(range(lo, hi + 1) for lo, hi in self.ranges)))

    def basis(self, i: int, m):
        """Ordered basis of degree-i forms in block m as ``(S, exponent)`` pairs."""
        key = (i, tuple(m))
        if key not in self._bases:
            k = self.ring.nvars
            out = []
            if 0 <= i <= k:
                for S in combinations(range(k), i):
                    e = list(m)
                    for j in S:
                        e[j] -= 1
                    if all(x >= 0 or inv for x, inv in zip(e, self.ring.invertible)):
                        out.append((S, tuple(e)))
            self._bases[key] = out
        return self._bases[key]

    def form(self, i: int, m, vec) -> Form:
        terms = {}
        for (S, e), c in zip(self.basis(i, m), vec):
            if c:
                terms.setdefault(S, {})[e] = c
        return Form(self.ring, i, {S: LPoly(self.ring, t) for S, t in terms.items()})

    def vector(self, w: Form, m):
        """Coordinates of the block-m part of ``w`` in :meth:`basis`."""
        mod = self.ring.modulus
        vec = []
        for S, e in self.basis(w.degree, m):
            c = w.terms.get(S)
            vec.append(c.terms.get(e, 0) % mod if c is not None else 0)
        return vec


def boundary_matrix(cx: GradedComplex, i: int, m):
    """Matrix of d: degree i -> degree i+1 on block m (rows: target basis)."""
    m = tuple(m)
    if not cx.contains(m):
        raise WindowOverflow(f"block {m} lies outside the window {cx.ranges}")
    src = cx.basis(i, m)
    tgt = cx.basis(i + 1, m)
    row = {b: r for r, b in enumerate(tgt)}
    mod = cx.ring.modulus
    M = [[0] * len(src) for _ in tgt]
    for c, (S, e) in enumerate(src):
        for j, ej in enumerate(e):
            if ej == 0 or j in S:
                continue
            # d(x^e dx_S) contains e_j x^(e - 1_j) dx_j ^ dx_S; move dx_j into place
            sign = -1 if sum(1 for s in S if s < j) % 2 else 1
            T = tuple(sorted(S + (j,)))
            e2 = e[:j] + (ej - 1,) + e[j + 1 :]
            r = row.get((T, e2))
            if r is None:
                raise WindowOverflow(f"d leaves block {m}")
            M[r][c] = (M[r][c] + sign * ej) % mod
    return M


def _columns(A):
    return [list(col) for col in zip(*A)] if A and A[0] else []


def _length(exponents, N):
    return sum(N - e for e in exponents)


def homology(A, B, n: int, p: int, N: int):
    """ker(B) / im(A) for A: * -> (Z/p^N)^n and B: (Z/p^N)^n -> *.

    Returns ``[(f, x)]``: one cyclic summand Z/p^f per entry (f ascending,
    f = N free) with representative cycle ``x``.
    """
    mod = p**N
    if n == 0:
        return []
    if B:
        sb = smith_normal_form(B, p, N)
        eb = sb.exponents
        s = [N - eb[k] if k < sb.rank else 0 for k in range(n)]
        V, Vinv = sb.V, sb.Vinv
    else:
        s = [0] * n
        V = [[int(r == c) for c in range(n)] for r in range(n)]
        Vinv = V
    keep = [k for k in range(n) if s[k] < N]
    if not keep:
        return []
    rels = []
    for a in _columns(A):
        y = matvec(Vinv, a, mod)
        z = []
        for k in range(n):
            if k in keep:
                if y[k] % p ** s[k]:
                    raise IdentityViolation("d o d != 0 on a block")
                z.append(y[k] // p ** s[k])
            elif y[k]:
                raise IdentityViolation("image leaves the kernel")
        rels.append(z)
    for pos, k in enumerate(keep):
        if s[k] > 0:
            col = [0] * len(keep)
            col[pos] = p ** (N - s[k])
            rels.append(col)
    if rels:
        R = [[rels[c][r] % mod for c in range(len(rels))] for r in range(len(keep))]
        sr = smith_normal_form(R, p, N)
        er = sr.exponents
        Uinv = sr.Uinv
        fs = [er[k] if k < sr.rank else N for k in range(len(keep))]
    else:
        fs = [N] * len(keep)
        Uinv = [[int(r == c) for c in range(len(keep))] for r in range(len(keep))]
    out = []
    for k, f in enumerate(fs):
        if f == 0:
            continue
        z = [Uinv[r][k] for r in range(len(keep))]
        y = [0] * n
        for pos, kk in enumerate(keep):
            y[kk] = z[pos] * p ** s[kk] % mod
        out.append((f, _normalize(matvec(V, y, mod), p, N)))
    # rank-nullity in lengths: length H = length ker B - length im A
    ker_len = sum(N - s[k] for k in keep)
    im_len = 0
    if A and A[0]:
        sa = smith_normal_form(A, p, N)
        im_len = _length(sa.exponents, N)
    if sum(f for f, _ in out) != ker_len - im_len:
        raise IdentityViolation("block cohomology fails the length count")
    return out


def _normalize(x, p, N):
    """Scale by a unit so the first nonzero entry is a power of p."""
    mod = p**N
    for c in x:
        if c % mod:
            v = valuation(c, p, N)
            u = pow(c // p**v, -1, mod)
            return [a * u % mod for a in x]
    return x


@dataclass
class BlockCohomology:
    degree: int
    multidegree: tuple
    exponents: list
    generators: list

    @property
    def order_exponent(self) -> int:
        return sum(self.exponents)

    def to_json(self, p, N):
        return {
            "degree": self.degree,
            "multidegree": list(self.multidegree),
            "elementary_divisors": [f"{p}^{f}" for f in self.exponents],
            "exponents": list(self.exponents),
            "free_rank": sum(1 for f in self.exponents if f == N),
            "generators": [str(g) for g in self.generators],
        }


@dataclass
class CohomReport:
    p: int
    N: int
    names: tuple
    invertible: tuple
    ranges: tuple
    blocks: dict = field(default_factory=dict)

    def block(self, i: int, m) -> BlockCohomology:
        return self.blocks.get((i, tuple(m))) or BlockCohomology(i, tuple(m), [], [])

    def order(self, i: int, m) -> int:
        return self.p ** self.block(i, m).order_exponent

    def degree(self, i: int):
        return [b for (d, _), b in sorted(self.blocks.items()) if d == i]

    def exponent_multiset(self, i: int):
        return sorted(f for b in self.degree(i) for f in b.exponents)

    def to_json(self):
        return {
            "p": self.p,
            "N": self.N,
            "variables": list(self.names),
            "invertible": list(self.invertible),
            "window": [list(r) for r in self.ranges],
            "blocks": [b.to_json(self.p, self.N) for _, b in sorted(self.blocks.items())],
        }


def cohomology(cx: GradedComplex) -> CohomReport:
    """Blockwise H^i for every multidegree in the window (trivial blocks omitted)."""
    p, N, k = cx.p, cx.N, cx.ring.nvars
    report = CohomReport(p, N, cx.ring.names, cx.ring.invertible, cx.ranges)
    for m in cx.multidegrees():
        for i in range(k + 1):
            n = len(cx.basis(i, m))
            if n == 0:
                continue
            A = boundary_matrix(cx, i - 1, m) if i > 0 else [[] for _ in range(n)]
            B = boundary_matrix(cx, i, m) if i < k else []
            B = B if B and B[0] else []
            summands = homology(A, B, n, p, N)
            if summands:
                report.blocks[(i, m)] = BlockCohomology(
                    i, m, [f for f, _ in summands], [cx.form(i, m, x) for _, x in summands]
                )
    return report


def assembled_cohomology(cx: GradedComplex):
    """Exponent multisets per degree from the whole windowed complex at once.

    Columns come from :func:`exterior_derivative` on monomial forms, not from
    :func:`boundary_matrix`; used to cross-check the block splitting.
    """
    p, N, k = cx.p, cx.N, cx.ring.nvars
    mods = cx.multidegrees()
    bases = [[(m, b) for m in mods for b in cx.basis(i, m)] for i in range(k + 1)]
    index = [{b: r for r, b in enumerate(basis)} for basis in bases]
    mats = []
    for i in range(k):
        M = [[0] * len(bases[i]) for _ in bases[i + 1]]
        for c, (m, (S, e)) in enumerate(bases[i]):
            w = Form(cx.ring, i, {S: cx.ring.monomial(e)})
            for m2, part in exterior_derivative(w).multidegree_parts().items():
                for T, coeff in part.terms.items():
                    for e2, a in coeff.terms.items():
                        M[index[i + 1][(m2, (T, e2))]][c] = a
        mats.append(M)
    out = {}
    for i in range(k + 1):
        n = len(bases[i])
        A = mats[i - 1] if i > 0 else [[] for _ in range(n)]
        B = mats[i] if i < k else []
        B = B if B and B[0] else []
        out[i] = sorted(f for f, _ in homology(A, B, n, p, N))
    return out


# -- exactness --------------------------------------------------------------


@dataclass
class ExactnessResult:
    """``exact`` iff e = 0; otherwise the class has order p^e.  Always d(primitive) = p^e w."""

    p: int
    order_exponent: int
    primitive: Form
    form: Form

    @property
    def exact(self) -> bool:
        return self.order_exponent == 0

    @property
    def order(self) -> int:
        return self.p**self.order_exponent

    def to_json(self):
        return {
            "form": str(self.form),
            "status": "exact" if self.exact else "not_exact",
            "order": f"{self.p}^{self.order_exponent}",
            "primitive": str(self.primitive),
        }


def _blocks_of(cx, w: Form):
    parts = w.multidegree_parts()
    for m in parts:
        if not cx.contains(m):
            raise WindowOverflow(f"form {w} has multidegree {list(m)} outside the window {cx.ranges}")
    return parts


def exactness_witness(cx: GradedComplex, w: Form) -> ExactnessResult:
    """Least e with p^e w exact, and eta with d eta = p^e w (block linear solve)."""
    if not w.ring.same_variables(cx.ring):
        raise VariableMismatch(f"{w.ring} vs {cx.ring}")
    w = w.reduce(cx.N) if w.ring.prec >= cx.N else w
    ring = cx.ring.with_prec(w.ring.prec)
    cx = cx if ring == cx.ring else cx.with_prec(ring.prec)
    p, N = cx.p, cx.N
    if not exterior_derivative(w).is_zero():
        raise NotClosed(f"d({w}) = {exterior_derivative(w)}")
    i = w.degree
    solved = []
    for m, part in _blocks_of(cx, w).items():
        b = cx.vector(part, m)
        if i == 0:
            e = max(N - valuation(c, p, N) for c in b)
            solved.append((m, e, None))
            continue
        A = boundary_matrix(cx, i - 1, m)
        e, x = solve_min_multiple(A, b, p, N)
        solved.append((m, e, x))
    top = max((e for _, e, _ in solved), default=0)
    eta = Form(cx.ring, i - 1)
    for m, e, x in solved:
        if x is not None:
            eta = eta + cx.form(i - 1, m, x).scale(p ** (top - e))
    lhs = exterior_derivative(eta)
    rhs = w.scale(p**top)
    if not lhs.equal_at(rhs, N):
        raise IdentityViolation("d(primitive) != p^e w", {"primitive": eta.to_json(), "form": w.to_json()})
    return ExactnessResult(p, top, eta, w)


# -- lift independence --------------------------------------------------------


@dataclass
class ClassCheck:
    degree: int
    multidegree: tuple
    generator: Form
    difference: Form
    primitive: Form
    homotopy_ok: bool
    solve_ok: bool

    @property
    def ok(self):
        return self.homotopy_ok and self.solve_ok

    def to_json(self):
        return {
            "degree": self.degree,
            "multidegree": list(self.multidegree),
            "class": str(self.generator),
            "difference": str(self.difference),
            "primitive": str(self.primitive),
            "homotopy_ok": self.homotopy_ok,
            "solve_ok": self.solve_ok,
        }


@dataclass
class LiftIndependenceReport:
    prec: int
    t_window: int
    checks: list

    @property
    def ok(self):
        return all(c.ok for c in self.checks)

    def to_json(self):
        return {
            "precision": self.prec,
            "t_window": self.t_window,
            "ok": self.ok,
            "classes": [c.to_json() for c in self.checks],
        }


def lift_independence_on_cohomology(
    phi1: RingMap, phi2: RingMap, cx_src: GradedComplex, cx_tgt: GradedComplex
) -> LiftIndependenceReport:
    """Show phi1^* and phi2^* agree on every class of ``cx_src`` at precision N-1.

    For each class representative c the homotopy primitive H(c) must satisfy
    d H(c) = phi2^* c - phi1^* c; separately the difference must be exact by a
    block linear solve in ``cx_tgt``.
    """
    cert = build_strong_homotopy(phi1, phi2)
    prec = cert.prec
    tgt = cx_tgt.with_prec(prec)
    checks = []
    for (i, m), block in sorted(cohomology(cx_src).blocks.items()):
        for c in block.generators:
            for phi in (phi1, phi2):
                _blocks_of(cx_tgt, pullback(phi, c))
            res = chain_homotopy(cert, c, strict=False)
            diff = res.lhs
            h_ok = res.verified and exterior_derivative(res.primitive).equal_at(diff, prec)
            if i == 0:
                s_ok = diff.is_zero()
            else:
                s_ok = exactness_witness(tgt, diff).exact
            checks.append(ClassCheck(i, m, c, diff, res.primitive, h_ok, s_ok))
    return LiftIndependenceReport(prec, cert.t_window, checks)


def format_block_table(report: CohomReport) -> str:
    lines = [f"p={report.p} N={report.N} variables={','.join(report.names)}"]
    for (i, m), b in sorted(report.blocks.items()):
        divs = " ".join(f"{report.p}^{f}" for f in b.exponents)
        lines.append(f"H^{i} {list(m)}: {divs}  [{'; '.join(str(g) for g in b.generators)}]")
    return "\n".join(lines)


__all__ = [
    "GradedComplex",
    "boundary_matrix",
    "homology",
    "BlockCohomology",
    "CohomReport",
    "cohomology",
    "assembled_cohomology",
    "ExactnessResult",
    "exactness_witness",
    "ClassCheck",
    "LiftIndependenceReport",
    "lift_independence_on_cohomology",
    "format_block_table",
]
