"""Verification suites and the job/report model behind the command line.

A job names a suite, the prime p, the published precision N, a seed and a
case count; everything randomized is drawn from streams derived from the
seed.  Randomized cases go to ``cases`` (exactly ``job.cases`` of them);
named fixed examples go to ``fixtures``.  A case passes or fails; any
exception it raises is recorded against its id and counts as a failure.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import cohomology as coh
from .comparison import (
    ComparisonMap,
    FrobLift,
    coordinate_map,
    functoriality_check,
    overconvergence_profile,
    project_slot0,
)
from .errors import IncompatibleLifts, JobParseError, NotDivisible
from .forms import Form, RingMap, exterior_derivative, parse_form, pullback
from .homotopy import build_strong_homotopy, chain_homotopy, check_homotopy_identity
from .poly import LaurentRing
from .randgen import (
    rand_congruent_pair,
    rand_form,
    rand_frobenius_lift,
    rand_poly,
    rand_ring,
    rand_tform,
    rand_witt,
    rng_for,
)
from .scalars import is_prime, valuation
from .witt import (
    WittVec,
    frobenius,
    ghost,
    ghost_invert,
    reduce_mod_p,
    verschiebung,
    witt_add,
    witt_mul,
    witt_mul_int,
)

SCHEMA = 1
SUITES = ("witt-laws", "homotopy", "comparison", "functoriality", "cohomology", "overconvergence")


# -- jobs -------------------------------------------------------------------


@dataclass
class Job:
    suite: str
    p: int = 2
    N: int = 3
    seed: int = 0
    cases: int = 20
    payload: dict = field(default_factory=dict)

    def to_json(self):
        out = {"suite": self.suite, "p": self.p, "N": self.N, "seed": self.seed, "cases": self.cases}
        out.update(self.payload)
        return out

    def derive(self, suite):
        return Job(suite, self.p, self.N, self.seed, self.cases, dict(self.payload))


def parse_job(data, *, tool: str | None = None) -> Job:
    """Validate a job document.  ``tool`` names a single-purpose subcommand,
    in which case the ``suite`` key is not required."""
    if isinstance(data, (str, bytes)):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise JobParseError(f"job is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise JobParseError("job must be a JSON object")
    data = dict(data)
    suite = data.pop("suite", None)
    if tool is not None:
        suite = tool
    elif suite not in SUITES + ("all",):
        raise JobParseError(f"unknown suite {suite!r}; expected one of {', '.join(SUITES + ('all',))}")
    data.pop("schema", None)
    kw = {"cases": 0} if tool is not None else {}
    for key in ("p", "N", "seed", "cases"):
        if key in data:
            val = data.pop(key)
            if isinstance(val, bool) or not isinstance(val, int):
                raise JobParseError(f"{key} must be an integer, got {val!r}")
            kw[key] = val
    job = Job(suite, payload=data, **kw)
    if not is_prime(job.p):
        raise JobParseError(f"p = {job.p} is not prime")
    if job.N < 1:
        raise JobParseError("N must be >= 1")
    if job.cases < 0:
        raise JobParseError("cases must be >= 0")
    if job.p**job.N >= 2**62:
        raise JobParseError("p^N too large")
    return job


# -- reports ----------------------------------------------------------------


@dataclass
class CaseResult:
    id: str
    check: str
    ok: bool
    precision: int | None = None
    details: dict = field(default_factory=dict)

    def to_json(self):
        out = {"id": self.id, "check": self.check, "status": "pass" if self.ok else "fail"}
        if self.precision is not None:
            out["precision"] = self.precision
        if self.details:
            out["details"] = self.details
        return out


@dataclass
class Report:
    suite: str
    job: dict
    cases: list = field(default_factory=list)
    fixtures: list = field(default_factory=list)
    tables: dict = field(default_factory=dict)
    children: list = field(default_factory=list)
    timing: float | None = None

    @property
    def failed(self):
        own = sum(1 for c in self.cases + self.fixtures if not c.ok)
        return own + sum(ch.failed for ch in self.children)

    @property
    def total(self):
        return len(self.cases) + len(self.fixtures) + sum(ch.total for ch in self.children)

    @property
    def ok(self):
        return self.failed == 0

    def to_json(self, *, timing=False):
        out = {
            "schema": SCHEMA,
            "suite": self.suite,
            "job": self.job,
            "summary": {"total": self.total, "passed": self.total - self.failed, "failed": self.failed},
            "status": "pass" if self.ok else "fail",
        }
        if self.children:
            out["suites"] = [ch.to_json(timing=timing) for ch in self.children]
        else:
            out["cases"] = [c.to_json() for c in self.cases]
            out["fixtures"] = [c.to_json() for c in self.fixtures]
            if self.tables:
                out["tables"] = self.tables
        if timing and self.timing is not None:
            out["timing_seconds"] = round(self.timing, 3)
        return out


def _run(results, case_id, check, fn):
    """Run one check; exceptions become failures carrying their message."""
    try:
        ok, prec, details = fn()
    except Exception as exc:  # surfaced verbatim in the report
        ok, prec, details = False, None, {"error": f"{type(exc).__name__}: {exc}"}
    keep = details.pop("keep", False)
    results.append(CaseResult(case_id, check, bool(ok), prec, details if keep or not ok else {}))
    return ok


def _expect_error(exc_type, fn):
    def run():
        try:
            fn()
        except exc_type as exc:
            return True, None, {"keep": True, "raised": f"{type(exc).__name__}: {exc}"}
        return False, None, {"error": f"expected {exc_type.__name__}"}

    return run


def _witt_eq(u: WittVec, v: WittVec):
    return u.n == v.n and all(a.equal_at(b, min(a.prec, b.prec)) for a, b in zip(u, v))


def _ring1(rng, p, N, name="x"):
    return LaurentRing(p, N, (name,), (rng.random() < 0.5,))


# -- witt-laws --------------------------------------------------------------


def suite_witt_laws(job: Job, report: Report):
    p, N = job.p, job.N
    fixed_n = job.payload.get("n")
    for k in range(job.cases):
        rng = rng_for(job.seed, "witt-laws", k)
        n = fixed_n or rng.randint(1, 4)
        R = _ring1(rng, p, N)
        u, v, w = (rand_witt(rng, R, n) for _ in range(3))

        def case(u=u, v=v, w=w, n=n, R=R, rng=rng):
            checks = {}
            s, m = witt_add(u, v), witt_mul(u, v)
            gu, gv, gs, gm = ghost(u), ghost(v), ghost(s), ghost(m)
            checks["ghost_add"] = all(gs[i].equal_at(gu[i] + gv[i], gs[i].prec) for i in range(n))
            checks["ghost_mul"] = all(gm[i].equal_at(gu[i] * gv[i], gm[i].prec) for i in range(n))
            checks["round_trip"] = _witt_eq(ghost_invert(gu), u)
            if n >= 2:
                checks["FV_eq_p"] = _witt_eq(frobenius(verschiebung(u, extend=True)), witt_mul_int(u, p))
                short = WittVec(u.comps[:-1])
                lhs = witt_mul(verschiebung(short, extend=True), w)
                rhs = verschiebung(witt_mul(short, frobenius(w)), extend=True)
                checks["V_projection"] = _witt_eq(lhs, rhs)
            ub, vb = reduce_mod_p(u), reduce_mod_p(v)
            checks["reduction_hom"] = _witt_eq(reduce_mod_p(s), witt_add(ub, vb)) and _witt_eq(
                reduce_mod_p(m), witt_mul(ub, vb)
            )
            # two different lifts of the same F_p vectors give the same F_p result
            up = WittVec(c.lift(N) + rand_poly(rng, R, terms=2).times_p(1).reduce(N) for c in ub)
            checks["lift_independent"] = _witt_eq(reduce_mod_p(witt_mul(up, v)), witt_mul(ub, vb))
            ok = all(checks.values())
            details = {} if ok else {
                "failed": sorted(c for c, v_ in checks.items() if not v_),
                "u": u.to_json(),
                "v": v.to_json(),
                "w": w.to_json(),
            }
            return ok, min(u.ledger + v.ledger), details

        _run(report.cases, f"witt-laws-{k:04d}", f"ring laws n={n}", case)

    fx = report.fixtures
    R = LaurentRing(p, N, ("X0", "X1", "Y0", "Y1"))
    X0, X1, Y0, Y1 = R.gens()

    def s1():
        got = witt_add(WittVec([X0, X1]), WittVec([Y0, Y1]))[1]
        # the carry term needs one extra digit before dividing by p
        A0, B0 = X0.lift(N + 1), Y0.lift(N + 1)
        want = X1 + Y1 + (A0**p + B0**p - (A0 + B0) ** p).divexact_p(1)
        return got == want, got.prec, {"keep": True, "S1": str(got)}

    _run(fx, "witt-S1", "universal sum polynomial S1", s1)
    if N >= 2:
        Rz = LaurentRing(p, N, ("x",))

        def one_plus_one():
            got = witt_add(WittVec.one(Rz, 2), WittVec.one(Rz, 2))
            want = WittVec([Rz.const(2), Rz.const((2 - 2**p) // p)])
            return _witt_eq(got, want), min(got.ledger), {"keep": True, "sum": got.to_json()}

        _run(fx, "witt-1+1", "(1,0)+(1,0) by ghost oracle", one_plus_one)
    Rx = LaurentRing(p, N, ("x", "y"))
    a, b = Rx.gens()

    def teich():
        got = witt_mul(WittVec.teichmuller(a, 3), WittVec.teichmuller(b, 3))
        return _witt_eq(got, WittVec.teichmuller(a * b, 3)), min(got.ledger), {}

    _run(fx, "witt-teichmuller", "[a][b] = [ab]", teich)


# -- homotopy ---------------------------------------------------------------


def suite_homotopy(job: Job, report: Report):
    """Maps are built at working precision N+1 so identities are asserted mod p^N."""
    p, N = job.p, job.N
    W = N + 1
    for k in range(job.cases):
        rng = rng_for(job.seed, "homotopy", k)

        def case(rng=rng):
            base = rand_ring(rng, p, N)
            deg = rng.randint(0, base.nvars + 1)
            tw = rand_tform(rng, base, deg)
            ident = check_homotopy_identity(tw, strict=False)
            src, tgt = rand_ring(rng, p, W), rand_ring(rng, p, W)
            psi1, psi2 = rand_congruent_pair(rng, src, tgt)
            cert = build_strong_homotopy(psi1, psi2)
            bad = []
            for d in range(src.nvars + 1):
                w = rand_form(rng, src, d, terms=2, poly_degree=2)
                res = chain_homotopy(cert, w, strict=False)
                if not res.verified:
                    bad.append({"form": str(w), "lhs": str(res.lhs), "rhs": str(res.rhs)})
            ok = ident.ok and not bad
            details = {}
            if not ok:
                details = {"psi1": cert.to_json()["psi1"], "psi2": cert.to_json()["psi2"], "forms": bad}
                if not ident.ok:
                    details["identity"] = ident.to_json()
            return ok, cert.prec, details

        _run(report.cases, f"homotopy-{k:04d}", "h_p - h_0 = dL + Ld; psi2* - psi1* = dH + Hd", case)

    fx = report.fixtures
    R = LaurentRing(p, W, ("x",))
    x = R.gen(0)

    def worked():
        cert = build_strong_homotopy(RingMap(R, R, [x**p]), RingMap(R, R, [x**p + x.times_p(1)]))
        res = chain_homotopy(cert, Form.dx(R, 0))
        want = Form.function(x.times_p(1).reduce(cert.prec))
        ok = res.verified and res.primitive.equal_at(want, cert.prec)
        return ok, cert.prec, {"keep": True, "H(dx)": str(res.primitive), "certificate": cert.to_json()}

    _run(fx, "homotopy-worked", "x->x^p vs x->x^p+px on dx", worked)

    def degenerate():
        phi = RingMap(R, R, [x**2 + x])
        cert = build_strong_homotopy(phi, phi)
        w = Form.function(x**3) + Form.function(x)
        ok = all(
            chain_homotopy(cert, f).primitive.is_zero() for f in (w, Form.dx(R, 0), exterior_derivative(w))
        )
        return ok, cert.prec, {}

    _run(fx, "homotopy-degenerate", "psi1 = psi2 gives H = 0", degenerate)

    for j, pair in enumerate(job.payload.get("pairs", [])):

        def explicit(pair=pair):
            names = tuple(pair.get("variables", ["x"]))
            ring = LaurentRing(p, W, names, tuple(pair.get("invertible", [False] * len(names))))
            psi1 = RingMap.from_strings(ring, ring, pair["psi1"])
            psi2 = RingMap.from_strings(ring, ring, pair["psi2"])
            cert = build_strong_homotopy(psi1, psi2)
            out = []
            ok = True
            for text in pair.get("forms", ["d" + names[0]]):
                res = chain_homotopy(cert, parse_form(ring, text), strict=False)
                ok = ok and res.verified
                out.append({"form": text, "H": str(res.primitive), "verified": res.verified})
            return ok, cert.prec, {"keep": True, "results": out}

        _run(fx, f"homotopy-pair-{j}", "explicit pair", explicit)


# -- comparison -------------------------------------------------------------


def suite_comparison(job: Job, report: Report):
    p, N = job.p, job.N
    fixed_n = job.payload.get("n")
    for k in range(job.cases):
        rng = rng_for(job.seed, "comparison", k)

        def case(rng=rng):
            n = fixed_n or rng.randint(1, 4)
            R = _ring1(rng, p, N + n - 1)
            cm = ComparisonMap(FrobLift(rand_frobenius_lift(rng, R)), n, N)
            a = rand_poly(rng, R, terms=3)
            b = rand_poly(rng, R, terms=3)
            ta, tb = cm.t_f(a), cm.t_f(b)
            add_ok = _witt_eq(cm.t_f(a + b), witt_add(ta, tb))
            mul_ok = _witt_eq(cm.t_f(a * b), witt_mul(ta, tb))
            ok = add_ok and mul_ok
            details = {} if ok else {
                "f": cm.lift.map.to_json()["images"],
                "a": str(a),
                "b": str(b),
                "additive": add_ok,
                "multiplicative": mul_ok,
            }
            return ok, 1, details

        _run(report.cases, f"comparison-{k:04d}", "t_f is a ring homomorphism", case)

    fx = report.fixtures
    n = fixed_n or 3
    R = LaurentRing(p, N + n - 1, ("x",))
    x = R.gen(0)
    cm = ComparisonMap(FrobLift.standard(R), n, N)

    def teich():
        s = cm.s_f(x)
        ok = s[0] == x.reduce(s[0].prec) and all(c.is_zero() for c in s.comps[1:])
        return ok, min(s.ledger), {"keep": True, "s_f(x)": s.to_json()}

    _run(fx, "comparison-teichmuller", "s_f(x) for f: x -> x^p", teich)

    def not_frobenius():
        bad = ComparisonMap(FrobLift(RingMap(R, R, [x**p + x]), check=False), n, N)
        bad.s_f(x)

    _run(fx, "comparison-not-frobenius", "non-Frobenius f", _expect_error(NotDivisible, not_frobenius))

    def lift_independence():
        f1 = FrobLift.standard(R)
        f2 = FrobLift(RingMap(R, R, [x**p + (x**2).times_p(1)]))
        c1, c2 = ComparisonMap(f1, n, N), ComparisonMap(f2, n, N)
        slot0 = c1.t_f(x)[0] == c2.t_f(x)[0]
        cert = build_strong_homotopy(coordinate_map(c1), coordinate_map(c2))
        forms = [Form.dx(R, 0), Form.function(x**2), Form.dx(R, 0).scale(x**3)]
        verified = [chain_homotopy(cert, w, strict=False).verified for w in forms]
        proj = project_slot0(pullback(coordinate_map(c1), forms[2]), R, n) == forms[2].reduce(1)
        ok = slot0 and all(verified) and proj
        return ok, cert.prec, {"keep": True, "slot0_equal": slot0, "verified": verified}

    _run(fx, "comparison-lift-independence", "two lifts induce homotopic form maps", lift_independence)


# -- functoriality ----------------------------------------------------------


def suite_functoriality(job: Job, report: Report):
    p, N = job.p, job.N
    n = job.payload.get("n", 3)
    R = LaurentRing(p, N + n - 1, ("x",))
    x = R.gen(0)
    cm = ComparisonMap(FrobLift.standard(R), n, N)
    M = cm.M
    for k in range(job.cases):
        rng = rng_for(job.seed, "functoriality", k)

        def case(rng=rng):
            e = rng.randint(1, 3)
            phi = RingMap(R, R, [x**e])
            a = rand_poly(rng, R, terms=3, degree=p)
            (_, ok), = functoriality_check(cm, cm, phi, [a], strict=False)
            details = {} if ok else {"phi": f"x -> x^{e}", "a": str(a)}
            return ok, M - n + 1, details

        _run(report.cases, f"functoriality-{k:04d}", "W(phi) s_f = s_f phi", case)

    fx = report.fixtures
    tests = [x, x**2 + R.const(1), (x**3).times_p(1) + x]

    def square():
        res = functoriality_check(cm, cm, RingMap(R, R, [x**2]), tests, strict=False)
        return all(ok for _, ok in res), M - n + 1, {"keep": True, "tests": [str(a) for a, _ in res]}

    _run(fx, "functoriality-square", "phi: x -> x^2", square)

    def incompatible():
        functoriality_check(cm, cm, RingMap(R, R, [x + R.const(1)]), tests)

    _run(fx, "functoriality-incompatible", "phi: x -> x+1", _expect_error(IncompatibleLifts, incompatible))


# -- overconvergence --------------------------------------------------------


def suite_overconvergence(job: Job, report: Report):
    p, N = job.p, job.N
    n = job.payload.get("n", 4)
    rows = []
    for k in range(job.cases):
        rng = rng_for(job.seed, "overconvergence", k)

        def case(rng=rng):
            R = LaurentRing(p, N + n - 1, ("x",))
            lift = FrobLift(rand_frobenius_lift(rng, R, degree=rng.randint(0, p)))
            a = rand_poly(rng, R, terms=4, degree=p**2, nonzero=True)
            prof = overconvergence_profile(ComparisonMap(lift, n, N), a)
            rows.append({"a": str(a), "profile": [list(t) for t in prof]})
            return True, 1, {}

        _run(report.cases, f"overconvergence-{k:04d}", "deg slot_i <= deg(a) p^i", case)
    report.tables["profiles"] = rows


# -- cohomology -------------------------------------------------------------


def complex_from_job(job: Job) -> coh.GradedComplex:
    pl = job.payload
    window = pl.get("window")
    if "variables" in pl:
        names = tuple(pl["variables"])
        inv = tuple(pl.get("invertible", pl.get("invertible_flags", [False] * len(names))))
        ring = LaurentRing(job.p, job.N, names, inv)
        return coh.GradedComplex(ring, job.p**3 if window is None else window)
    return coh.GradedComplex.standard(pl.get("geometry", "A1"), job.p, job.N, window)


def suite_cohomology(job: Job, report: Report):
    p, N = job.p, job.N
    cx = complex_from_job(job)
    ring = cx.ring
    rep = coh.cohomology(cx)
    report.tables["cohomology"] = rep.to_json()
    if ring.nvars == 1:
        report.tables["H1_orders"] = [
            [m[0], rep.order(1, m)] for m in cx.multidegrees() if cx.basis(1, m)
        ]

    for k in range(job.cases):
        rng = rng_for(job.seed, "cohomology", k)

        def case(rng=rng):
            deg = rng.randint(0, ring.nvars - 1)
            m = rng.choice(cx.multidegrees())
            basis = cx.basis(deg, m)
            if not basis:
                return True, N, {}
            eta = cx.form(deg, m, [rng.randrange(ring.modulus) for _ in basis])
            w = exterior_derivative(eta)
            res = coh.exactness_witness(cx, w)
            ok = res.exact and exterior_derivative(res.primitive).equal_at(w, N)
            return ok, N, {} if ok else {"form": str(w), "result": res.to_json()}

        _run(report.cases, f"cohomology-{k:04d}", "d(eta) is exact with a verified primitive", case)

    fx = report.fixtures
    if ring.nvars == 1:

        def closed_form():
            bad = []
            for m in cx.multidegrees():
                if not cx.basis(1, m):
                    continue
                mm = m[0]
                if mm == 0:
                    want = N if ring.invertible[0] else 0
                else:
                    want = min(valuation(mm, p), N)
                if rep.block(1, m).order_exponent != want or len(rep.block(1, m).exponents) > 1:
                    bad.append({"multidegree": mm, "exponents": rep.block(1, m).exponents, "expected": want})
            return not bad, N, {"mismatches": bad} if bad else {}

        _run(fx, "cohomology-closed-form", "H^1 block order p^min(v_p(m), N)", closed_form)
    if len(cx.multidegrees()) <= 400:

        def assembled():
            whole = coh.assembled_cohomology(cx)
            ok = all(whole[i] == rep.exponent_multiset(i) for i in whole)
            return ok, N, {}

        _run(fx, "cohomology-assembled", "blockwise = assembled complex", assembled)
    for j, text in enumerate(job.payload.get("tests", [])):

        def witness(text=text):
            res = coh.exactness_witness(cx, parse_form(ring, text))
            ok = exterior_derivative(res.primitive).equal_at(res.form.scale(p**res.order_exponent), N)
            return ok, N, {"keep": True, **res.to_json()}

        _run(fx, f"cohomology-witness-{j}", "exactness witness", witness)
    lifts = job.payload.get("lifts")
    if lifts:

        def independence():
            phi1 = RingMap.from_strings(ring, ring, lifts["phi1"])
            phi2 = RingMap.from_strings(ring, ring, lifts["phi2"])
            tw = lifts.get("target_window", 3 * max(hi for _, hi in cx.ranges))
            rep_li = coh.lift_independence_on_cohomology(phi1, phi2, cx, coh.GradedComplex(ring, tw))
            return rep_li.ok, rep_li.prec, {"keep": True, **rep_li.to_json()}

        _run(fx, "cohomology-lift-independence", "phi1^* = phi2^* on cohomology", independence)


# -- single-purpose tools ----------------------------------------------------


def _job_ring(job: Job, prec: int, names_key="variables"):
    pl = job.payload
    names = tuple(pl.get(names_key) or pl.get("generators") or ["x"])
    inv = pl.get("invertible", pl.get("invertible_flags"))
    return LaurentRing(job.p, prec, names, None if inv is None else tuple(inv))


def tool_homotopy_check(job: Job, report: Report):
    """Certificate for an explicit pair, built at N+1 and verified mod p^N."""
    pl = job.payload
    ring = _job_ring(job, job.N + 1, "generators")

    def certify():
        psi1 = RingMap.from_strings(ring, ring, pl["psi1"])
        psi2 = RingMap.from_strings(ring, ring, pl["psi2"])
        cert = build_strong_homotopy(psi1, psi2)
        rows = []
        for text in pl.get("forms", ["d" + ring.names[0]]):
            res = chain_homotopy(cert, parse_form(ring, text), strict=False)
            rows.append({"form": text, **res.to_json()})
        ok = all(r["verified"] for r in rows)
        return ok, cert.prec, {"keep": True, "certificate": cert.to_json(), "forms": rows}

    _run(report.fixtures, "homotopy-check", "psi2^* - psi1^* = dH + Hd", certify)


def _lift_from_job(job: Job, ring: LaurentRing):
    images = job.payload.get("f")
    if images is None:
        return FrobLift.standard(ring)
    return FrobLift(RingMap.from_strings(ring, ring, images), check=job.payload.get("check_lift", True))


def tool_tf_map(job: Job, report: Report):
    n = job.payload.get("n", 3)
    ring = _job_ring(job, job.N + n - 1)
    for j, text in enumerate(job.payload.get("inputs", [ring.names[0]])):

        def one(text=text):
            cm = ComparisonMap(_lift_from_job(job, ring), n, job.N)
            a = ring.parse(text)
            s = cm.s_f(a)
            t = reduce_mod_p(s)
            return True, min(s.ledger), {"keep": True, "a": text, "s_f": s.to_json(), "t_f": t.to_json()}

        _run(report.fixtures, f"tf-map-{j}", "s_f and t_f", one)


def tool_overconv_profile(job: Job, report: Report):
    n = job.payload.get("n", 4)
    ring = _job_ring(job, job.N + n - 1)
    for j, text in enumerate(job.payload.get("inputs", [ring.names[0]])):

        def one(text=text):
            cm = ComparisonMap(_lift_from_job(job, ring), n, job.N)
            a = ring.parse(text)
            prof = overconvergence_profile(cm, a)
            t = cm.t_f(a)
            rows = [{"slot": i, "degree": d, "bound": b} for i, d, b in prof]
            return True, 1, {"keep": True, "a": text, "profile": rows, "t_f": t.to_json()}

        _run(report.fixtures, f"overconv-profile-{j}", "deg slot_i <= deg(a) p^i", one)


RUNNERS = {
    "witt-laws": suite_witt_laws,
    "homotopy": suite_homotopy,
    "comparison": suite_comparison,
    "functoriality": suite_functoriality,
    "cohomology": suite_cohomology,
    "overconvergence": suite_overconvergence,
    "homotopy-check": tool_homotopy_check,
    "tf-map": tool_tf_map,
    "overconv-profile": tool_overconv_profile,
}


def run(job: Job, *, clock=None) -> Report:
    """Run ``job``; ``clock`` (e.g. ``time.perf_counter``) enables timing."""
    start = clock() if clock else None
    if job.suite == "all":
        report = Report("all", job.to_json())
        for name in SUITES:
            report.children.append(run(job.derive(name), clock=clock))
    else:
        report = Report(job.suite, job.to_json())
        RUNNERS[job.suite](job, report)
    if clock:
        report.timing = clock() - start
    return report
