"""Deterministic property-suite runner behind ``qmf verify``.

Each suite checks one acceptance identity family and records, per identity,
how many instances passed.  The JSON report contains no timings, so the
same config always produces byte-identical output; timings go to the
human-readable summary only.
"""

from __future__ import annotations

import contextlib
import json
import random
import time
from dataclasses import dataclass, field

from . import binomial as bn
from .errors import NotInKernelImage, NvhViolation, UsageError, ZeroEigenvalue


@dataclass(frozen=True)
class SuiteConfig:
    q: int | None = None  # restricts multi-field suites to this q when given
    seed: int = 42
    cases: int | None = None  # overrides random-instance counts
    prec: int | None = None  # overrides u-series precision
    suites: tuple = ("all",)


@dataclass
class SuiteResult:
    name: str
    criterion: int
    counts: dict = field(default_factory=dict)  # identity -> [passed, total]
    counterexample: dict | None = None
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(a == b for a, b in self.counts.values()) and self.counterexample is None

    def tally(self, identity: str, ok: bool, witness=None) -> bool:
        c = self.counts.setdefault(identity, [0, 0])
        c[1] += 1
        if ok:
            c[0] += 1
        elif self.counterexample is None:
            self.counterexample = {"identity": identity, **(witness() if callable(witness) else (witness or {}))}
        return ok

    def doc(self) -> dict:
        return {"suite": self.name, "criterion": self.criterion, "passed": self.passed,
                "counts": {k: list(v) for k, v in sorted(self.counts.items())},
                "counterexample": self.counterexample}


def _qs(cfg: SuiteConfig, default) -> tuple:
    return (cfg.q,) if cfg.q is not None else tuple(default)


def _n(cfg: SuiteConfig, default: int) -> int:
    return cfg.cases if cfg.cases is not None else default


def _rng(cfg: SuiteConfig, name: str, q: int) -> random.Random:
    return random.Random(f"{cfg.seed}:{name}:{q}")


def _ser(x):
    from .serialize import to_doc
    try:
        return to_doc(x)
    except UsageError:
        return str(x)


# ---------------------------------------------------------------------------
# suites, one per criterion


def s_phipsi(cfg, r):
    from .eexp import is_identity, mat_mul, phi_psi
    for q in _qs(cfg, (2, 3, 5, 9)):
        for l in range(17):
            Phi, Psi = phi_psi(l, q)
            r.tally("phi*psi=1", is_identity(mat_mul(Phi, Psi)), {"q": q, "l": l})
            r.tally("psi*phi=1", is_identity(mat_mul(Psi, Phi)), {"q": q, "l": l})


def s_assoc(cfg, r):
    from .fields import get_field
    from .qmod import dslash_poly
    from .randgen import rand_matrix, rand_test_poly
    for q in _qs(cfg, (2, 3, 5)):
        F = get_field(q)
        rng = _rng(cfg, "assoc", q)
        for _ in range(_n(cfg, 200)):
            P, g1, g2 = rand_test_poly(rng, F), rand_matrix(rng, F), rand_matrix(rng, F)
            ok = dslash_poly(P, g1 * g2) == dslash_poly(dslash_poly(P, g1), g2)
            r.tally("P||(g g') = (P||g)||g'", ok, lambda: {"P": _ser(P), "g": _ser(g1), "g'": _ser(g2)})


def s_invariance(cfg, r):
    from .fields import get_field
    from .qmod import AssocPoly, dslash_poly
    from .randgen import rand_gl2a
    from .symbolic import Expr
    for q in _qs(cfg, (3,)):
        F = get_field(q)
        rng = _rng(cfg, "invariance", q)
        PE = AssocPoly.of_expr(Expr.sym(F, "E"), 2, 1)
        for _ in range(_n(cfg, 100)):
            g = rand_gl2a(rng, F, deg=3)
            r.tally("P_E||g = P_E", dslash_poly(PE, g) == PE, lambda: {"g": _ser(g)})


def s_keyeq(cfg, r):
    from .fields import get_field
    from .qmod import AssocPoly, key_eq_residual
    from .randgen import rand_gl2a
    from .symbolic import Expr
    for q in _qs(cfg, (3,)):
        F = get_field(q)
        rng = _rng(cfg, "keyeq", q)
        E, g, h = (Expr.sym(F, s) for s in ("E", "g", "h"))
        forms = {"E": (E, 2, 1), "E*g": (E * g, q + 1, 1), "E^2*h": (E * E * h, q + 5, 3)}
        for name, (f, k, m) in forms.items():
            P = AssocPoly.of_expr(f, k, m)
            for _ in range(_n(cfg, 50)):
                gam = rand_gl2a(rng, F, deg=2)
                res = key_eq_residual(P, gam)
                r.tally(f"key equation on {name}", res.is_zero(), lambda: {"g": _ser(gam), "residual": _ser(res)})


def s_d1e(cfg, r):
    from .carlitz import E_u
    from .fields import get_field
    from .hyper import hyper_series_normalized
    for q, N in ((3, 26), (2, 15)):
        if cfg.q is not None and q != cfg.q:
            continue
        N = cfg.prec or N
        F = get_field(q)
        E = E_u(F, N)
        lhs, rhs = hyper_series_normalized(E, 1), E * E
        r.tally("D_1 E = E^2", lhs.equal_to(rhs) and lhs.prec >= N,
                lambda: {"q": q, "prec": N, "lhs": _ser(lhs), "rhs": _ser(rhs)})


def s_dere(cfg, r):
    from .fields import get_field
    from .hyper import hyper_assoc
    from .qmod import AssocPoly
    from .symbolic import Expr, neg_pi_pow
    for q in _qs(cfg, (2, 3, 5)):
        F = get_field(q)
        PE = AssocPoly.of_expr(Expr.sym(F, "E"), 2, 1)
        B = AssocPoly(F, 0, 0, [Expr.one(F)])
        for n in range(9):
            B = B * PE
            D = hyper_assoc(PE, n) * neg_pi_pow(F, -n) - B
            ok = D.coeff(n + 1).is_zero() and D.coeff(n).is_zero()
            r.tally("top two coefficients of P_(D_n E) - P_(E^(n+1)) vanish", ok,
                    lambda: {"q": q, "n": n, "difference": _ser(D)})


def s_laws(cfg, r):
    from .carlitz import render
    from .fields import get_field
    from .hyper import (commutation_residual, compose_slash_formula, ratfn_law_residuals,
                        series_law_residuals)
    from .randgen import rand_k, rand_matrix, rand_test_poly, rand_zrat
    from .symbolic import Expr
    for q in _qs(cfg, (3,)):
        F = get_field(q)
        rng = _rng(cfg, "laws", q)
        # rational functions: every (i, j) with i + j <= 10
        for i in range(11):
            for j in range(11 - i):
                f, g = rand_zrat(rng, F), rand_zrat(rng, F)
                for law, ok in ratfn_law_residuals(f, g, i, j).items():
                    r.tally(f"ratfn {law}", ok, lambda: {"i": i, "j": j, "f": _ser(f), "g": _ser(g)})
        # u-series at precision 40: every (i, j) with i + j <= 12
        N = cfg.prec or 40
        gens = [render(Expr.sym(F, s), N) for s in ("g", "h", "E")]
        for i in range(13):
            for j in range(13 - i):
                a, b = rng.sample(gens, 2)
                S = a.scale(rand_k(rng, F, nonzero=True)) + b
                R = b * a.scale(rand_k(rng, F, nonzero=True))
                for law, ok in series_law_residuals(S, R, i, j).items():
                    r.tally(f"series {law}", ok, lambda: {"i": i, "j": j, "S": _ser(S), "R": _ser(R)})
        for v in ("cocycle", "chain", "slash"):
            for _ in range(_n(cfg, 50)):
                f, g, n = rand_zrat(rng, F), rand_matrix(rng, F), rng.randint(0, 4)
                k, m = rng.randint(0, 5), rng.randint(-2, 3)
                res = compose_slash_formula(f, g, n, v, k=k, m=m)
                r.tally(f"composition ({v})", res.is_zero(),
                        lambda: {"f": _ser(f), "g": _ser(g), "n": n, "k": k, "m": m})
        for _ in range(_n(cfg, 50)):
            P, g, n = rand_test_poly(rng, F), rand_matrix(rng, F), rng.randint(0, 4)
            res = commutation_residual(P, g, n)
            r.tally("D_n commutes with ||", res.is_zero(), lambda: {"P": _ser(P), "g": _ser(g), "n": n})


def s_hecke(cfg, r):
    from . import hecke as hk
    from .fields import RatFunc, get_field
    from .matrix import Matrix2
    from .qmod import AssocPoly
    from .symbolic import Expr
    F = get_field(3)
    t = RatFunc.T(F)
    s = Matrix2(F, 1, 1, t, t + 1)
    E = AssocPoly.of_expr(Expr.sym(F, "E"), 2, 1)
    for P in ((0, 1), (1, 1), (2, 1)):
        R = hk.reps_gamma0(F, P)
        eta = hk.eta_p(F, P)
        a, b = hk.hecke_generic(E, eta, R), hk.hecke_generic(E, eta, R.left(s))
        r.tally("T(E) independent of representatives", a == b, lambda: {"p": list(P), "R": _ser(a), "sR": _ser(b)})
        r.tally("coefficientwise Hecke", all(x.is_zero() for x in hk.coefficient_residuals(E, eta, R)),
                {"p": list(P)})
        r.tally("Hecke commutes with D_2", all(x.is_zero() for x in hk.derivative_residual(E, eta, R, 2).c),
                {"p": list(P)})
        na, nb = hk.hecke_slash(E.c[0], 2, 1, eta, R), hk.hecke_slash(E.c[0], 2, 1, eta, R.left(s))
        r.tally("naive slash sum depends on representatives", na != nb, {"p": list(P)})
    c = hk.naive_counterexample()
    r.tally("counterexample nonzero", c.nonzero, {"value": _ser(c)})
    r.tally("counterexample equals brute force", c.value == c.brute, {"value": _ser(c)})
    r.tally("counterexample numerator t(t+2) * monic sextic", c.shape_ok, {"value": _ser(c)})


def s_upen(cfg, r):
    from .fields import get_field
    from .formal import FormalHecke
    for q in _qs(cfg, (2, 3, 5)):
        F = get_field(q)
        B = FormalHecke(F, (1, 1))
        X = B.form("X", 4, 1)
        for n in range(11):
            a, b = B.up_en_recursive(X, n), B.up_en_closed(X, n)
            ok = len(a) == len(b) and all(x == y for x, y in zip(a, b))
            r.tally("U_p(X E^n): recursion = closed form", ok,
                    lambda: {"q": q, "n": n, "recursive": [_ser(x) for x in a], "closed": [_ser(x) for x in b]})


def s_kernel(cfg, r):
    from .eexp import EExpansion
    from .fields import get_field
    from .formal import FormalHecke, e_equal
    for q in _qs(cfg, (3,)):
        F = get_field(q)
        B = FormalHecke(F, (1, 1) if q != 3 else (2, 1))
        rng = _rng(cfg, "kernel", q)
        for _ in range(_n(cfg, 50)):
            g = B.random_e(rng, 10, 1, rng.randint(0, 3))
            d = B.delta_e(g)
            f = EExpansion(F, d.k, d.m, [c * B.pk(d.m) for c in d.c], check=False)
            u = B.up_e(f)
            r.tally("U_p delta_p = 0", all(c.is_zero() for c in u.c), lambda: {"g": _ser(g), "U": _ser(u)})
            try:
                back = B.ker_up_reconstruct(f)
                ok = e_equal(back, g)
            except NotInKernelImage:
                back, ok = None, False
            r.tally("reconstruct(p^m delta_p f) = f", ok, lambda: {"g": _ser(g), "back": back and _ser(back)})


def s_structure(cfg, r):
    from .fields import get_field
    from . import structure as st
    q = cfg.q or 3
    F = get_field(q)
    rng = _rng(cfg, "structure", q)
    N = cfg.prec or 26
    ws = [w for w in st.nvh_weights(q, 2, 14)]
    for _ in range(_n(cfg, 50)):
        k, m, l = rng.choice(ws)
        f = st.random_qmod(rng, F, k, m, l)
        try:
            d = st.decompose(f)
        except NvhViolation as e:
            r.tally("decompose", False, {"f": _ser(f), "error": str(e)})
            continue
        r.tally("recombine exactly", d.recombine() == f.to_expr(), lambda: {"f": _ser(f), "dec": _ser(d)})
        r.tally("u-series round trip", st.roundtrip_by_series(f, d, N), lambda: {"f": _ser(f), "dec": _ser(d)})
    if q == 3:
        f = st.random_qmod(rng, F, 8, 1, 1)
        try:
            st.decompose(f)
            raised = None
        except NvhViolation as e:
            raised = e
        r.tally("(q=3, k=8, l=1, m=1) raises NvhViolation", raised is not None and raised.index == 1,
                {"f": _ser(f)})


def s_serre(cfg, r):
    from .fields import get_field
    from .structure import serre_completion
    for q in _qs(cfg, (3,)):
        F = get_field(q)
        N = cfg.prec or 26
        co, res = serre_completion(F, N)
        r.tally("D_1 g - (q-1) E g in span M_(q+1,1)", co is not None and res.is_zero(),
                lambda: {"q": q, "residual": _ser(res)})


def s_eigen(cfg, r):
    from .fields import RatFunc, get_field
    from .formal import FormalHecke
    from .qmod import AssocPoly
    for q in _qs(cfg, (3,)):
        F = get_field(q)
        B = FormalHecke(F, (1, 1) if q != 3 else (2, 1))
        rng = _rng(cfg, "eigen", q)
        for trial in range(_n(cfg, 10)):
            lam = RatFunc(F, [rng.randrange(q) for _ in range(2)] + [1])
            k, m = 8, 0
            Y0, Y1 = B.form(f"Y0_{trial}", k, m), B.form(f"Y1_{trial}", k - 2, m - 1)
            Y2 = B.form(f"Y2_{trial}", k - 4, m - 2)
            B.declare_T_eigen(Y0, lam)
            B.declare_T_eigen(Y1, lam / B.P)
            B.declare_T_eigen(Y2, lam / (B.P * B.P))
            P = AssocPoly(F, k, m, [Y0, Y1, Y2])
            c1, c2 = B.eigencheck(P, lam), B.is_eigen(P, lam)
            r.tally("eigenform: coefficientwise and whole agree (true)", c1 and c2,
                    {"lambda": _ser(lam), "coef": c1, "whole": c2})
            Z = B.form(f"Z_{trial}", k - 2, m - 1)
            B.declare_T_eigen(Z, lam)
            P2 = AssocPoly(F, k, m, [Y0, Z])
            c1, c2 = B.eigencheck(P2, lam), B.is_eigen(P2, lam)
            r.tally("non-eigenform: both criteria reject", not c1 and not c2,
                    {"lambda": _ser(lam), "coef": c1, "whole": c2})
            W = B.form(f"W_{trial}", 4, 1)
            B.declare_T_eigen(W, lam)
            try:
                g = B.lift_eigen(W, 4, lam)
                ok = B.U(g) == g * lam
            except (AssertionError, ZeroEigenvalue):
                ok = False
            r.tally("lift_eigen gives a U_p eigenvector", ok, {"lambda": _ser(lam)})
        try:
            B.lift_eigen(B.form("Zero", 4, 1), 4, RatFunc.const(F, 0))
            raised = False
        except ZeroEigenvalue:
            raised = True
        r.tally("lift_eigen rejects eigenvalue 0", raised, {})


SUITES = {
    "phipsi": (1, s_phipsi),
    "assoc": (2, s_assoc),
    "invariance": (3, s_invariance),
    "keyeq": (4, s_keyeq),
    "d1e": (5, s_d1e),
    "dere": (6, s_dere),
    "laws": (7, s_laws),
    "hecke": (8, s_hecke),
    "upen": (9, s_upen),
    "kernel": (10, s_kernel),
    "structure": (11, s_structure),
    "serre": (12, s_serre),
    "eigen": (13, s_eigen),
}


def select(names) -> list[str]:
    out = []
    for n in names:
        for part in str(n).split(","):
            part = part.strip()
            if part == "all":
                out.extend(SUITES)
            elif part in SUITES:
                out.append(part)
            elif part.isdigit() and any(c == int(part) for c, _ in SUITES.values()):
                out.extend(k for k, (c, _) in SUITES.items() if c == int(part))
            else:
                raise UsageError(f"unknown suite {part!r}; choose from all, {', '.join(SUITES)}")
    return list(dict.fromkeys(out))


def run_one(name: str, cfg: SuiteConfig) -> SuiteResult:
    crit, fn = SUITES[name]
    r = SuiteResult(name, crit)
    t = time.perf_counter()
    try:
        fn(cfg, r)
    except Exception as e:  # an exception is a failure with its own witness
        r.tally("no exception", False, {"error": f"{type(e).__name__}: {e}"})
    r.seconds = time.perf_counter() - t
    return r


def run_suite(cfg: SuiteConfig) -> tuple[dict, list[SuiteResult]]:
    """Run the selected suites; the report dict is deterministic for a given config."""
    from .serialize import VERSION
    names = select(cfg.suites)
    results = [run_one(n, cfg) for n in names]
    report = {
        "kind": "Report", "version": VERSION, "field": {"q": cfg.q or 3, "modulus": None},
        "suite": ",".join(names), "seed": cfg.seed, "passed": all(r.passed for r in results),
        "results": [r.doc() for r in results],
    }
    first = next((r for r in results if not r.passed), None)
    report["first_counterexample"] = None if first is None else {"suite": first.name, **first.counterexample}
    return report, results


def human(results: list[SuiteResult]) -> str:
    lines = []
    for r in results:
        lines.append(f"[{'PASS' if r.passed else 'FAIL'}] criterion {r.criterion:2d} {r.name} ({r.seconds:.2f}s)")
        for k, (a, b) in sorted(r.counts.items()):
            lines.append(f"    {a}/{b}  {k}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# mutation check: a corrupted binomial must be caught


@contextlib.contextmanager
def mutated_binomial():
    """Swap in a binomial that is wrong whenever 0 < k < n; restores on exit."""
    orig = bn.binom

    def bad(n, k, p):
        v = orig(n, k, p)
        return (v + 1) % p if 0 < k < n else v

    bn.binom = bad
    try:
        yield
    finally:
        bn.binom = orig


def dumps_report(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=1)
