"""Hyperderivatives on rational functions, associated polynomials and u-series.

``\\mathcal D_n`` is defined by f(z + eps) = sum_n (\\mathcal D_n f)(z) eps^n and
``D_n = (-pi)^(-n) \\mathcal D_n``.  On u-series the rule is

    u(z + eps) = u / (1 + u e_C(pi eps)),
    \\mathcal D_n(u^k) = sum_m C(-k, m) u^(k+m) [eps^n] e_C(pi eps)^m,

which is exact for every integer k and never lowers the precision.
"""

from __future__ import annotations

import functools

from . import binomial as bn
from .carlitz import carlitz_d
from .errors import PrecisionLoss
from .fields import GF, RatFunc
from .matrix import Matrix2
from .qmod import AssocPoly, dslash_fn, slash_fn
from .scalars import CoeffScalar, ZRat
from .series import USeries
from .symbolic import Expr, hyper, hyper_normalized, hyper_ratfn

__all__ = [
    "hyper", "hyper_normalized", "hyper_ratfn", "hyper_assoc", "hyper_series",
    "hyper_series_normalized", "eps_table", "compose_slash_formula",
    "commutation_residual", "ratfn_law_residuals", "series_law_residuals",
]


def hyper_assoc(P: AssocPoly, n: int) -> AssocPoly:
    """P_(D_n f) = sum_j [sum_h C(n+k+h-j-1, h) D_(n-h) f_(j-h)] X^j, weight k+2n, type m+n."""
    F, k, p = P.F, P.k, P.F.p
    out = []
    for j in range(len(P.c) + n):
        acc = Expr.zero(F)
        for h in range(n + 1):
            i = j - h
            if i < 0 or i >= len(P.c) or P.c[i].is_zero():
                continue
            b = bn.binom(n + k + h - j - 1, h, p)
            if b:
                acc = acc + hyper(P.c[i], n - h) * b
        out.append(acc)
    return AssocPoly(F, k + 2 * n, P.m + n, out)


# ---------------------------------------------------------------------------
# u-series


@functools.lru_cache(maxsize=None)
def eps_table(F: GF, n: int) -> tuple:
    """T[m][j] = [eps^j] e_C(pi eps)^m for 0 <= m, j <= n."""
    zero = CoeffScalar.zero(F)
    e = [zero] * (n + 1)
    i = 0
    while F.q ** i <= n:
        e[F.q ** i] = CoeffScalar.pi(F, F.q ** i) * RatFunc.raw(F, carlitz_d(F, i)).inverse()
        i += 1
    rows = [[CoeffScalar.one(F)] + [zero] * n]
    for _ in range(n):
        prev = rows[-1]
        nxt = [zero] * (n + 1)
        for a, x in enumerate(prev):
            if not x:
                continue
            for b in range(1, n + 1 - a):
                if e[b]:
                    nxt[a + b] = nxt[a + b] + x * e[b]
        rows.append(nxt)
    return tuple(tuple(r) for r in rows)


def hyper_series(S: USeries, n: int, prec: int | None = None) -> USeries:
    """\\mathcal D_n S; the output precision equals the input precision."""
    F = S.F
    if prec is not None and prec > S.prec:
        raise PrecisionLoss(f"D_{n} to u^{prec} needs input precision {prec}", S.prec)
    N = S.prec if prec is None else prec
    if n == 0:
        return S.truncate(N)
    tab = eps_table(F, n)
    p = F.p
    lo = S.val
    out: list = [CoeffScalar.zero(F)] * max(N - lo, 0)
    for i, c in enumerate(S.c):
        k = lo + i
        if k >= N:
            break
        if not c:
            continue
        for m in range(1, n + 1):
            t = tab[m][n]
            if not t or k + m >= N:
                continue
            b = bn.binom(-k, m, p)
            if b:
                out[k + m - lo] = out[k + m - lo] + c * t * b
    return USeries.raw(F, out, lo, N)


def hyper_series_normalized(S: USeries, n: int) -> USeries:
    s = CoeffScalar.pi(S.F, -n)
    return hyper_series(S, n).scale(-s if n % 2 else s)


# ---------------------------------------------------------------------------
# composition formulas


def _zfun(F: GF, x) -> Expr:
    return x if isinstance(x, Expr) else Expr.zfun(x)


def compose_slash_formula(f, g: Matrix2, n: int, variant: str = "chain", k: int = 0, m: int = 0) -> Expr:
    """Difference of the two sides of a composition identity (zero when it holds).

    variant "cocycle": D_n((cz+d)^(-m)) - C(-m, n) c^n (cz+d)^(-m-n)   (f ignored)
    variant "chain":   D_n(f o g) - sum_j C(n-1, j) (-c)^j det^(n-j) (cz+d)^(j-2n) (D_(n-j) f)(g z)
    variant "slash":   D_n(f |_(k,m) g) - sum_j C(-k-j, n-j) (c/(cz+d))^(n-j) (D_j f) |_(k+2j, m+j) g
    """
    F = g.F
    p = F.p
    j_ = g.j()
    c = ZRat.const(g.c)
    if variant == "cocycle":
        lhs = Expr.zfun(hyper_ratfn(j_ ** (-m), n))
        rhs = Expr.zfun(j_ ** (-m - n) * c ** n * bn.binom(-m, n, p))
        return lhs - rhs
    f = _zfun(F, f)
    if variant == "chain":
        lhs = hyper(f.compose(g), n)
        det = ZRat.const(g.det)
        rhs = Expr.zero(F)
        for jj in range(n + 1):
            b = bn.binom(n - 1, jj, p)
            if not b:
                continue
            s = (-c) ** jj * det ** (n - jj) * j_ ** (jj - 2 * n) * b
            rhs = rhs + hyper(f, n - jj).compose(g) * s
        return lhs - rhs
    if variant == "slash":
        lhs = hyper(slash_fn(f, g, k, m), n)
        kap = c / j_
        rhs = Expr.zero(F)
        for jj in range(n + 1):
            b = bn.binom(-k - jj, n - jj, p)
            if not b:
                continue
            rhs = rhs + slash_fn(hyper(f, jj), g, k + 2 * jj, m + jj) * (kap ** (n - jj) * b)
        return lhs - rhs
    raise ValueError(f"unknown variant {variant!r}")


def commutation_residual(P: AssocPoly, g: Matrix2, n: int) -> Expr:
    """D_n(f || g) - (D_n f) || g, computed from the coefficients of P."""
    return hyper(dslash_fn(P, g), n) - dslash_fn(hyper_assoc(P, n), g)


# ---------------------------------------------------------------------------
# law checks


def ratfn_law_residuals(f: ZRat, g: ZRat, i: int, j: int) -> dict[str, bool]:
    """Iterativity, Leibniz and Frobenius on K(z), reported as booleans."""
    F = f.F
    p = F.p
    it = hyper_ratfn(hyper_ratfn(f, j), i) == hyper_ratfn(f, i + j) * bn.binom(i + j, i, p)
    lb = ZRat.zero(F)
    for r in range(i + 1):
        lb = lb + hyper_ratfn(f, r) * hyper_ratfn(g, i - r)
    leib = hyper_ratfn(f * g, i) == lb
    frob = hyper_ratfn(f ** p, i * p) == hyper_ratfn(f, i) ** p
    return {"iterativity": it, "leibniz": leib, "frobenius": frob}


def series_law_residuals(S: USeries, R: USeries, i: int, j: int) -> dict[str, bool]:
    F = S.F
    p = F.p
    it = hyper_series(hyper_series(S, j), i).equal_to(hyper_series(S, i + j).scale(bn.binom(i + j, i, p)))
    lb = USeries.zero(F, min(S.prec, R.prec))
    for r in range(i + 1):
        lb = lb + hyper_series(S, r) * hyper_series(R, i - r)
    leib = hyper_series(S * R, i).equal_to(lb)
    frob = hyper_series(S ** p, i * p).equal_to(hyper_series(S, i) ** p)
    return {"iterativity": it, "leibniz": leib, "frobenius": frob}
