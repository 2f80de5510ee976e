"""Sums of hyperderivatives of modular forms.

At level one with NVH in force, every quasi-modular form of weight k, type m
and depth l is

    sum_(i<=l) D_i f_(i,D)                         (k > 2l)
    alpha D_(l-1) E + sum_(i<l) D_i f_(i,D)        (k = 2l)

with f_(i,D) modular of weight k-2i and type m-i.  :func:`decompose` peels
the top E-coefficient with the unit C(k-i-1, i); each step is an exact
subtraction of E-expansions, so recombination is exact as symbol algebra and
the u-series oracle provides the independent check.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import binomial as bn
from .eexp import EExpansion, e_expansion_of, from_e
from .errors import NvhViolation, OutOfRangeWeight
from .fields import GF, RatFunc
from .qmod import AssocPoly
from .scalars import CoeffScalar
from .series import USeries
from .symbolic import Expr, hyper_normalized, neg_pi_pow


@dataclass(frozen=True)
class DerDecomposition:
    """f = alpha D_(l-1)E + sum_i D_i parts[i] (alpha only when k = 2l).

    ``null`` lists (index, expression) pairs left in E-degree ``index``
    because the weight space there is zero; such expressions vanish as
    functions and are reported so callers can check that.
    """

    k: int
    m: int
    l: int
    parts: tuple
    alpha: Expr | None = None
    null: tuple = field(default=())

    def recombine(self) -> Expr:
        F = self.parts[0].F if self.parts else self.alpha.F
        acc = Expr.zero(F)
        for i, x in enumerate(self.parts):
            if not x.is_zero():
                acc = acc + hyper_normalized(x, i)
        if self.alpha is not None and not self.alpha.is_zero():
            acc = acc + self.alpha * Expr.sym(F, "E", self.l - 1)
        return acc


def _first_failure(rep):
    bad = rep.failing()
    return bad[0].index if bad else None


def decompose(f: EExpansion, q: int | None = None) -> DerDecomposition:
    """Split f into hyperderivatives of modular forms (level one)."""
    F = f.F
    q = F.q if q is None else q
    k, m, l = f.k, f.m, f.depth
    zero = Expr.zero(F)
    if l <= 0:
        return DerDecomposition(k, m, max(l, 0), (f.coeff(0),), None)
    if k < 2 * l:
        raise OutOfRangeWeight(f"k={k} < 2l={2 * l}")
    rep = bn.nvh_check(k, l, m, q)
    if not rep.holds:
        i = _first_failure(rep)
        raise NvhViolation(f"NVH fails at index {i} for (q={q}, k={k}, l={l}, m={m})", i, rep)
    cur = f
    alpha = None
    if k == 2 * l:
        alpha = cur.coeff(l)
        if not alpha.is_zero():
            DE = e_expansion_of(Expr.sym(F, "E", l - 1), k, l)
            cur = cur - DE.scale(alpha)
        top = l - 1
    else:
        top = l
    parts = [zero] * (top + 1)
    null = []
    p = F.p
    for i in range(top, 0, -1):
        c = cur.coeff(i)
        if c.is_zero():
            continue
        b = bn.binom(k - i - 1, i, p)
        if not b:
            # NVH holds, so M_(k-2i, m-i) = 0 and c vanishes as a function
            null.append((i, c))
            continue
        fi = c * pow(b, -1, p)
        parts[i] = fi
        Di = e_expansion_of(hyper_normalized(fi, i), k, m)
        cur = cur - Di
    parts[0] = cur.coeff(0)
    for i in range(1, len(cur.c)):
        if not cur.coeff(i).is_zero() and all(j != i for j, _ in null):
            null.append((i, cur.coeff(i)))
    return DerDecomposition(k, m, l, tuple(parts), alpha, tuple(sorted(null, key=lambda t: t[0])))


def der_to_assoc(dec: DerDecomposition, F: GF | None = None) -> AssocPoly:
    """Associated polynomial of alpha D_(l-1)E + sum D_i f_(i,D) by the closed formulas."""
    if F is None:
        F = dec.parts[0].F if dec.parts else dec.alpha.F
    k, l, p = dec.k, dec.l, F.p
    parts = dec.parts

    def part(h):
        return parts[h] if 0 <= h < len(parts) else Expr.zero(F)

    if l == 0:
        return AssocPoly(F, k, dec.m, [part(0)])
    out = []
    if k > 2 * l:
        for j in range(l + 1):
            acc = Expr.zero(F)
            for h in range(j, l + 1):
                b = bn.binom(k - h - 1, j, p)
                if b and not part(h).is_zero():
                    acc = acc + hyper_normalized(part(h), h - j) * b
            out.append(acc * neg_pi_pow(F, -j))
    else:
        alpha = dec.alpha if dec.alpha is not None else Expr.zero(F)
        for j in range(l + 1):
            if j == l:
                out.append(alpha * neg_pi_pow(F, -l))
                continue
            acc = alpha * Expr.sym(F, "E", l - j - 1) * bn.binom(l, j, p)
            for h in range(j, l):
                b = bn.binom(2 * l - h - 1, j, p)
                if b and not part(h).is_zero():
                    acc = acc + hyper_normalized(part(h), h - j) * b
            out.append(acc * neg_pi_pow(F, -j))
    return AssocPoly(F, k, dec.m, out)


def product_criterion(k: int, l: int, p: int) -> bool:
    """prod_(j=1..l) C(k-j-1, j) != 0 mod p, a sufficient condition for NVH."""
    return all(bn.binom(k - j - 1, j, p) for j in range(1, l + 1))


def plenty_of_cases(q: int, l: int, k_max: int) -> list[tuple[int, int, bool]]:
    """(k, m, NVH holds) for 2l <= k <= k_max."""
    return bn.plenty_of_cases(q, l, k_max)


# ---------------------------------------------------------------------------
# level-one modular monomials, random elements, linear algebra on series


def modular_basis(F: GF, k: int, m: int) -> list[Expr]:
    g, h = Expr.sym(F, "g"), Expr.sym(F, "h")
    return [g ** a * h ** b for a, b in bn.level1_monomials(k, m, F.q)]


def random_modular(rng: random.Random, F: GF, k: int, m: int, nonzero: bool = False) -> Expr:
    basis = modular_basis(F, k, m)
    while True:
        acc = Expr.zero(F)
        for x in basis:
            c = rng.randrange(F.q)
            if c:
                deg = rng.randint(0, 2)
                coeffs = [rng.randrange(F.q) for _ in range(deg)] + [c]
                acc = acc + x * RatFunc(F, coeffs)
        if not nonzero or not acc.is_zero() or not basis:
            return acc


def random_qmod(rng: random.Random, F: GF, k: int, m: int, l: int) -> EExpansion:
    """Random E-expansion with depth exactly l (top coefficient nonzero)."""
    coeffs = [random_modular(rng, F, k - 2 * i, m - i, nonzero=(i == l)) for i in range(l + 1)]
    return EExpansion(F, k, m, coeffs)


def nvh_weights(q: int, l_max: int, k_max: int) -> list[tuple[int, int, int]]:
    """(k, m, l) with NVH holding and M_(k-2l, m-l) != 0, so depth l is attained."""
    out = []
    for l in range(0, l_max + 1):
        for k in range(max(2 * l, 1), k_max + 1):
            for m in range(q - 1):
                if bn.dim_level1(k - 2 * l, m - l, q) == 0:
                    continue
                if l and not bn.nvh_check(k, l, m, q).holds:
                    continue
                out.append((k, m, l))
    return out


def _flatten(s: USeries, lo: int, hi: int) -> dict:
    out = {}
    for e in range(lo, hi):
        for pe, c in s.coeff(e).t.items():
            out[(e, pe)] = c
    return out


def solve_in_span(target: USeries, basis: list[USeries], prec: int | None = None):
    """Find K-coefficients x with target = sum x_i basis_i to precision ``prec``.

    Returns (coefficients, residual series).  Coefficients are None when the
    system is inconsistent; the residual is then target minus the best
    partial combination (zero iff consistent).
    """
    F = target.F
    P = prec if prec is not None else min([target.prec] + [b.prec for b in basis])
    lo = min([target.val] + [b.val for b in basis] + [0])
    cols = [_flatten(b, lo, P) for b in basis]
    rhs = _flatten(target, lo, P)
    keys = sorted(set(rhs).union(*[set(c) for c in cols]) if cols else set(rhs))
    zero = RatFunc.const(F, 0)
    rows = [[c.get(key, zero) for c in cols] + [rhs.get(key, zero)] for key in keys]
    n = len(basis)
    piv_cols = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][col].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                fct = rows[i][col]
                rows[i] = [a - fct * b for a, b in zip(rows[i], rows[r])]
        piv_cols.append(col)
        r += 1
    x = [zero] * n
    for i, col in enumerate(piv_cols):
        x[col] = rows[i][n]
    resid = target
    for xi, b in zip(x, basis):
        if xi:
            resid = resid - b.scale(CoeffScalar.of(xi, 0, F))
    resid = resid.truncate(P)
    consistent = all(not rows[i][n] for i in range(r, len(rows)))
    return (x if consistent else None), resid


def serre_completion(F: GF, N: int):
    """D_1 g - ((q-1) mod p) E g against the rendered monomials of M_(q+1,1).

    Returns (coefficients, residual); the residual is exactly zero when the
    completion is modular to precision N.
    """
    from .carlitz import render

    q = F.q
    g, E = Expr.sym(F, "g"), Expr.sym(F, "E")
    target = render(hyper_normalized(g, 1) - E * g * ((q - 1) % F.p), N)
    basis = [render(x, N) for x in modular_basis(F, q + 1, 1)]
    return solve_in_span(target, basis, N)


def roundtrip_by_series(f: EExpansion, dec: DerDecomposition, N: int) -> bool:
    """Compare u-expansions: each X-coefficient of der_to_assoc(dec) against from_e(f),
    and sum_i D_i f_(i,D) (series hyperderivatives) against f; null parts must render to 0."""
    from .carlitz import render
    from .hyper import hyper_series_normalized

    F = f.F
    P1 = der_to_assoc(dec, F)
    P2 = from_e(f)
    n = max(len(P1.c), len(P2.c))
    for j in range(n):
        if not render(P1.coeff(j), N).equal_to(render(P2.coeff(j), N)):
            return False
    acc = USeries.zero(F, N)
    for i, x in enumerate(dec.parts):
        if not x.is_zero():
            acc = acc + hyper_series_normalized(render(x, N), i)
    if dec.alpha is not None and not dec.alpha.is_zero():
        acc = acc + render(dec.alpha * Expr.sym(F, "E", dec.l - 1), N)
    if not acc.equal_to(render(f.to_expr(), N)):
        return False
    return all(render(c, N).is_zero() for _, c in dec.null)


def resolve_modular(x: Expr, k: int, m: int, N: int = 26) -> Expr | None:
    """Rewrite x in the g^a h^b basis of M_(k,m) through the series oracle.

    Returns None when x is not in the span to precision N.  Exact as long as
    N exceeds the Sturm-type bound of the weight; callers pick N.
    """
    from .carlitz import render

    F = x.F
    basis = modular_basis(F, k, m)
    target = render(x, N)
    if not basis:
        return Expr.zero(F) if target.is_zero() else None
    co, res = solve_in_span(target, [render(b, N) for b in basis], N)
    if co is None or not res.is_zero():
        return None
    acc = Expr.zero(F)
    for c, b in zip(co, basis):
        if c:
            acc = acc + b * c
    return acc


def resolve_parts(dec: DerDecomposition, N: int = 26) -> DerDecomposition:
    """dec with every part expressed in g and h where possible."""
    parts = []
    for i, x in enumerate(dec.parts):
        if x.is_zero():
            parts.append(x)
            continue
        y = resolve_modular(x, dec.k - 2 * i, dec.m - i, N)
        parts.append(x if y is None else y)
    return DerDecomposition(dec.k, dec.m, dec.l, tuple(parts), dec.alpha, dec.null)
