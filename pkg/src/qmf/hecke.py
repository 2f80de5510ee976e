"""Hecke operators through the double-slash.

T_eta f = det(eta)^(k-m) sum_gamma f || gamma over a set of representatives
of Gamma \\ Gamma eta Gamma.  Because || is a right action that fixes
quasi-modular forms under Gamma, the sum does not depend on the chosen
representatives; the plain slash sum does, once depth is positive.

Everything here is concrete: level-one expressions whose atoms may be
translated by upper-triangular matrices.  The formal Gamma_0 calculus
(U_p, T_p, delta_p, E_p) lives in :mod:`qmf.formal`.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BadRepSet, NotPrime
from .fields import GF, FqPoly, RatFunc, get_field
from .hyper import hyper_assoc
from .matrix import Matrix2
from .qmod import AssocPoly, coeff_assoc, dslash_poly, slash_fn
from .scalars import CoeffScalar, ZRat
from .symbolic import Expr


def _poly(F: GF, x) -> tuple:
    if isinstance(x, FqPoly):
        return x.c
    if isinstance(x, RatFunc):
        if not x.is_poly():
            raise ValueError("expected a polynomial")
        return x.n
    return tuple(x)


@dataclass(frozen=True)
class RepSet:
    """Representatives of Gamma_0(level) \\ Gamma_0(level) eta Gamma_0(level)."""

    mats: tuple
    eta: Matrix2
    level: tuple
    kind: str  # "T" when p does not divide the level, "U" otherwise

    def __len__(self):
        return len(self.mats)

    def __iter__(self):
        return iter(self.mats)

    def left(self, s: Matrix2) -> "RepSet":
        """s * R, another representative set when s lies in Gamma_0(level)."""
        return RepSet(tuple(s * g for g in self.mats), self.eta, self.level, self.kind)

    def permuted(self, order) -> "RepSet":
        return RepSet(tuple(self.mats[i] for i in order), self.eta, self.level, self.kind)


def eta_p(F: GF, p) -> Matrix2:
    return Matrix2(F, 1, 0, 0, RatFunc.raw(F, _poly(F, p)))


def reps_gamma0(F: GF, p, level=(1,)) -> RepSet:
    """(a b; 0 d) with a, d monic, ad = p, gcd(a, level) = 1, deg b < deg d."""
    P = _poly(F, p)
    M = _poly(F, level)
    if not P or P[-1] != 1 or not F.is_irreducible(P):
        raise NotPrime(f"{P} is not a monic irreducible polynomial")
    one = RatFunc.const(F, 1)
    Pk = RatFunc.raw(F, P)
    mats = []
    if len(F.pgcd(P, M)) == 1:
        mats.append(Matrix2(F, Pk, 0, 0, one))
    for b in F.polys_below(len(P) - 1):
        mats.append(Matrix2(F, one, RatFunc.raw(F, b), 0, Pk))
    kind = "T" if len(F.pgcd(P, M)) == 1 else "U"
    return RepSet(tuple(mats), eta_p(F, P), M, kind)


def validate_reps(reps: RepSet) -> None:
    """Raise BadRepSet unless reps is a full set of distinct coset representatives."""
    F = reps.eta.F
    M = reps.level
    det_eta = reps.eta.det
    P = det_eta.n
    dp = len(P) - 1
    expected = F.q ** dp + (1 if reps.kind == "T" else 0)
    if len(reps.mats) != expected:
        raise BadRepSet(f"expected {expected} representatives, got {len(reps.mats)}")
    for g in reps.mats:
        if not g.is_integral():
            raise BadRepSet(f"{g} is not integral")
        r = g.det / det_eta
        if not r.is_const():
            raise BadRepSet(f"det {g.det} does not generate the ideal of det(eta)")
        if F.pmod(g.c.n, M):
            raise BadRepSet(f"{g} has lower-left entry not divisible by the level")
        cont = F.pgcd(F.pgcd(g.a.n, g.b.n), F.pgcd(g.c.n, g.d.n))
        if len(cont) > 1:
            raise BadRepSet(f"{g} is not primitive")
        if len(F.pgcd(g.a.n, M)) > 1 and len(M) > 1:
            raise BadRepSet(f"{g} has upper-left entry not prime to the level")
    for i, g in enumerate(reps.mats):
        gi = g.inverse()
        for h in reps.mats[i + 1:]:
            if (h * gi).in_Gamma0(RatFunc.raw(F, M)):
                raise BadRepSet("two representatives lie in the same coset")


def _det_factor(F: GF, eta: Matrix2, e: int) -> ZRat:
    return ZRat.const(eta.det ** e)


def hecke_generic(P: AssocPoly, eta: Matrix2, reps: RepSet, check: bool = True) -> AssocPoly:
    """T_eta P = det(eta)^(k-m) sum_gamma P || gamma."""
    if check:
        if reps.eta.det != eta.det:
            raise BadRepSet("representatives belong to another double coset")
        validate_reps(reps)
    F = P.F
    acc = AssocPoly(F, P.k, P.m, [])
    for g in reps:
        acc = acc + dslash_poly(P, g)
    return acc * _det_factor(F, eta, P.k - P.m)


def hecke_slash(f: Expr, k: int, m: int, eta: Matrix2, reps: RepSet) -> Expr:
    """The plain slash sum det(eta)^(k-m) sum_gamma f |_(k,m) gamma."""
    acc = Expr.zero(f.F)
    for g in reps:
        acc = acc + slash_fn(f, g, k, m)
    return acc * _det_factor(f.F, eta, k - m)


def coefficient_residuals(P: AssocPoly, eta: Matrix2, reps: RepSet) -> list[Expr]:
    """(T P)_i - det(eta)^i T(P_(f_i)) evaluated at X^0, for every i."""
    F = P.F
    TP = hecke_generic(P, eta, reps, check=False)
    out = []
    for i in range(len(P.c)):
        Ti = hecke_generic(coeff_assoc(P, i), eta, reps, check=False)
        out.append(TP.coeff(i) - Ti.coeff(0) * _det_factor(F, eta, i))
    return out


def derivative_residual(P: AssocPoly, eta: Matrix2, reps: RepSet, n: int) -> AssocPoly:
    """T(D_n f) - det(eta)^n D_n(T f), as associated polynomials."""
    lhs = hecke_generic(hyper_assoc(P, n), eta, reps, check=False)
    rhs = hyper_assoc(hecke_generic(P, eta, reps, check=False), n) * _det_factor(P.F, eta, n)
    return lhs - rhs


# ---------------------------------------------------------------------------
# the naive (slash-based) definition fails in positive depth


@dataclass(frozen=True)
class Counterexample:
    """sum over R of (-pi^-1 t/(tz+t+1)) |_(2,1) eta at z = 0, equal to value * pi^-1."""

    value: RatFunc
    brute: RatFunc
    denominator: RatFunc
    numerator: RatFunc  # value = -numerator / denominator, as in -t(t+2) M / den
    cofactor: RatFunc  # numerator / (t (t+2))

    @property
    def nonzero(self) -> bool:
        return bool(self.value)

    @property
    def shape_ok(self) -> bool:
        c = self.cofactor
        return c.is_poly() and c.degree() == 6 and c.n[-1] == 1

    def as_scalar(self) -> CoeffScalar:
        return CoeffScalar.of(self.value, -1, self.value.F)


def counterexample_reps(F: GF) -> list[Matrix2]:
    t = RatFunc.T(F)
    w = t + 2
    return [Matrix2(F, w, 0, 0, 1), Matrix2(F, 1, 0, 0, w), Matrix2(F, 1, 1, 0, w), Matrix2(F, 1, 2, 0, w)]


def naive_counterexample() -> Counterexample:
    """q = 3, level 1, p = t+2: the extra term of the slash-based definition at z = 0."""
    F = get_field(3)
    t = RatFunc.T(F)
    R = counterexample_reps(F)
    phi = ZRat.const(t) / ZRat.linear(t, t + 1)
    f = Expr.zfun(phi) * Expr.pi(F, -1) * (-1)
    total = Expr.zero(F)
    for g in R:
        total = total + slash_fn(f, g, 2, 1)
    zero = RatFunc.const(F, 0)
    value = RatFunc.const(F, 0)
    for mono, c in total.t.items():
        if mono != ((mono[0][0], -1),) or len(mono) != 1:
            raise AssertionError("unexpected term in the naive sum")
        value = value + c(zero)

    # brute force, one matrix at a time: det * d^-2 * phi(b/d) with phi(w) = t/(tw+t+1)
    brute = RatFunc.const(F, 0)
    for g in R:
        w = g.b / g.d
        brute = brute + g.det * g.d ** (-2) * (t / (t * w + t + 1))
    brute = -brute

    den = (t + 1) * (t + 2) ** 2 * (t * t + t + 2) * (t * t + 2 * t + 2)
    num = -value * den
    cof = num / (t * (t + 2))
    return Counterexample(value, brute, den, num, cof)
