"""Formal Gamma_0 backend for U_p, T_p, delta_p and E_p.

Modular forms of level m or mp are opaque atoms.  The only facts used are
the ones the Hecke calculus needs:

* delta_p is a ring map, delta_p(E) = p^-1 (E - E_p), and it fixes pi;
* U_p is K-linear, kills every product of delta_p-images, and on E^n acts by
  U_p(f E^n) = sum_h C(n, h) p^h U_p(f E_p^(n-h)) E^h;
* T_p = p^k delta_p + U_p on forms of weight k and level m;
* optional declarations: T_p-eigenvalues or U_p-images of named forms.

Everything else stays symbolic, so identities are checked as exact symbol
algebra in the :class:`~qmf.symbolic.Expr` ring.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import binomial as bn
from .eexp import EExpansion, from_e, to_e
from .errors import NotInKernelImage, UnsupportedBackend, ZeroEigenvalue
from .fields import GF, RatFunc
from .qmod import AssocPoly
from .scalars import ZRat
from .symbolic import PI, Atom, Expr, PiAtom, Sym


@dataclass(frozen=True)
class Form(Atom):
    """An opaque (quasi-)modular form of weight k and type m."""

    name: str
    k: int
    m: int
    level: str = "m"  # "m" or "mp"

    def sort_key(self):
        return (3, self.name, self.k, self.m, self.level)

    def weight(self, q):
        return self.k

    def mtype(self, q):
        return self.m

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class StabE(Atom):
    """E_p = E - p delta_p E, weight 2, type 1, level p."""

    def sort_key(self):
        return (2,)

    def weight(self, q):
        return 2

    def mtype(self, q):
        return 1

    def __str__(self):
        return "Ep"


@dataclass(frozen=True)
class Dp(Atom):
    """delta_p applied to an atom of level m."""

    inner: Atom

    def sort_key(self):
        return (4, self.inner.sort_key())

    def weight(self, q):
        return self.inner.weight(q)

    def mtype(self, q):
        return self.inner.mtype(q)

    def __str__(self):
        return f"dp({self.inner})"


@dataclass(frozen=True)
class Up(Atom):
    """U_p of a monomial that admits no further simplification."""

    mono: tuple

    def sort_key(self):
        return (5, tuple((a.sort_key(), e) for a, e in self.mono))

    def weight(self, q):
        return sum(a.weight(q) * e for a, e in self.mono)

    def mtype(self, q):
        return sum(a.mtype(q) * e for a, e in self.mono)

    def __str__(self):
        body = "*".join(str(a) if e == 1 else f"{a}^{e}" for a, e in self.mono)
        return f"Up({body})"


def _is_E(a) -> bool:
    return isinstance(a, Sym) and a.base == "E" and a.order == 0 and a.shift is None


class FormalHecke:
    """The formal Hecke calculus at a prime p (monic irreducible) and level m."""

    def __init__(self, F: GF, p: tuple, level: tuple = (1,)):
        self.F = F
        self.p = tuple(p)
        self.level = tuple(level)
        self.P = RatFunc.raw(F, self.p)
        self.det = self.P  # det of diag(1, p)
        self._declared_U: dict = {}
        self._declared_T: dict = {}

    # -- constructors ------------------------------------------------------
    def form(self, name: str, k: int, m: int, level: str = "m") -> Expr:
        return Expr.atom(self.F, Form(name, k, m, level))

    def E(self) -> Expr:
        return Expr.sym(self.F, "E")

    def Ep(self) -> Expr:
        return Expr.atom(self.F, StabE())

    def pk(self, e: int) -> ZRat:
        return ZRat.const(self.P ** e)

    def declare_T_eigen(self, f: Expr, lam) -> None:
        """T_p f = lam f for a single form atom f."""
        a = self._single_form(f)
        lam = RatFunc.const(self.F, lam) if isinstance(lam, int) else lam
        self._declared_T[a] = lam
        self._declared_U.pop(a, None)

    def declare_U(self, f: Expr, image: Expr) -> None:
        a = self._single_form(f)
        self._declared_U[a] = image
        self._declared_T.pop(a, None)

    @staticmethod
    def _single_form(f: Expr) -> Form:
        if len(f.t) != 1:
            raise ValueError("expected a single form")
        (mono, c), = f.t.items()
        if len(mono) != 1 or mono[0][1] != 1 or not isinstance(mono[0][0], Form) or not c.is_one():
            raise ValueError("expected a single form")
        return mono[0][0]

    # -- delta_p -----------------------------------------------------------
    def delta(self, x: Expr) -> Expr:
        F = self.F
        inv = self.pk(-1)

        def img(a):
            if isinstance(a, PiAtom):
                return None
            if _is_E(a):
                return (self.E() - self.Ep()) * inv
            if isinstance(a, Sym):
                raise UnsupportedBackend(f"delta_p of {a} is not modelled")
            return Expr.atom(F, Dp(a))

        return x.map_atoms(img)

    def undelta(self, x: Expr) -> Expr | None:
        """y with delta_p(y) = x when x is visibly a delta_p-image, else None."""
        out = {}
        for mono, c in x.t.items():
            new = []
            for a, e in mono:
                if isinstance(a, PiAtom):
                    new.append((a, e))
                elif isinstance(a, Dp):
                    new.append((a.inner, e))
                else:
                    return None
            key = tuple(sorted(new, key=lambda t: t[0].sort_key()))
            out[key] = out[key] + c if key in out else c
        return Expr(self.F, out)

    # -- U_p ---------------------------------------------------------------
    def _u_core(self, mono: tuple) -> Expr:
        """U_p of a monomial without E (pi factors already removed)."""
        F = self.F
        if all(isinstance(a, Dp) for a, _ in mono):
            return Expr.zero(F)  # U_p kills delta_p-images, constants included
        if len(mono) == 1 and mono[0][1] == 1 and isinstance(mono[0][0], Form):
            a = mono[0][0]
            if a in self._declared_U:
                return self._declared_U[a]
            if a in self._declared_T:
                f = Expr.atom(F, a)
                return f * ZRat.const(self._declared_T[a]) - self.delta(f) * self.pk(a.k)
        return Expr.atom(F, Up(mono))

    def U(self, x: Expr) -> Expr:
        F = self.F
        out = Expr.zero(F)
        for mono, c in x.t.items():
            pis = tuple((a, e) for a, e in mono if isinstance(a, PiAtom))
            n = sum(e for a, e in mono if _is_E(a))
            rest = tuple((a, e) for a, e in mono if not isinstance(a, PiAtom) and not _is_E(a))
            scal = Expr.raw(F, {pis: c})
            if n == 0:
                out = out + self._u_core(rest) * scal
                continue
            p = F.p
            for h in range(n + 1):
                b = bn.binom(n, h, p)
                if not b:
                    continue
                inner = Expr.raw(F, {rest: ZRat.one(F)}) * self.Ep() ** (n - h)
                out = out + self.U(inner) * self.E() ** h * self.pk(h) * b * scal
        return out

    def T(self, x: Expr, k: int | None = None) -> Expr:
        """T_p = p^k delta_p + U_p on a form of weight k (read from x when omitted)."""
        if k is None:
            ks = {b[0] for b in x.bigrades()}
            if len(ks) > 1:
                raise ValueError("T needs a homogeneous argument or an explicit weight")
            k = ks.pop() if ks else 0
        return self.delta(x) * self.pk(k) + self.U(x)

    # -- E-expansions ------------------------------------------------------
    def up_e(self, e: EExpansion) -> EExpansion:
        """(U_p f)_(i,E) = p^i sum_h C(h+i, i) U_p(f_(h+i,E) E_p^h)."""
        F, p = self.F, self.F.p
        Ep = self.Ep()
        out = []
        for i in range(len(e.c)):
            inner = Expr.zero(F)
            for h in range(len(e.c) - i):
                b = bn.binom(h + i, i, p)
                if b and not e.c[h + i].is_zero():
                    inner = inner + e.c[h + i] * Ep ** h * b
            out.append(self.U(inner) * self.pk(i))
        return EExpansion(F, e.k, e.m, out, check=False)

    def delta_e(self, e: EExpansion) -> EExpansion:
        """(delta_p f)_(j,E) = sum_s C(s+j, j) p^(-s-j) (-E_p)^s delta_p f_(s+j,E)."""
        F, p = self.F, self.F.p
        mEp = -self.Ep()
        out = []
        for j in range(len(e.c)):
            acc = Expr.zero(F)
            for s in range(len(e.c) - j):
                b = bn.binom(s + j, j, p)
                if b and not e.c[s + j].is_zero():
                    acc = acc + self.delta(e.c[s + j]) * mEp ** s * self.pk(-s - j) * b
            out.append(acc)
        return EExpansion(F, e.k, e.m, out, check=False)

    def tp_e(self, e: EExpansion) -> EExpansion:
        """E-expansion of T_p f, summing the closed formula for T_p(f_n E^n) over n."""
        F, p = self.F, self.F.p
        k = e.k
        mEp = -self.Ep()
        out = [Expr.zero(F) for _ in e.c]
        for n, fn in enumerate(e.c):
            if fn.is_zero():
                continue
            dfn = self.delta(fn)
            for h in range(n + 1):
                b = bn.binom(n, h, p)
                if not b:
                    continue
                term = dfn * mEp ** (n - h) * self.pk(k - n - h) + self.U(fn * self.Ep() ** (n - h))
                out[h] = out[h] + term * self.pk(h) * b
        return EExpansion(F, e.k, e.m, out, check=False)

    def up_en_recursive(self, f: Expr, n: int) -> list[Expr]:
        """U_p(f E^n) as a polynomial in E from U_p(f E_p^n) - sum C(n,h) (-p)^h U_p(f E^(n-h)) E^h."""
        F, p = self.F, self.F.p
        memo: dict = {}

        def rec(j):
            if j in memo:
                return memo[j]
            out = [self.U(f * self.Ep() ** j)] + [Expr.zero(F)] * j
            for h in range(1, j + 1):
                b = bn.binom(j, h, p)
                if not b:
                    continue
                s = self.pk(h) * (b * (-1) ** h % p)
                for i, c in enumerate(rec(j - h)):
                    if not c.is_zero():
                        out[i + h] = out[i + h] - c * s
            memo[j] = out
            return out

        return rec(n)

    def up_en_closed(self, f: Expr, n: int) -> list[Expr]:
        """sum_h C(n, h) p^h U_p(f E_p^(n-h)) E^h."""
        p = self.F.p
        return [self.U(f * self.Ep() ** (n - h)) * self.pk(h) * bn.binom(n, h, p) for h in range(n + 1)]

    def ker_up_reconstruct(self, e: EExpansion) -> EExpansion:
        """g of level m with p^m delta_p g = f, for f in the kernel of U_p."""
        F, p = self.F, self.F.p
        Ep = self.Ep()
        m = e.m
        g = []
        for i in range(len(e.c)):
            comb = Expr.zero(F)
            for h in range(len(e.c) - i):
                b = bn.binom(h + i, i, p)
                if b and not e.c[h + i].is_zero():
                    comb = comb + e.c[h + i] * Ep ** h * b
            y = self.undelta(comb)
            if y is None:
                raise NotInKernelImage(f"coefficient {i} is not in the image of delta_p")
            g.append(y * self.pk(i - m))
        G = EExpansion(F, e.k, e.m, g, check=False)
        back = self.delta_e(G)
        if not all((back.coeff(i) * self.pk(m) - e.coeff(i)).is_zero() for i in range(max(len(back.c), len(e.c)))):
            raise NotInKernelImage("reconstruction does not reproduce the input")
        return G

    # -- eigenforms --------------------------------------------------------
    def hecke_assoc(self, P: AssocPoly) -> AssocPoly:
        """(T f)_i = det^i T(f_i): the operator on associated polynomials."""
        return AssocPoly(self.F, P.k, P.m,
                         [self.T(c, P.k - 2 * i) * ZRat.const(self.det ** i) for i, c in enumerate(P.c)])

    def eigencheck(self, P: AssocPoly, lam) -> bool:
        """T f_i = lam det^(-i) f_i for every coefficient."""
        lam = RatFunc.const(self.F, lam) if isinstance(lam, int) else lam
        for i, c in enumerate(P.c):
            target = c * ZRat.const(lam / self.det ** i)
            if not (self.T(c, P.k - 2 * i) - target).is_zero():
                return False
        return True

    def is_eigen(self, P: AssocPoly, lam) -> bool:
        """T f = lam f, compared on whole associated polynomials."""
        lam = RatFunc.const(self.F, lam) if isinstance(lam, int) else lam
        return self.hecke_assoc(P) == P * ZRat.const(lam)

    def lift_eigen(self, f: Expr, k: int, lam) -> Expr:
        """f - (p^k / lam) delta_p f, asserted to be a U_p-eigenform of eigenvalue lam."""
        lam = RatFunc.const(self.F, lam) if isinstance(lam, int) else lam
        if not lam:
            raise ZeroEigenvalue("lift_eigen needs a nonzero eigenvalue")
        g = f - self.delta(f) * ZRat.const(self.P ** k / lam)
        if not (self.U(g) - g * ZRat.const(lam)).is_zero():
            raise AssertionError("U_p(g) != lam g")
        return g

    # -- random inputs -----------------------------------------------------
    def random_form_combo(self, rng: random.Random, k: int, m: int, level: str = "m",
                          names: int = 2, tag: str = "f") -> Expr:
        F = self.F
        acc = Expr.zero(F)
        while acc.is_zero():
            for j in range(names):
                c = rng.randrange(F.q)
                if c:
                    coeff = RatFunc(F, [rng.randrange(F.q) for _ in range(rng.randint(0, 1))] + [c])
                    acc = acc + self.form(f"{tag}{level}_{k}_{m}_{j}", k, m, level) * coeff
        return acc

    def random_e(self, rng: random.Random, k: int, m: int, depth: int, level: str = "m") -> EExpansion:
        c = [self.random_form_combo(rng, k - 2 * i, m - i, level) for i in range(depth + 1)]
        return EExpansion(self.F, k, m, c, check=False)


def e_equal(a: EExpansion, b: EExpansion) -> bool:
    n = max(len(a.c), len(b.c))
    return all((a.coeff(i) - b.coeff(i)).is_zero() for i in range(n))


def assoc_of_e(e: EExpansion) -> AssocPoly:
    return from_e(e)


def e_of_assoc(P: AssocPoly) -> EExpansion:
    return to_e(P)
