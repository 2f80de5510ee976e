"""Associated polynomials and the slash / double-slash operators."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import binomial as bn
from .errors import UnsupportedBackend, WeightTypeMismatch
from .fields import GF, RatFunc
from .matrix import Matrix2
from .scalars import ZRat
from .symbolic import Expr, assoc_of_expr


class AssocPoly:
    """P(z, X) = sum_i c[i] X^i of declared weight k and type m."""

    __slots__ = ("F", "k", "m", "c")

    def __init__(self, F: GF, k: int, m: int, coeffs: Iterable[Expr]):
        self.F = F
        self.k, self.m = k, m
        c = [Expr.const(F, x) if not isinstance(x, Expr) else x for x in coeffs]
        while c and c[-1].is_zero():
            c.pop()
        self.c = c

    @classmethod
    def of_expr(cls, f: Expr, k: int, m: int) -> "AssocPoly":
        """Associated polynomial of a level-one expression (structural)."""
        return cls(f.F, k, m, assoc_of_expr(f))

    @property
    def depth(self) -> int:
        return len(self.c) - 1

    def coeff(self, i: int) -> Expr:
        return self.c[i] if 0 <= i < len(self.c) else Expr.zero(self.F)

    def __add__(self, o: "AssocPoly") -> "AssocPoly":
        n = max(len(self.c), len(o.c))
        return AssocPoly(self.F, self.k, self.m, [self.coeff(i) + o.coeff(i) for i in range(n)])

    def __neg__(self):
        return AssocPoly(self.F, self.k, self.m, [-x for x in self.c])

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        if isinstance(o, AssocPoly):
            if not self.c or not o.c:
                return AssocPoly(self.F, self.k + o.k, self.m + o.m, [])
            r = [Expr.zero(self.F) for _ in range(len(self.c) + len(o.c) - 1)]
            for i, x in enumerate(self.c):
                for j, y in enumerate(o.c):
                    r[i + j] = r[i + j] + x * y
            return AssocPoly(self.F, self.k + o.k, self.m + o.m, r)
        return AssocPoly(self.F, self.k, self.m, [x * o for x in self.c])

    __rmul__ = __mul__

    def __eq__(self, o):
        return isinstance(o, AssocPoly) and self.c == o.c

    def __hash__(self):
        return hash(tuple(self.c))

    def same_as(self, o: "AssocPoly") -> bool:
        """Equality including the declared bigrade."""
        return self == o and self.k == o.k and (self.m - o.m) % max(self.F.q - 1, 1) == 0

    def __repr__(self):
        return f"AssocPoly(k={self.k}, m={self.m}, {self})"

    def __str__(self):
        parts = []
        for i, x in enumerate(self.c):
            if x.is_zero():
                continue
            xs = "" if i == 0 else ("*X" if i == 1 else f"*X^{i}")
            parts.append(f"({x}){xs}")
        return " + ".join(parts) or "0"

    def compose(self, g: Matrix2) -> "AssocPoly":
        return AssocPoly(self.F, self.k, self.m, [x.compose(g) for x in self.c])


def _det_pow(g: Matrix2, e: int) -> ZRat:
    return ZRat.const(g.det ** e)


def slash_fn(f: Expr, g: Matrix2, k: int, m: int) -> Expr:
    """(f |_{k,m} g)(z) = det^m j^-k f(g z)."""
    return f.compose(g) * (_det_pow(g, m) * g.j() ** (-k))


def dslash_poly(P: AssocPoly, g: Matrix2) -> AssocPoly:
    """Double-slash on polynomials in X."""
    F, k, m = P.F, P.k, P.m
    p = F.p
    j = g.j()
    mcj = ZRat.const(-g.c) / j if not g.c.is_zero() else ZRat.zero(F)
    det = g.det
    comp = [x.compose(g) for x in P.c]
    out = []
    for h in range(len(P.c)):
        acc = Expr.zero(F)
        for i in range(h, len(P.c)):
            if comp[i].is_zero():
                continue
            b = bn.binom(i, h, p)
            if not b:
                continue
            if i > h and not mcj:
                continue
            s = ZRat.const(det ** (m - i)) * j ** (2 * i - k) * (mcj ** (i - h)) * b
            acc = acc + comp[i] * s
        out.append(acc)
    return AssocPoly(F, k, m, out)


def dslash_fn(P: AssocPoly, g: Matrix2) -> Expr:
    """f || g = sum_i (-c/j)^i (f_i |_{k-2i, m-i} g), with P = P_f."""
    F = P.F
    j = g.j()
    mcj = ZRat.const(-g.c) / j if not g.c.is_zero() else ZRat.zero(F)
    acc = Expr.zero(F)
    for i, fi in enumerate(P.c):
        if i and not mcj:
            break
        acc = acc + slash_fn(fi, g, P.k - 2 * i, P.m - i) * (mcj ** i)
    return acc


def coeff_assoc(P: AssocPoly, i: int) -> AssocPoly:
    """Associated polynomial of the i-th coefficient: (f_i)_h = C(h+i, i) f_{h+i}."""
    p = P.F.p
    c = [P.coeff(h + i) * bn.binom(h + i, i, p) for h in range(max(len(P.c) - i, 0))]
    return AssocPoly(P.F, P.k - 2 * i, P.m - i, c)


def slash_from_dslash(P: AssocPoly, g: Matrix2) -> Expr:
    """sum_i (c/j)^i (f_i || g), which equals f | g."""
    F = P.F
    cj = ZRat.const(g.c) / g.j() if not g.c.is_zero() else ZRat.zero(F)
    acc = Expr.zero(F)
    for i in range(len(P.c)):
        if i and not cj:
            break
        acc = acc + dslash_fn(coeff_assoc(P, i), g) * (cj ** i)
    return acc


def key_eq_residual(P: AssocPoly, g: Matrix2) -> Expr:
    """f|g - sum_i (c/j)^i (f_i || g); zero for quasi-modular f."""
    return slash_fn(P.coeff(0), g, P.k, P.m) - slash_from_dslash(P, g)


def default_generators(F: GF, translations: int = 3) -> list[Matrix2]:
    """Finite test family in GL_2(F_q[T]).

    The group is not finitely generated, so a finite family can only give a
    necessary condition: translations by T^j for j < ``translations``, the
    diagonal matrices diag(c, 1) for a primitive c, and the Weyl element.
    """
    T = RatFunc.T(F)
    gens = [Matrix2(F, 1, T ** j, 0, 1) for j in range(translations)]
    w = F.primitive_element
    gens.append(Matrix2(F, RatFunc.const(F, w), 0, 0, 1))
    gens.append(Matrix2(F, 0, 1, 1, 0))
    return gens


def is_weak_qmod(P: AssocPoly, gens: Sequence[Matrix2] | None = None) -> bool:
    """P || g == P for every matrix in the test family."""
    if gens is None:
        gens = default_generators(P.F)
    return all(dslash_poly(P, g) == P for g in gens)


def reconstruct(P: AssocPoly) -> bool:
    """True when P is the associated polynomial of its own X^0 coefficient."""
    try:
        Q = assoc_of_expr(P.coeff(0))
    except UnsupportedBackend:
        raise
    return AssocPoly(P.F, P.k, P.m, Q) == P


def check_bigrade(P: AssocPoly) -> None:
    """Raise WeightTypeMismatch unless coefficient i is homogeneous of (k-2i, m-i)."""
    for i, x in enumerate(P.c):
        if not x.is_z_free():
            continue
        if not x.is_homogeneous(P.k - 2 * i, P.m - i):
            raise WeightTypeMismatch(f"coefficient {i} has bigrades {x.bigrades()}")
