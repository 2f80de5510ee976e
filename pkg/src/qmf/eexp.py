"""E-expansions f = sum_i f_{i,E} E^i and their relation to associated polynomials."""

from __future__ import annotations

import functools
from typing import Iterable

from . import binomial as bn
from .errors import CharacteristicObstruction, WeightTypeMismatch
from .fields import GF, get_field
from .qmod import AssocPoly
from .symbolic import Expr, neg_pi_pow, pi_pow


def _E(F: GF) -> Expr:
    return Expr.sym(F, "E")


class EExpansion:
    """Coefficients (f_{0,E}, ..., f_{l,E}) for an object of weight k and type m."""

    __slots__ = ("F", "k", "m", "c")

    def __init__(self, F: GF, k: int, m: int, coeffs: Iterable[Expr], check: bool = True):
        self.F = F
        self.k, self.m = k, m
        c = [x if isinstance(x, Expr) else Expr.const(F, x) for x in coeffs]
        while c and c[-1].is_zero():
            c.pop()
        self.c = c
        if check and c:
            s = F.q - 1
            if s > 1 and (k - 2 * m) % s:
                raise WeightTypeMismatch(f"k={k} and m={m} violate k = 2m mod {s}; only 0 exists")
            for i, x in enumerate(c):
                if x.is_z_free() and not x.is_homogeneous(k - 2 * i, m - i):
                    raise WeightTypeMismatch(f"coefficient {i} is not of bigrade ({k - 2 * i}, {m - i})")

    @property
    def depth(self) -> int:
        return len(self.c) - 1

    def coeff(self, i: int) -> Expr:
        return self.c[i] if 0 <= i < len(self.c) else Expr.zero(self.F)

    def __eq__(self, o):
        return isinstance(o, EExpansion) and self.c == o.c

    def __hash__(self):
        return hash(tuple(self.c))

    def __add__(self, o: "EExpansion") -> "EExpansion":
        n = max(len(self.c), len(o.c))
        return EExpansion(self.F, self.k, self.m, [self.coeff(i) + o.coeff(i) for i in range(n)], check=False)

    def __neg__(self):
        return EExpansion(self.F, self.k, self.m, [-x for x in self.c], check=False)

    def __sub__(self, o):
        return self + (-o)

    def scale(self, s) -> "EExpansion":
        return EExpansion(self.F, self.k, self.m, [x * s for x in self.c], check=False)

    def __mul__(self, o):
        if isinstance(o, EExpansion):
            return e_mul(self, o)
        return self.scale(o)

    __rmul__ = __mul__

    def to_expr(self) -> Expr:
        """The function sum_i f_{i,E} E^i."""
        E = _E(self.F)
        acc = Expr.zero(self.F)
        Ei = Expr.one(self.F)
        for i, x in enumerate(self.c):
            if i:
                Ei = Ei * E
            acc = acc + x * Ei
        return acc

    def __repr__(self):
        return f"EExpansion(k={self.k}, m={self.m}, [{', '.join(str(x) for x in self.c)}])"


def to_e(P: AssocPoly) -> EExpansion:
    """f_{i,E} = (-pi)^i sum_h C(h, i) f_h (pi E)^(h-i)."""
    F, p = P.F, P.F.p
    E = _E(F)
    piE = Expr.pi(F) * E
    pows = [Expr.one(F)]
    for _ in range(len(P.c)):
        pows.append(pows[-1] * piE)
    out = []
    for i in range(len(P.c)):
        acc = Expr.zero(F)
        for h in range(i, len(P.c)):
            b = bn.binom(h, i, p)
            if b and not P.c[h].is_zero():
                acc = acc + P.c[h] * pows[h - i] * b
        out.append(acc * neg_pi_pow(F, i))
    return EExpansion(F, P.k, P.m, out, check=False)


def from_e(e: EExpansion) -> AssocPoly:
    """f_i = (-pi)^(-i) sum_h C(h, i) f_{h,E} E^(h-i)."""
    F, p = e.F, e.F.p
    E = _E(F)
    pows = [Expr.one(F)]
    for _ in range(len(e.c)):
        pows.append(pows[-1] * E)
    out = []
    for i in range(len(e.c)):
        acc = Expr.zero(F)
        for h in range(i, len(e.c)):
            b = bn.binom(h, i, p)
            if b and not e.c[h].is_zero():
                acc = acc + e.c[h] * pows[h - i] * b
        out.append(acc * neg_pi_pow(F, -i))
    return AssocPoly(F, e.k, e.m, out)


@functools.lru_cache(maxsize=64)
def phi_psi(l: int, q: int) -> tuple[tuple[tuple[Expr, ...], ...], tuple[tuple[Expr, ...], ...]]:
    """Matrices of to_e and from_e in the basis (f_0..f_l), entries in C[pi^(+-1)][E]."""
    F = get_field(q)
    p = F.p
    E = _E(F)
    Epow = [Expr.one(F)]
    for _ in range(l + 1):
        Epow.append(Epow[-1] * E)
    zero = Expr.zero(F)
    Phi = [[zero] * (l + 1) for _ in range(l + 1)]
    Psi = [[zero] * (l + 1) for _ in range(l + 1)]
    for i in range(l + 1):
        for h in range(i, l + 1):
            b = bn.binom(h, i, p)
            if not b:
                continue
            # (-pi)^i pi^(h-i) = (-1)^i pi^h
            Phi[i][h] = Epow[h - i] * pi_pow(F, h) * ((-1) ** i * b)
            Psi[i][h] = Epow[h - i] * neg_pi_pow(F, -i) * b
    return tuple(map(tuple, Phi)), tuple(map(tuple, Psi))


def mat_mul(A, B) -> list[list[Expr]]:
    n = len(A)
    F = A[0][0].F
    out = []
    for i in range(n):
        row = []
        for j in range(len(B[0])):
            acc = Expr.zero(F)
            for h in range(len(B)):
                if A[i][h] and B[h][j]:
                    acc = acc + A[i][h] * B[h][j]
            row.append(acc)
        out.append(row)
    return out


def is_identity(M) -> bool:
    F = M[0][0].F
    one = Expr.one(F)
    return all(M[i][j] == (one if i == j else 0) for i in range(len(M)) for j in range(len(M)))


def d_dE(e: EExpansion, i: int, divided: bool = False) -> Expr:
    """(1/i!) d^i f / dE^i, which equals (-pi)^i f_i."""
    F, p = e.F, e.F.p
    E = _E(F)
    if not divided:
        if i >= p:
            raise CharacteristicObstruction(f"i={i} >= p={p}: i! vanishes; pass divided=True")
        coeffs = list(e.c)
        for _ in range(i):
            coeffs = [coeffs[h] * h for h in range(1, len(coeffs))]
        fact = 1
        for t in range(2, i + 1):
            fact *= t
        inv = pow(fact % p, -1, p)
        acc = Expr.zero(F)
        Eh = Expr.one(F)
        for h, x in enumerate(coeffs):
            if h:
                Eh = Eh * E
            acc = acc + x * Eh
        return acc * inv
    acc = Expr.zero(F)
    for h in range(i, len(e.c)):
        b = bn.binom(h, i, p)
        if b:
            acc = acc + e.c[h] * (E ** (h - i)) * b
    return acc


def e_mul(a: EExpansion, b: EExpansion) -> EExpansion:
    """Product in the C[E]-algebra of E-expansions."""
    F = a.F
    if not a.c or not b.c:
        return EExpansion(F, a.k + b.k, a.m + b.m, [], check=False)
    r = [Expr.zero(F) for _ in range(len(a.c) + len(b.c) - 1)]
    for i, x in enumerate(a.c):
        for j, y in enumerate(b.c):
            r[i + j] = r[i + j] + x * y
    return EExpansion(F, a.k + b.k, a.m + b.m, r, check=False)


def e_shift(e: EExpansion) -> EExpansion:
    """E * f: (0, f_{0,E}, ..., f_{l,E})."""
    return EExpansion(e.F, e.k + 2, e.m + 1, [Expr.zero(e.F)] + list(e.c), check=False)


def e_expansion_of(f: Expr, k: int, m: int) -> EExpansion:
    """E-expansion of a level-one expression via its structural associated polynomial."""
    return to_e(AssocPoly.of_expr(f, k, m))
