"""2x2 matrices over F_q(T), automorphy factors and the GL_2(A)-normal form."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DegenerateMatrix
from .fields import GF, FqPoly, RatFunc
from .scalars import ZRat, _as_k


class Matrix2:
    """An invertible matrix ((a, b), (c, d)) with entries in F_q(T)."""

    __slots__ = ("F", "a", "b", "c", "d", "_det")

    def __init__(self, F: GF, a, b, c, d, check: bool = True):
        self.F = F
        self.a, self.b, self.c, self.d = (_as_k(F, x) for x in (a, b, c, d))
        self._det = self.a * self.d - self.b * self.c
        if check and self._det.is_zero():
            raise DegenerateMatrix("singular matrix")

    @classmethod
    def identity(cls, F: GF) -> "Matrix2":
        return cls(F, 1, 0, 0, 1)

    @property
    def det(self) -> RatFunc:
        return self._det

    def entries(self) -> tuple[RatFunc, RatFunc, RatFunc, RatFunc]:
        return self.a, self.b, self.c, self.d

    def __mul__(self, o: "Matrix2") -> "Matrix2":
        return Matrix2(self.F,
                       self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                       self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)

    def scale(self, s) -> "Matrix2":
        return Matrix2(self.F, self.a * s, self.b * s, self.c * s, self.d * s)

    def inverse(self) -> "Matrix2":
        di = self._det.inverse()
        return Matrix2(self.F, self.d * di, -self.b * di, -self.c * di, self.a * di)

    def __eq__(self, o):
        return isinstance(o, Matrix2) and self.entries() == o.entries()

    def __hash__(self):
        return hash(self.entries())

    def __repr__(self):
        return f"Matrix2([[{self.a}, {self.b}], [{self.c}, {self.d}]])"

    def key(self) -> tuple:
        return tuple((x.n, x.d) for x in self.entries())

    # -- group membership --------------------------------------------------
    def is_integral(self) -> bool:
        return all(x.is_poly() for x in self.entries())

    def in_GL2A(self) -> bool:
        return self.is_integral() and self._det.is_const()

    def in_Gamma(self, m: FqPoly | RatFunc) -> bool:
        """Principal congruence subgroup of level m."""
        mc = _poly_tuple(m)
        F = self.F
        if not self.in_GL2A():
            return False
        return (not F.pmod(F.psub(self.a.n, (1,)), mc) and not F.pmod(self.b.n, mc)
                and not F.pmod(self.c.n, mc) and not F.pmod(F.psub(self.d.n, (1,)), mc))

    def in_Gamma0(self, m: FqPoly | RatFunc) -> bool:
        mc = _poly_tuple(m)
        return self.in_GL2A() and not self.F.pmod(self.c.n, mc)

    # -- automorphy --------------------------------------------------------
    def j(self) -> ZRat:
        """j(gamma, z) = c z + d."""
        return ZRat.linear(self.c, self.d)

    def kappa(self) -> ZRat:
        """kappa(gamma, z) = c / (c z + d)."""
        return ZRat.const(self.c) / self.j()

    def act(self, f: ZRat) -> ZRat:
        """z -> f(gamma z)."""
        return f.subst(self.a, self.b, self.c, self.d)

    def moebius(self) -> ZRat:
        """gamma z as an element of K(z)."""
        return ZRat.linear(self.a, self.b) / self.j()

    def is_upper_triangular(self) -> bool:
        return self.c.is_zero()


def _poly_tuple(m) -> tuple:
    if isinstance(m, FqPoly):
        return m.c
    if isinstance(m, RatFunc):
        if not m.is_poly():
            raise ValueError("expected a polynomial")
        return m.n
    raise TypeError(m)


def cocycle_j(g: Matrix2) -> ZRat:
    return g.j()


def cocycle_kappa(g: Matrix2) -> ZRat:
    return g.kappa()


def mat_act(g: Matrix2, f: ZRat) -> ZRat:
    return g.act(f)


@dataclass(frozen=True)
class HNF:
    """gamma = sigma * h with sigma in GL_2(A) and h = ((a, b), (0, d)) normalized.

    Normalization: a and d have monic numerators, and b is reduced modulo d*A
    in the sense that b/d has numerator degree below its denominator degree.
    """

    sigma: Matrix2
    h: Matrix2


def _monic_scale(x: RatFunc) -> int:
    """The F_q^* element u with u*x having monic numerator."""
    return x.F.inv_t[x.n[-1]]


def hnf(g: Matrix2) -> HNF:
    """Factor g = sigma * h with sigma in GL_2(A) and h canonical upper triangular."""
    F = g.F
    a, b, c, d = g.entries()
    one = RatFunc.raw(F, (1,), (1,))
    zero = RatFunc.raw(F, (), (1,))
    if c.is_zero():
        tau = Matrix2(F, one, zero, zero, one)
    elif a.is_zero():
        tau = Matrix2(F, zero, one, one, zero)
    else:
        r = -(c / a)
        N, D = r.n, r.d
        _, s, t = F.pxgcd(D, N)
        # rows (s, -t) and (N, D): det = s*D + t*N = 1
        tau = Matrix2(F, RatFunc.raw(F, s), RatFunc.raw(F, F.pneg(t)),
                      RatFunc.raw(F, N), RatFunc.raw(F, D))
    m = tau * g
    assert m.c.is_zero()
    ua, ud = _monic_scale(m.a), _monic_scale(m.d)
    diag = Matrix2(F, RatFunc.const(F, ua), zero, zero, RatFunc.const(F, ud))
    m = diag * m
    tau = diag * tau
    # reduce b modulo d * A
    bd = m.b / m.d
    x = F.pdivmod(bd.n, bd.d)[0]
    if x:
        shear = Matrix2(F, one, RatFunc.raw(F, F.pneg(x)), zero, one)
        m = shear * m
        tau = shear * tau
    sigma = tau.inverse()
    return HNF(sigma, m)


def hnf_key(g: Matrix2) -> tuple:
    return hnf(g).h.key()
