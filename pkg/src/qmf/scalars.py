"""Scalars: F_q(T)[pi, 1/pi] and rational functions of z over F_q(T).

``pi`` stands for the Carlitz period, a transcendental element, so the ring
F_q(T)[pi, 1/pi] is graded by the pi-exponent.  :class:`ZRat` is the field
K(z) in reduced form: numerator and denominator are tuples of
:class:`RatFunc` coefficients in z, lowest degree first, denominator monic,
gcd 1.  Reduced form makes ``==`` structural.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from . import binomial as bn
from .fields import GF, FqPoly, RatFunc, _flint, get_field

# ---------------------------------------------------------------------------
# K[z] kernel on tuples of RatFunc


def _ztrim(c: list) -> tuple:
    n = len(c)
    while n and not c[n - 1].n:
        n -= 1
    return tuple(c[:n])


def zadd(a: tuple, b: tuple) -> tuple:
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return a
    r = list(a)
    for i, y in enumerate(b):
        r[i] = r[i] + y
    return _ztrim(r) if len(a) == len(b) else tuple(r)


def zneg(a: tuple) -> tuple:
    return tuple(-x for x in a)


def zsub(a: tuple, b: tuple) -> tuple:
    return zadd(a, zneg(b))


def zscale(a: tuple, c: RatFunc) -> tuple:
    if not c.n:
        return ()
    if c.n == (1,) and c.d == (1,):
        return a
    return tuple(x * c for x in a)


def zmul(a: tuple, b: tuple) -> tuple:
    if not a or not b:
        return ()
    if len(a) == 1:
        return zscale(b, a[0])
    if len(b) == 1:
        return zscale(a, b[0])
    r = [None] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x.n:
            continue
        for j, y in enumerate(b):
            t = x * y
            k = i + j
            r[k] = t if r[k] is None else r[k] + t
    zero = RatFunc.raw(a[0].F, (), (1,))
    return _ztrim([zero if x is None else x for x in r])


def zdivmod(a: tuple, b: tuple) -> tuple[tuple, tuple]:
    if not b:
        raise ZeroDivisionError("division by zero in K[z]")
    db = len(b) - 1
    if len(a) - 1 < db:
        return (), a
    F = b[0].F
    zero = RatFunc.raw(F, (), (1,))
    inv = b[-1].inverse()
    r = list(a)
    qt = [zero] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = r[i]
        if c.n:
            c = c * inv
            qt[i - db] = c
            for j in range(db + 1):
                if b[j].n:
                    r[i - db + j] = r[i - db + j] - c * b[j]
    return _ztrim(qt), _ztrim(r[:db])


def zmonic(a: tuple) -> tuple:
    if not a:
        return a
    lc = a[-1]
    if lc.n == (1,) and lc.d == (1,):
        return a
    inv = lc.inverse()
    return tuple(x * inv for x in a[:-1]) + (RatFunc.raw(lc.F, (1,), (1,)),)


def zgcd(a: tuple, b: tuple) -> tuple:
    while b:
        a, b = b, zdivmod(a, b)[1]
    return zmonic(a)


def zpow(a: tuple, n: int) -> tuple:
    F = a[0].F if a else None
    r = (RatFunc.raw(F, (1,), (1,)),) if F else ((),)
    while n:
        if n & 1:
            r = zmul(r, a)
        a = zmul(a, a)
        n >>= 1
    return r


def zeval(a: tuple, x: RatFunc) -> RatFunc:
    r = RatFunc.raw(x.F, (), (1,))
    for c in reversed(a):
        r = r * x + c
    return r


# ---------------------------------------------------------------------------


class ZRat:
    """An element of K(z) in reduced form."""

    __slots__ = ("F", "n", "d")

    def __new__(cls, F: GF, num: Iterable = (), den: Iterable | None = None):
        if cls is ZRat and F.fast:
            return FastZRat.from_k(F, num, den)
        return object.__new__(cls)

    def __init__(self, F: GF, num: Iterable = (), den: Iterable | None = None):
        self.F = F
        n = _ztrim([_as_k(F, x) for x in num])
        if den is None:
            d = (RatFunc.raw(F, (1,), (1,)),)
        else:
            d = _ztrim([_as_k(F, x) for x in den])
        if not d:
            raise ZeroDivisionError("zero denominator in K(z)")
        self.n, self.d = _znormalize(n, d, F)

    @classmethod
    def raw(cls, F, n, d):
        if F.fast:
            return FastZRat.from_k(F, n, d)
        r = object.__new__(cls)
        r.F, r.n, r.d = F, n, d
        return r

    @classmethod
    def const(cls, c: RatFunc) -> "ZRat":
        if c.F.fast:
            return FastZRat.const(c)
        F = c.F
        return cls.raw(F, (c,) if c.n else (), (RatFunc.raw(F, (1,), (1,)),))

    @classmethod
    def zero(cls, F: GF) -> "ZRat":
        if F.fast:
            return FastZRat.zero(F)
        return cls.raw(F, (), (RatFunc.raw(F, (1,), (1,)),))

    @classmethod
    def one(cls, F: GF) -> "ZRat":
        if F.fast:
            return FastZRat.one(F)
        o = RatFunc.raw(F, (1,), (1,))
        return cls.raw(F, (o,), (o,))

    @classmethod
    def z(cls, F: GF) -> "ZRat":
        if F.fast:
            return FastZRat.z(F)
        o = RatFunc.raw(F, (1,), (1,))
        return cls.raw(F, (RatFunc.raw(F, (), (1,)), o), (o,))

    @classmethod
    def linear(cls, c: RatFunc, d: RatFunc) -> "ZRat":
        """The polynomial c*z + d."""
        return cls(c.F, (d, c))

    def is_zero(self) -> bool:
        return not self.n

    def __bool__(self):
        return bool(self.n)

    def is_const(self) -> bool:
        return len(self.d) == 1 and len(self.n) <= 1

    def const_value(self) -> RatFunc:
        if not self.is_const():
            raise ValueError("z-dependent")
        return self.n[0] if self.n else RatFunc.raw(self.F, (), (1,))

    def is_one(self) -> bool:
        return len(self.d) == 1 and len(self.n) == 1 and self.n[0].n == (1,) and self.n[0].d == (1,)

    def _co(self, o):
        if isinstance(o, ZRat):
            return o
        if isinstance(o, (RatFunc, int, FqPoly)):
            return ZRat.const(_as_k(self.F, o))
        return None

    def __add__(self, o):
        o = self._co(o)
        if o is None:
            return NotImplemented
        if not o.n:
            return self
        if not self.n:
            return o
        F = self.F
        d1, d2 = self.d, o.d
        if len(d1) == 1 and len(d2) == 1:
            return ZRat.raw(F, zadd(self.n, o.n), d1)
        if d1 == d2:
            return ZRat.raw(F, *_znormalize(zadd(self.n, o.n), d1, F))
        if len(d2) == 1:
            return ZRat.raw(F, zadd(self.n, zmul(o.n, d1)), d1)
        if len(d1) == 1:
            return ZRat.raw(F, zadd(o.n, zmul(self.n, d2)), d2)
        g = zgcd(d1, d2)
        if len(g) == 1:
            n = zadd(zmul(self.n, d2), zmul(o.n, d1))
            return ZRat.raw(F, n, zmul(d1, d2))
        e1 = zdivmod(d1, g)[0]
        e2 = zdivmod(d2, g)[0]
        n = zadd(zmul(self.n, e2), zmul(o.n, e1))
        return ZRat.raw(F, *_znormalize(n, zmul(e1, d2), F))

    __radd__ = __add__

    def __neg__(self):
        return ZRat.raw(self.F, zneg(self.n), self.d)

    def __sub__(self, o):
        o = self._co(o)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, o):
        o = self._co(o)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, o):
        o = self._co(o)
        if o is None:
            return NotImplemented
        F = self.F
        if not self.n or not o.n:
            return ZRat.zero(F)
        n1, d1, n2, d2 = self.n, self.d, o.n, o.d
        if len(d1) == 1 and len(d2) == 1:
            return ZRat.raw(F, zmul(n1, n2), d1)
        if len(d2) > 1 and len(n1) > 1:
            g = zgcd(n1, d2)
            if len(g) > 1:
                n1 = zdivmod(n1, g)[0]
                d2 = zdivmod(d2, g)[0]
        if len(d1) > 1 and len(n2) > 1:
            g = zgcd(n2, d1)
            if len(g) > 1:
                n2 = zdivmod(n2, g)[0]
                d1 = zdivmod(d1, g)[0]
        n = zmul(n1, n2)
        d = zmul(d1, d2)
        lc = d[-1]
        if not (lc.n == (1,) and lc.d == (1,)):
            inv = lc.inverse()
            n = zscale(n, inv)
            d = zmonic(d)
        return ZRat.raw(F, n, d)

    __rmul__ = __mul__

    def inverse(self) -> "ZRat":
        if not self.n:
            raise ZeroDivisionError("inverse of 0 in K(z)")
        inv = self.n[-1].inverse()
        return ZRat.raw(self.F, zscale(self.d, inv), zmonic(self.n))

    def __truediv__(self, o):
        o = self._co(o)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, o):
        o = self._co(o)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        if e == 0:
            return ZRat.one(self.F)
        if len(self.d) == 1:
            return ZRat.raw(self.F, zpow(self.n, e), self.d)
        return ZRat.raw(self.F, zpow(self.n, e), zpow(self.d, e))

    def __eq__(self, o):
        if isinstance(o, ZRat):
            return self.n == o.n and self.d == o.d
        c = self._co(o)
        if c is None:
            return NotImplemented
        return self == c

    def __hash__(self):
        return hash((self.n, self.d))

    def subst(self, a: RatFunc, b: RatFunc, c: RatFunc, d: RatFunc) -> "ZRat":
        """f((a z + b)/(c z + d))."""
        F = self.F
        if len(self.n) <= 1 and len(self.d) == 1:
            return self
        num_lin = _ztrim([b, a])
        den_lin = _ztrim([d, c])

        def homog(p: tuple, deg: int) -> tuple:
            r: tuple = ()
            for i, coef in enumerate(p):
                if coef.n:
                    t = zmul(zpow(num_lin, i), zpow(den_lin, deg - i))
                    r = zadd(r, zscale(t, coef))
            return r

        dn, dd = len(self.n) - 1, len(self.d) - 1
        N = homog(self.n, dn)
        D = homog(self.d, dd)
        if dd > dn:
            N = zmul(N, zpow(den_lin, dd - dn))
        elif dn > dd:
            D = zmul(D, zpow(den_lin, dn - dd))
        if not D:
            raise ZeroDivisionError("substitution hits a pole identically")
        return ZRat.raw(F, *_znormalize(N, D, F))

    def __call__(self, x: RatFunc) -> RatFunc:
        return zeval(self.n, x) / zeval(self.d, x)

    def __repr__(self):
        return f"ZRat({self})"

    def __str__(self):
        ns = _zstr(self.n)
        if len(self.d) == 1:
            return ns
        return f"({ns})/({_zstr(self.d)})"

    def zdegree(self) -> tuple[int, int]:
        return len(self.n) - 1, len(self.d) - 1

    # hyperderivatives in z; subclasses supply the polynomial pieces

    def _numer(self) -> "ZRat":
        return ZRat.raw(self.F, self.n, (RatFunc.raw(self.F, (1,), (1,)),))

    def _denom(self) -> "ZRat":
        return ZRat.raw(self.F, self.d, (RatFunc.raw(self.F, (1,), (1,)),))

    def _is_poly(self) -> bool:
        return len(self.d) == 1

    def _phyper(self, r: int) -> "ZRat":
        """D_r of a polynomial: z^m -> C(m, r) z^(m-r)."""
        F = self.F
        if r == 0:
            return self
        out = []
        for m in range(r, len(self.n)):
            b = bn.binom(m, r, F.p)
            out.append(self.n[m] * b if b else RatFunc.raw(F, (), (1,)))
        return ZRat.raw(F, _ztrim(out), self.d)

    def hyper(self, n: int) -> "ZRat":
        """Hyperderivative D_n in z.

        For f = N/D the quotients Q_s = D_s(1/D) satisfy
        sum_{r<=s} D_r(D) Q_{s-r} = 0 (s > 0); Leibniz then gives D_n(N Q_0).
        """
        if n == 0:
            return self
        if self.is_const():
            return ZRat.zero(self.F)
        if self._is_poly():
            return self._phyper(n)
        N, D = self._numer(), self._denom()
        Dinv = D.inverse()
        Q = [Dinv]
        dD = [D._phyper(r) for r in range(n + 1)]
        for s in range(1, n + 1):
            acc = ZRat.zero(self.F)
            for r in range(1, s + 1):
                if dD[r]:
                    acc = acc + dD[r] * Q[s - r]
            Q.append(-(acc * Dinv))
        res = ZRat.zero(self.F)
        for r in range(n + 1):
            nr = N._phyper(r)
            if nr:
                res = res + nr * Q[n - r]
        return res


class FastZRat(ZRat):
    """K(z) for prime q: numerator and denominator in F_p[z, T] (flint).

    Canonical form: gcd(N, D) = 1 and the lex-leading coefficient of D is 1.
    The tuple views ``n`` and ``d`` (monic in z, K coefficients) are computed
    on demand.
    """

    __slots__ = ("N", "D", "_h")

    def __init__(self, *args, **kw):  # built by the factories
        pass

    @staticmethod
    def _ctx(F: GF):
        c = F.__dict__.get("_zctx")
        if c is None:
            c = _flint.nmod_mpoly_ctx.get(("z", "T"), modulus=F.p, ordering="lex")
            F._zctx = c
        return c

    @classmethod
    def _mk(cls, F, N, D, reduce: bool = True) -> "FastZRat":
        if N.is_zero():
            return cls._make(F, N, cls._ctx(F).constant(1))
        if reduce and not D.is_one():
            g = N.gcd(D)
            if not g.is_one():
                N = N // g
                D = D // g
        lc = int(D.leading_coefficient())
        if lc != 1:
            inv = pow(lc, -1, F.p)
            N = N * inv
            D = D * inv
        return cls._make(F, N, D)

    @classmethod
    def _make(cls, F, N, D) -> "FastZRat":
        r = object.__new__(cls)
        r.F, r.N, r.D, r._h = F, N, D, None
        return r

    @classmethod
    def _kpoly(cls, F, t: tuple, zexp: int = 0):
        return cls._ctx(F).from_dict({(zexp, j): c for j, c in enumerate(t) if c})

    @staticmethod
    def _lcm_dens(F, xs) -> tuple:
        L: tuple = (1,)
        for x in xs:
            if x.n and x.d != (1,):
                L = F.pmul(L, F.pdivmod(x.d, F.pgcd(L, x.d))[0])
        return L

    @classmethod
    def from_k(cls, F, num, den=None) -> "FastZRat":
        """From K-coefficient sequences in z (lowest degree first)."""
        num = [_as_k(F, x) for x in num]
        den = [RatFunc.raw(F, (1,), (1,))] if den is None else [_as_k(F, x) for x in den]
        L = cls._lcm_dens(F, num + den)
        ctx = cls._ctx(F)

        def lift(cs):
            acc = {}
            for i, x in enumerate(cs):
                if not x.n:
                    continue
                t = F.pmul(x.n, F.pdivmod(L, x.d)[0])
                for j, c in enumerate(t):
                    if c:
                        acc[(i, j)] = c
            return ctx.from_dict(acc)

        N, D = lift(num), lift(den)
        if D.is_zero():
            raise ZeroDivisionError("zero denominator in K(z)")
        return cls._mk(F, N, D)

    @classmethod
    def const(cls, c: RatFunc) -> "FastZRat":
        F = c.F
        if not c.n:
            return cls.zero(F)
        return cls._make(F, cls._kpoly(F, c.n), cls._kpoly(F, c.d))

    @classmethod
    def zero(cls, F: GF) -> "FastZRat":
        ctx = cls._ctx(F)
        return cls._make(F, ctx.constant(0), ctx.constant(1))

    @classmethod
    def one(cls, F: GF) -> "FastZRat":
        ctx = cls._ctx(F)
        return cls._make(F, ctx.constant(1), ctx.constant(1))

    @classmethod
    def z(cls, F: GF) -> "FastZRat":
        ctx = cls._ctx(F)
        return cls._make(F, ctx.gens()[0], ctx.constant(1))

    @classmethod
    def linear(cls, c: RatFunc, d: RatFunc) -> "FastZRat":
        return cls.from_k(c.F, (d, c))

    # tuple views

    @staticmethod
    def _zcoeffs(P) -> dict:
        out: dict = {}
        for (i, j), c in P.to_dict().items():
            out.setdefault(i, {})[j] = int(c)
        return out

    def _views(self):
        F = self.F
        zero = RatFunc.raw(F, (), (1,))
        cn, cd = self._zcoeffs(self.N), self._zcoeffs(self.D)
        if not cn:
            return (), (RatFunc.raw(F, (1,), (1,)),)

        def poly(dct):
            return _trim_t([dct.get(j, 0) for j in range(max(dct) + 1)])

        lead = poly(cd[max(cd)])

        def conv(cs):
            return tuple(RatFunc(F, poly(cs[i]), lead) if i in cs else zero for i in range(max(cs) + 1))

        return conv(cn), conv(cd)

    @property
    def n(self):
        return self._views()[0]

    @property
    def d(self):
        return self._views()[1]

    def is_zero(self) -> bool:
        return self.N.is_zero()

    def __bool__(self):
        return not self.N.is_zero()

    def is_const(self) -> bool:
        return self.N.degrees()[0] <= 0 and self.D.degrees()[0] == 0

    def const_value(self) -> RatFunc:
        if not self.is_const():
            raise ValueError("z-dependent")
        F = self.F
        if self.N.is_zero():
            return RatFunc.raw(F, (), (1,))
        cn = self._zcoeffs(self.N)[0]
        cd = self._zcoeffs(self.D)[0]
        return RatFunc.raw(F, _trim_t([cn.get(j, 0) for j in range(max(cn) + 1)]),
                           _trim_t([cd.get(j, 0) for j in range(max(cd) + 1)]))

    def is_one(self) -> bool:
        return self.N.is_one() and self.D.is_one()

    def _is_poly(self) -> bool:
        return self.D.degrees()[0] == 0

    def _co(self, o):
        if isinstance(o, FastZRat):
            return o
        if isinstance(o, (RatFunc, int, FqPoly)):
            return FastZRat.const(_as_k(self.F, o))
        return None

    # arithmetic

    def __add__(self, o):
        o = self._co(o)
        if o is None:
            return NotImplemented
        if o.N.is_zero():
            return self
        if self.N.is_zero():
            return o
        F, D1, D2 = self.F, self.D, o.D
        if D1 == D2:
            return FastZRat._mk(F, self.N + o.N, D1, reduce=not D1.is_one())
        if D1.is_one():
            return FastZRat._make(F, self.N * D2 + o.N, D2)
        if D2.is_one():
            return FastZRat._make(F, o.N * D1 + self.N, D1)
        g = D1.gcd(D2)
        if g.is_one():
            return FastZRat._mk(F, self.N * D2 + o.N * D1, D1 * D2, reduce=False)
        e1, e2 = D1 // g, D2 // g
        return FastZRat._mk(F, self.N * e2 + o.N * e1, e1 * D2)

    __radd__ = __add__

    def __neg__(self):
        return FastZRat._make(self.F, -self.N, self.D)

    def __mul__(self, o):
        o = self._co(o)
        if o is None:
            return NotImplemented
        F = self.F
        if self.N.is_zero() or o.N.is_zero():
            return FastZRat.zero(F)
        N1, D1, N2, D2 = self.N, self.D, o.N, o.D
        if D1.is_one() and D2.is_one():
            return FastZRat._make(F, N1 * N2, D1)
        if not D2.is_one():
            g = N1.gcd(D2)
            if not g.is_one():
                N1, D2 = N1 // g, D2 // g
        if not D1.is_one():
            g = N2.gcd(D1)
            if not g.is_one():
                N2, D1 = N2 // g, D1 // g
        return FastZRat._mk(F, N1 * N2, D1 * D2, reduce=False)

    __rmul__ = __mul__

    def inverse(self) -> "FastZRat":
        if self.N.is_zero():
            raise ZeroDivisionError("inverse of 0 in K(z)")
        return FastZRat._mk(self.F, self.D, self.N, reduce=False)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        if e == 0:
            return FastZRat.one(self.F)
        return FastZRat._make(self.F, self.N ** e, self.D ** e)

    def __eq__(self, o):
        if isinstance(o, FastZRat):
            return self.N == o.N and self.D == o.D
        c = self._co(o)
        if c is None:
            return NotImplemented
        return self == c

    def __hash__(self):
        h = self._h
        if h is None:
            h = self._h = hash((str(self.N), str(self.D)))
        return h

    def subst(self, a: RatFunc, b: RatFunc, c: RatFunc, d: RatFunc) -> "FastZRat":
        """f((a z + b)/(c z + d)); entries are scaled to polynomials first."""
        F = self.F
        dn, dd = self.N.degrees()[0], self.D.degrees()[0]
        if dn <= 0 and dd <= 0:
            return self
        ctx = self._ctx(F)
        L = self._lcm_dens(F, (a, b, c, d))

        def pol(x, zexp):
            if not x.n:
                return ctx.constant(0)
            return FastZRat._kpoly(F, F.pmul(x.n, F.pdivmod(L, x.d)[0]), zexp)

        A = pol(a, 1) + pol(b, 0)
        C = pol(c, 1) + pol(d, 0)
        top = max(dn, dd)
        Ap, Cp = [ctx.constant(1)], [ctx.constant(1)]
        for _ in range(top):
            Ap.append(Ap[-1] * A)
            Cp.append(Cp[-1] * C)

        def homog(P):
            acc = ctx.constant(0)
            for i, cs in self._zcoeffs(P).items():
                Ti = ctx.from_dict({(0, j): v for j, v in cs.items()})
                acc = acc + Ti * Ap[i] * Cp[top - i]
            return acc

        D = homog(self.D)
        if D.is_zero():
            raise ZeroDivisionError("substitution hits a pole identically")
        return FastZRat._mk(F, homog(self.N), D)

    def __call__(self, x: RatFunc) -> RatFunc:
        n, d = self._views()
        return zeval(n, x) / zeval(d, x)

    def __str__(self):
        n, d = self._views()
        ns = _zstr(n)
        return ns if len(d) == 1 else f"({ns})/({_zstr(d)})"

    def zdegree(self) -> tuple[int, int]:
        dn = self.N.degrees()[0] if not self.N.is_zero() else -1
        return dn, self.D.degrees()[0]

    def _numer(self) -> "FastZRat":
        return FastZRat._make(self.F, self.N, self._ctx(self.F).constant(1))

    def _denom(self) -> "FastZRat":
        return FastZRat._make(self.F, self.D, self._ctx(self.F).constant(1))

    def _phyper(self, r: int) -> "FastZRat":
        if r == 0:
            return self
        p = self.F.p
        out = {}
        for (i, j), c in self.N.to_dict().items():
            if i >= r:
                b = bn.binom(i, r, p)
                if b:
                    out[(i - r, j)] = int(c) * b % p
        N = self._ctx(self.F).from_dict(out)
        return FastZRat._mk(self.F, N, self.D, reduce=not self.D.is_one())


def _trim_t(c: list) -> tuple:
    n = len(c)
    while n and not c[n - 1]:
        n -= 1
    return tuple(c[:n])


def _zstr(a: tuple) -> str:
    if not a:
        return "0"
    parts = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if not c.n:
            continue
        m = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
        if not m:
            parts.append(str(c))
        elif c.is_one():
            parts.append(m)
        else:
            parts.append(f"({c})*{m}")
    return " + ".join(parts)


def _as_k(F: GF, x) -> RatFunc:
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, int):
        return RatFunc.const(F, F.from_int(x))
    if isinstance(x, FqPoly):
        return RatFunc.raw(F, x.c)
    raise TypeError(f"cannot coerce {x!r} into F_q(T)")


def _znormalize(n: tuple, d: tuple, F: GF) -> tuple[tuple, tuple]:
    one = RatFunc.raw(F, (1,), (1,))
    if not n:
        return (), (one,)
    if len(d) > 1 and len(n) > 1:
        g = zgcd(n, d)
        if len(g) > 1:
            n = zdivmod(n, g)[0]
            d = zdivmod(d, g)[0]
    lc = d[-1]
    if not (lc.n == (1,) and lc.d == (1,)):
        inv = lc.inverse()
        n = zscale(n, inv)
        d = zmonic(d)
    return n, d


# ---------------------------------------------------------------------------


class CoeffScalar:
    """An element of F_q(T)[pi, 1/pi], stored as {pi-exponent: coefficient}."""

    __slots__ = ("F", "t")

    def __init__(self, F: GF, terms: Mapping[int, RatFunc] | None = None):
        self.F = F
        self.t = {e: _as_k(F, c) for e, c in (terms or {}).items() if _as_k(F, c).n}

    @classmethod
    def raw(cls, F, t):
        r = cls.__new__(cls)
        r.F, r.t = F, t
        return r

    @classmethod
    def of(cls, c, e: int = 0, F: GF | None = None) -> "CoeffScalar":
        if isinstance(c, CoeffScalar):
            return c
        if F is None:
            F = c.F
        c = _as_k(F, c)
        return cls.raw(F, {e: c} if c.n else {})

    @classmethod
    def pi(cls, F: GF, e: int = 1) -> "CoeffScalar":
        return cls.raw(F, {e: RatFunc.raw(F, (1,), (1,))})

    @classmethod
    def zero(cls, F: GF) -> "CoeffScalar":
        return cls.raw(F, {})

    @classmethod
    def one(cls, F: GF) -> "CoeffScalar":
        return cls.raw(F, {0: RatFunc.raw(F, (1,), (1,))})

    def is_zero(self) -> bool:
        return not self.t

    def __bool__(self):
        return bool(self.t)

    def is_monomial(self) -> bool:
        return len(self.t) == 1

    def _co(self, o):
        if isinstance(o, CoeffScalar):
            return o
        if isinstance(o, (RatFunc, int, FqPoly)):
            return CoeffScalar.of(_as_k(self.F, o))
        return None

    def __add__(self, o):
        o = self._co(o)
        if o is None:
            return NotImplemented
        if not o.t:
            return self
        if not self.t:
            return o
        r = dict(self.t)
        for e, c in o.t.items():
            if e in r:
                s = r[e] + c
                if s.n:
                    r[e] = s
                else:
                    del r[e]
            else:
                r[e] = c
        return CoeffScalar.raw(self.F, r)

    __radd__ = __add__

    def __neg__(self):
        return CoeffScalar.raw(self.F, {e: -c for e, c in self.t.items()})

    def __sub__(self, o):
        o = self._co(o)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, o):
        o = self._co(o)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, o):
        o = self._co(o)
        if o is None:
            return NotImplemented
        if not self.t or not o.t:
            return CoeffScalar.raw(self.F, {})
        if len(o.t) == 1:
            (e2, c2), = o.t.items()
            return CoeffScalar.raw(self.F, {e + e2: c * c2 for e, c in self.t.items()})
        r: dict = {}
        for e1, c1 in self.t.items():
            for e2, c2 in o.t.items():
                e = e1 + e2
                v = c1 * c2
                if e in r:
                    v = r[e] + v
                r[e] = v
        return CoeffScalar.raw(self.F, {e: c for e, c in r.items() if c.n})

    __rmul__ = __mul__

    def inverse(self) -> "CoeffScalar":
        if len(self.t) != 1:
            raise ZeroDivisionError("only pi-monomials are invertible")
        (e, c), = self.t.items()
        return CoeffScalar.raw(self.F, {-e: c.inverse()})

    def __truediv__(self, o):
        o = self._co(o)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        r = CoeffScalar.one(self.F)
        a = self
        while n:
            if n & 1:
                r = r * a
            a = a * a
            n >>= 1
        return r

    def __eq__(self, o):
        if isinstance(o, CoeffScalar):
            return self.t == o.t
        c = self._co(o)
        if c is None:
            return NotImplemented
        return self.t == c.t

    def __hash__(self):
        return hash(tuple(sorted(self.t.items(), key=lambda x: x[0])))

    def pi_free(self) -> RatFunc:
        """The coefficient of pi^0 when that is the only term."""
        if not self.t:
            return RatFunc.raw(self.F, (), (1,))
        if set(self.t) != {0}:
            raise ValueError("scalar involves pi")
        return self.t[0]

    def __repr__(self):
        return f"CoeffScalar({self})"

    def __str__(self):
        if not self.t:
            return "0"
        parts = []
        for e in sorted(self.t):
            c = self.t[e]
            pe = "" if e == 0 else ("pi" if e == 1 else f"pi^{e}")
            if not pe:
                parts.append(str(c))
            elif c.is_one():
                parts.append(pe)
            else:
                parts.append(f"({c})*{pe}")
        return " + ".join(parts)


def k_field(q: int, modulus=None) -> GF:
    return get_field(q, modulus)
