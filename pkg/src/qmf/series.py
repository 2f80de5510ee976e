"""Truncated Laurent series in the Carlitz uniformizer u.

A :class:`USeries` stores the coefficients of u^val, ..., u^(prec-1); every
exponent >= prec is unknown.  Arithmetic propagates precision exactly as
the O(u^prec) calculus dictates, so a result never claims more than its
inputs determine.
"""

from __future__ import annotations

from typing import Iterable

from .errors import PrecisionLoss
from .fields import GF, FqPoly, RatFunc
from .scalars import CoeffScalar, _as_k


def _cs(F: GF, x) -> CoeffScalar:
    if isinstance(x, CoeffScalar):
        return x
    return CoeffScalar.of(_as_k(F, x), 0, F)


class USeries:
    __slots__ = ("F", "val", "c", "prec")

    def __init__(self, F: GF, coeffs: Iterable = (), val: int = 0, prec: int | None = None):
        c = [_cs(F, x) for x in coeffs]
        if prec is None:
            prec = val + len(c)
        c = c[: max(prec - val, 0)]
        c += [CoeffScalar.zero(F)] * (prec - val - len(c))
        self._set(F, c, val, prec)

    def _set(self, F, c, val, prec):
        i = 0
        while i < len(c) and not c[i]:
            i += 1
        self.F = F
        self.val = val + i if i < len(c) else prec
        self.c = c[i:]
        self.prec = prec

    @classmethod
    def raw(cls, F, c, val, prec) -> "USeries":
        r = cls.__new__(cls)
        r._set(F, c, val, prec)
        return r

    @classmethod
    def zero(cls, F: GF, prec: int) -> "USeries":
        return cls.raw(F, [], prec, prec)

    @classmethod
    def const(cls, F: GF, x, prec: int) -> "USeries":
        return cls.monomial(F, x, 0, prec)

    @classmethod
    def one(cls, F: GF, prec: int) -> "USeries":
        return cls.const(F, 1, prec)

    @classmethod
    def monomial(cls, F: GF, x, e: int, prec: int) -> "USeries":
        if e >= prec:
            return cls.zero(F, prec)
        return cls(F, [x], e, prec)

    @classmethod
    def u(cls, F: GF, prec: int) -> "USeries":
        return cls.monomial(F, 1, 1, prec)

    # -- access ------------------------------------------------------------
    @property
    def valuation(self) -> int:
        return self.val

    def is_zero(self) -> bool:
        """Zero to the known precision."""
        return not self.c

    def coeff(self, e: int) -> CoeffScalar:
        if e >= self.prec:
            raise PrecisionLoss(f"coefficient of u^{e} unknown", self.prec)
        if e < self.val:
            return CoeffScalar.zero(self.F)
        return self.c[e - self.val]

    def coeffs(self, start: int | None = None) -> list[CoeffScalar]:
        """Dense coefficients from ``start`` (default: valuation) up to prec - 1."""
        s = self.val if start is None else start
        return [self.coeff(e) for e in range(s, self.prec)]

    def truncate(self, prec: int) -> "USeries":
        if prec > self.prec:
            raise PrecisionLoss(f"cannot raise precision from {self.prec} to {prec}", self.prec)
        return USeries.raw(self.F, self.c[: max(prec - self.val, 0)], min(self.val, prec), prec)

    # -- ring operations ---------------------------------------------------
    def __add__(self, o):
        if not isinstance(o, USeries):
            if isinstance(o, (CoeffScalar, RatFunc, int, FqPoly)):
                o = USeries.const(self.F, o, max(self.prec, 1))
            else:
                return NotImplemented
        prec = min(self.prec, o.prec)
        val = min(self.val, o.val, prec)
        n = prec - val
        r = [CoeffScalar.zero(self.F)] * n
        for s in (self, o):
            off = s.val - val
            for i, x in enumerate(s.c):
                if off + i >= n:
                    break
                if x:
                    r[off + i] = r[off + i] + x
        return USeries.raw(self.F, r, val, prec)

    __radd__ = __add__

    def __neg__(self):
        return USeries.raw(self.F, [-x for x in self.c], self.val, self.prec)

    def __sub__(self, o):
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def scale(self, s) -> "USeries":
        s = _cs(self.F, s)
        if not s:
            return USeries.zero(self.F, self.prec)
        return USeries.raw(self.F, [x * s for x in self.c], self.val, self.prec)

    def __mul__(self, o):
        if isinstance(o, (CoeffScalar, RatFunc, int, FqPoly)):
            return self.scale(o)
        if not isinstance(o, USeries):
            return NotImplemented
        F = self.F
        val = self.val + o.val
        prec = min(self.val + o.prec, o.val + self.prec)
        n = prec - val
        if n <= 0:
            return USeries.zero(F, prec)
        r: list = [None] * n
        b = o.c
        for i, x in enumerate(self.c[:n]):
            if not x:
                continue
            for j in range(min(len(b), n - i)):
                y = b[j]
                if not y:
                    continue
                t = x * y
                k = i + j
                r[k] = t if r[k] is None else r[k] + t
        zero = CoeffScalar.zero(F)
        return USeries.raw(F, [zero if x is None else x for x in r], val, prec)

    __rmul__ = __mul__

    def inverse(self) -> "USeries":
        """1/f; the leading coefficient must be a pi-monomial."""
        if not self.c:
            raise PrecisionLoss("inverse of a series that is zero to its precision", self.prec)
        F = self.F
        a = self.c
        v = self.val
        prec = self.prec - 2 * v
        n = prec + v
        if n <= 0:
            return USeries.zero(F, prec)
        inv0 = a[0].inverse()
        b = [inv0]
        for k in range(1, n):
            acc = CoeffScalar.zero(F)
            for i in range(1, min(k, len(a) - 1) + 1):
                if a[i] and b[k - i]:
                    acc = acc + a[i] * b[k - i]
            b.append(-(acc * inv0))
        return USeries.raw(F, b, -v, prec)

    def __truediv__(self, o):
        if isinstance(o, USeries):
            return self * o.inverse()
        return self.scale(_cs(self.F, o).inverse())

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        if e == 0:
            return USeries.one(self.F, max(self.prec - self.val, 1))
        a = self
        r = None
        while e:
            if e & 1:
                r = a if r is None else r * a
            e >>= 1
            if e:
                a = a * a
        return r

    def nth_root(self, n: int, lead_root=None) -> "USeries":
        """The n-th root with leading coefficient ``lead_root`` (default 1), p not dividing n.

        Newton iteration y <- y - (y^n - x) / (n y^(n-1)); the leading
        coefficient of the input must equal lead_root^n.
        """
        F = self.F
        if n % F.p == 0:
            raise ValueError("n must be prime to p")
        if not self.c or self.val % n:
            raise ValueError("valuation must be a multiple of n")
        r = _cs(F, 1 if lead_root is None else lead_root)
        if r ** n != self.c[0]:
            raise ValueError("leading coefficient is not lead_root^n")
        v = self.val // n
        target = self.prec - self.val + v
        y = USeries.monomial(F, r, v, v + 1)
        inv_n = pow(n % F.p, -1, F.p)
        known = 1
        while known < target - v:
            known = min(2 * known, target - v)
            y = USeries.raw(F, list(y.c) + [CoeffScalar.zero(F)] * (v + known - y.prec), y.val, v + known)
            x = self.truncate(min(self.prec, self.val + known))
            corr = ((y ** n) - x) * ((y ** (n - 1)).inverse()) * inv_n
            y = (y - corr).truncate(v + known)
        return y

    def subs_poly(self, coeffs: list) -> "USeries":
        """sum_j coeffs[j] * self^j (Horner); needs valuation >= 0."""
        acc = USeries.zero(self.F, self.prec)
        for cj in reversed(coeffs):
            acc = acc * self
            if cj:
                acc = acc + USeries.const(self.F, cj, acc.prec)
        return acc

    # -- comparison --------------------------------------------------------
    def equal_to(self, o: "USeries", prec: int | None = None) -> bool:
        """Equality of all coefficients below ``prec`` (default: common precision)."""
        P = min(self.prec, o.prec) if prec is None else prec
        if prec is not None and (self.prec < prec or o.prec < prec):
            raise PrecisionLoss(f"compare to u^{prec} needs that much precision", min(self.prec, o.prec))
        lo = min(self.val, o.val)
        return all(self.coeff(e) == o.coeff(e) for e in range(lo, P))

    def __eq__(self, o):
        if not isinstance(o, USeries):
            return NotImplemented
        return self.equal_to(o)

    __hash__ = None

    def __repr__(self):
        return f"USeries({self})"

    def __str__(self):
        parts = []
        for i, x in enumerate(self.c):
            if not x:
                continue
            e = self.val + i
            m = "" if e == 0 else ("u" if e == 1 else f"u^{e}")
            if not m:
                parts.append(f"({x})")
            elif x == CoeffScalar.one(self.F):
                parts.append(m)
            else:
                parts.append(f"({x})*{m}")
        parts.append(f"O(u^{self.prec})")
        return " + ".join(parts)
