"""Finite fields F_q, the polynomial ring F_q[T] and its fraction field K = F_q(T).

Elements of F_q are plain integers ``0 <= a < q``; the base-p digits of ``a``
are the coordinates of the element in the basis 1, x, ..., x^(r-1) of
F_p[x]/(modulus).  Polynomials in T are trimmed tuples of such integers,
lowest degree first, with ``()`` for zero.  The tuple kernel lives on
:class:`GF`; :class:`FqPoly` and :class:`RatFunc` are the user-facing
wrappers.
"""

from __future__ import annotations

import functools
from typing import Iterable, Sequence

from .errors import DegenerateMatrix

try:  # optional C kernel for prime fields
    import flint as _flint
except ImportError:  # pragma: no cover
    _flint = None

_FLINT_MIN = 24  # combined length above which the C kernel is used

# Conway polynomials, low degree first, over F_p.
CONWAY = {
    4: (1, 1, 1),
    8: (1, 1, 0, 1),
    9: (2, 2, 1),
    16: (1, 1, 0, 0, 1),
    25: (2, 4, 1),
    27: (1, 2, 0, 1),
}

Poly = tuple


def prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise ValueError(f"q={q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    r, n = 0, q
    while n % p == 0:
        n //= p
        r += 1
    if n != 1:
        raise ValueError(f"q={q} is not a prime power")
    return p, r


def _trim(c: list) -> tuple:
    n = len(c)
    while n and not c[n - 1]:
        n -= 1
    return tuple(c[:n])


def _fp_poly_mulmod(a, b, mod, p):
    r = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                r[i + j] = (r[i + j] + x * y) % p
    d = len(mod) - 1
    for i in range(len(r) - 1, d - 1, -1):
        c = r[i]
        if c:
            for j in range(d + 1):
                r[i - d + j] = (r[i - d + j] - c * mod[j]) % p
    return (r + [0] * d)[:d]


def _fp_is_irreducible(f: Sequence[int], p: int) -> bool:
    F = get_field(p)
    return F.is_irreducible(_trim(list(f)))


class GF:
    """The finite field with q elements together with its polynomial kernel."""

    def __init__(self, q: int, modulus: Sequence[int] | None = None):
        p, r = prime_power(q)
        self.q, self.p, self.r = q, p, r
        self.prime = r == 1
        if r == 1:
            self.modulus = (0, 1)
        else:
            if modulus is None:
                modulus = CONWAY.get(q)
                if modulus is None:
                    modulus = self._search_modulus(p, r)
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != r + 1 or modulus[-1] != 1:
                raise ValueError("modulus must be monic of degree r")
            if not _fp_is_irreducible(modulus, p):
                raise ValueError("modulus is reducible")
            self.modulus = modulus
        self._build_tables()
        self.zero, self.one = 0, 1
        self.fast = self.prime and _flint is not None

    def _fl(self, a: Poly):
        return _flint.nmod_poly(list(a), self.p)

    @staticmethod
    def _unfl(f) -> Poly:
        return tuple(int(x) for x in f.coeffs())

    # -- construction ------------------------------------------------------
    @staticmethod
    def _search_modulus(p, r):
        import itertools
        for tail in itertools.product(range(p), repeat=r):
            f = tuple(tail) + (1,)
            if f[0] and _fp_is_irreducible(f, p):
                return f
        raise ValueError("no irreducible modulus found")

    def _digits(self, a: int) -> list[int]:
        d = []
        for _ in range(self.r):
            d.append(a % self.p)
            a //= self.p
        return d

    def _undigits(self, d: Sequence[int]) -> int:
        a = 0
        for c in reversed(list(d)):
            a = a * self.p + c
        return a

    def _build_tables(self):
        q, p = self.q, self.p
        if self.prime:
            self.add_t = [[(a + b) % p for b in range(q)] for a in range(q)]
            self.mul_t = [[(a * b) % p for b in range(q)] for a in range(q)]
        else:
            dig = [self._digits(a) for a in range(q)]
            self.add_t = [[self._undigits([(x + y) % p for x, y in zip(dig[a], dig[b])])
                           for b in range(q)] for a in range(q)]
            self.mul_t = [[self._undigits(_fp_poly_mulmod(dig[a], dig[b], self.modulus, p))
                           for b in range(q)] for a in range(q)]
        self.neg_t = [self.add_t[a].index(0) for a in range(q)]
        self.inv_t = [0] + [self.mul_t[a].index(1) for a in range(1, q)]

    def __repr__(self):
        return f"GF({self.q})"

    def __reduce__(self):
        return (get_field, (self.q, None if self.prime else self.modulus))

    # -- scalars -----------------------------------------------------------
    def add(self, a, b):
        return self.add_t[a][b]

    def sub(self, a, b):
        return self.add_t[a][self.neg_t[b]]

    def neg(self, a):
        return self.neg_t[a]

    def mul(self, a, b):
        return self.mul_t[a][b]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in F_q")
        return self.inv_t[a]

    def div(self, a, b):
        return self.mul_t[a][self.inv(b)]

    def pow(self, a, n):
        if n < 0:
            a, n = self.inv(a), -n
        r = 1
        while n:
            if n & 1:
                r = self.mul_t[r][a]
            a = self.mul_t[a][a]
            n >>= 1
        return r

    def from_int(self, n: int) -> int:
        """Image of the integer n under Z -> F_p -> F_q."""
        return n % self.p

    def elements(self) -> range:
        return range(self.q)

    def units(self) -> range:
        return range(1, self.q)

    @functools.cached_property
    def primitive_element(self) -> int:
        for g in range(1, self.q):
            x, order = g, 1
            while x != 1:
                x = self.mul_t[x][g]
                order += 1
            if order == self.q - 1:
                return g
        raise AssertionError

    # -- polynomials in T --------------------------------------------------
    def padd(self, a: Poly, b: Poly) -> Poly:
        if len(a) < len(b):
            a, b = b, a
        if not b:
            return a
        r = list(a)
        add = self.add_t
        for i, y in enumerate(b):
            r[i] = add[r[i]][y]
        if len(r) == len(b):
            return _trim(r)
        return tuple(r)

    def pneg(self, a: Poly) -> Poly:
        n = self.neg_t
        return tuple(n[x] for x in a)

    def psub(self, a: Poly, b: Poly) -> Poly:
        return self.padd(a, self.pneg(b))

    def pscale(self, a: Poly, c: int) -> Poly:
        if c == 0:
            return ()
        if c == 1:
            return a
        row = self.mul_t[c]
        return tuple(row[x] for x in a)

    def pmul(self, a: Poly, b: Poly) -> Poly:
        if not a or not b:
            return ()
        if len(a) == 1:
            return self.pscale(b, a[0])
        if len(b) == 1:
            return self.pscale(a, b[0])
        if self.fast and len(a) + len(b) > _FLINT_MIN:
            return self._unfl(self._fl(a) * self._fl(b))
        if self.prime:
            p = self.p
            r = [0] * (len(a) + len(b) - 1)
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        r[i + j] += x * y
            return tuple(c % p for c in r)
        add, mul = self.add_t, self.mul_t
        r = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                row = mul[x]
                for j, y in enumerate(b):
                    r[i + j] = add[r[i + j]][row[y]]
        return tuple(r)

    def pdivmod(self, a: Poly, b: Poly) -> tuple[Poly, Poly]:
        if not b:
            raise ZeroDivisionError("polynomial division by zero")
        db = len(b) - 1
        if len(a) - 1 < db:
            return (), a
        if self.fast and len(a) + len(b) > _FLINT_MIN:
            qt, r = divmod(self._fl(a), self._fl(b))
            return self._unfl(qt), self._unfl(r)
        inv_lc = self.inv_t[b[-1]]
        r = list(a)
        qt = [0] * (len(a) - db)
        add, mul, neg = self.add_t, self.mul_t, self.neg_t
        for i in range(len(a) - 1, db - 1, -1):
            c = r[i]
            if c:
                c = mul[c][inv_lc]
                qt[i - db] = c
                nc = neg[c]
                row = mul[nc]
                for j in range(db + 1):
                    r[i - db + j] = add[r[i - db + j]][row[b[j]]]
        return _trim(qt), _trim(r[:db])

    def pmod(self, a: Poly, b: Poly) -> Poly:
        return self.pdivmod(a, b)[1]

    def pmonic(self, a: Poly) -> Poly:
        if not a or a[-1] == 1:
            return a
        return self.pscale(a, self.inv_t[a[-1]])

    def pgcd(self, a: Poly, b: Poly) -> Poly:
        if self.fast and len(a) + len(b) > _FLINT_MIN:
            if not a:
                return self.pmonic(b)
            if not b:
                return self.pmonic(a)
            return self.pmonic(self._unfl(self._fl(a).gcd(self._fl(b))))
        while b:
            a, b = b, self.pdivmod(a, b)[1]
        return self.pmonic(a)

    def pxgcd(self, a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
        """Return (g, s, t) with s*a + t*b = g monic."""
        r0, r1 = a, b
        s0, s1 = (1,), ()
        t0, t1 = (), (1,)
        while r1:
            qt, r2 = self.pdivmod(r0, r1)
            r0, r1 = r1, r2
            s0, s1 = s1, self.psub(s0, self.pmul(qt, s1))
            t0, t1 = t1, self.psub(t0, self.pmul(qt, t1))
        if not r0:
            return (), (), ()
        c = self.inv_t[r0[-1]]
        return self.pscale(r0, c), self.pscale(s0, c), self.pscale(t0, c)

    def ppow(self, a: Poly, n: int) -> Poly:
        r: Poly = (1,)
        while n:
            if n & 1:
                r = self.pmul(r, a)
            a = self.pmul(a, a)
            n >>= 1
        return r

    def ppowmod(self, a: Poly, n: int, m: Poly) -> Poly:
        r: Poly = (1,)
        a = self.pmod(a, m)
        while n:
            if n & 1:
                r = self.pmod(self.pmul(r, a), m)
            a = self.pmod(self.pmul(a, a), m)
            n >>= 1
        return r

    def peval(self, a: Poly, x: int) -> int:
        r = 0
        add, mul = self.add_t, self.mul_t
        for c in reversed(a):
            r = add[mul[r][x]][c]
        return r

    def is_irreducible(self, f: Poly) -> bool:
        n = len(f) - 1
        if n < 1:
            return False
        if n == 1:
            return True
        f = self.pmonic(f)
        x = (0, 1)
        xp = x
        for _ in range(n // 2):
            xp = self.ppowmod(xp, self.q, f)
            if len(self.pgcd(self.psub(xp, x), f)) > 1:
                return False
        return True

    def monic_polys(self, degree: int):
        """All monic polynomials of the given degree, in lexicographic order."""
        import itertools
        for tail in itertools.product(range(self.q), repeat=degree):
            yield tuple(reversed(tail)) + (1,) if degree else (1,)

    def polys_below(self, degree: int):
        """All polynomials of degree < degree (including 0), lexicographic."""
        import itertools
        for c in itertools.product(range(self.q), repeat=degree):
            yield _trim(list(reversed(c)))


@functools.lru_cache(maxsize=None)
def _field(q: int, modulus: tuple | None) -> GF:
    return GF(q, modulus)


def get_field(q: int, modulus: Sequence[int] | None = None) -> GF:
    if modulus is not None:
        m = tuple(int(c) for c in modulus)
        if _field(q, None).modulus == m or prime_power(q)[1] == 1:
            return _field(q, None)
        return _field(q, m)
    return _field(q, None)


class FqPoly:
    """A polynomial in F_q[T]."""

    __slots__ = ("F", "c")

    def __init__(self, F: GF, coeffs: Iterable[int] = ()):
        self.F = F
        self.c = _trim([int(x) for x in coeffs])

    @classmethod
    def T(cls, F: GF) -> "FqPoly":
        return cls(F, (0, 1))

    @classmethod
    def const(cls, F: GF, a: int) -> "FqPoly":
        return cls(F, (a,))

    def _wrap(self, c):
        r = FqPoly.__new__(FqPoly)
        r.F, r.c = self.F, c
        return r

    def _co(self, o):
        if isinstance(o, FqPoly):
            return o.c
        if isinstance(o, int):
            return _trim([self.F.from_int(o)])
        return NotImplemented

    def degree(self) -> int:
        return len(self.c) - 1 if self.c else -1

    def lc(self) -> int:
        return self.c[-1] if self.c else 0

    def is_zero(self) -> bool:
        return not self.c

    def is_monic(self) -> bool:
        return bool(self.c) and self.c[-1] == 1

    def monic(self) -> "FqPoly":
        return self._wrap(self.F.pmonic(self.c))

    def __add__(self, o):
        oc = self._co(o)
        return NotImplemented if oc is NotImplemented else self._wrap(self.F.padd(self.c, oc))

    __radd__ = __add__

    def __sub__(self, o):
        oc = self._co(o)
        return NotImplemented if oc is NotImplemented else self._wrap(self.F.psub(self.c, oc))

    def __rsub__(self, o):
        oc = self._co(o)
        return NotImplemented if oc is NotImplemented else self._wrap(self.F.psub(oc, self.c))

    def __neg__(self):
        return self._wrap(self.F.pneg(self.c))

    def __mul__(self, o):
        oc = self._co(o)
        return NotImplemented if oc is NotImplemented else self._wrap(self.F.pmul(self.c, oc))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        return self._wrap(self.F.ppow(self.c, n))

    def __divmod__(self, o):
        qt, r = self.F.pdivmod(self.c, self._co(o))
        return self._wrap(qt), self._wrap(r)

    def __floordiv__(self, o):
        return divmod(self, o)[0]

    def __mod__(self, o):
        return divmod(self, o)[1]

    def gcd(self, o: "FqPoly") -> "FqPoly":
        return self._wrap(self.F.pgcd(self.c, o.c))

    def xgcd(self, o: "FqPoly"):
        g, s, t = self.F.pxgcd(self.c, o.c)
        return self._wrap(g), self._wrap(s), self._wrap(t)

    def is_irreducible(self) -> bool:
        return self.F.is_irreducible(self.c)

    def __call__(self, x: int) -> int:
        return self.F.peval(self.c, x)

    def __eq__(self, o):
        if isinstance(o, FqPoly):
            return self.F is o.F and self.c == o.c
        if isinstance(o, int):
            return self.c == _trim([self.F.from_int(o)])
        return NotImplemented

    def __hash__(self):
        return hash(("FqPoly", self.F.q, self.c))

    def __repr__(self):
        return f"FqPoly({poly_str(self.F, self.c)})"

    def to_ratfunc(self) -> "RatFunc":
        return RatFunc(self.F, self.c)


def _elem_str(F: GF, a: int) -> str:
    if F.prime:
        return str(a)
    d = F._digits(a)
    terms = []
    for i, c in enumerate(d):
        if c:
            terms.append(("" if c == 1 and i else str(c)) + ("" if i == 0 else ("w" if i == 1 else f"w^{i}")))
    return "(" + "+".join(terms) + ")" if len(terms) > 1 else (terms[0] if terms else "0")


def poly_str(F: GF, c: Poly, var: str = "T") -> str:
    if not c:
        return "0"
    terms = []
    for i in range(len(c) - 1, -1, -1):
        a = c[i]
        if not a:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        coef = _elem_str(F, a)
        if mono and a == 1:
            terms.append(mono)
        elif mono:
            terms.append(f"{coef}*{mono}")
        else:
            terms.append(coef)
    return " + ".join(terms)


class RatFunc:
    """An element of K = F_q(T), kept as num/den with den monic and gcd 1."""

    __slots__ = ("F", "n", "d")

    def __init__(self, F: GF, num: Iterable[int] = (), den: Iterable[int] = (1,), _raw=False):
        self.F = F
        if _raw:
            self.n, self.d = num, den
            return
        n = _trim([int(x) % F.q for x in num]) if not isinstance(num, tuple) else _trim(list(num))
        d = _trim([int(x) % F.q for x in den]) if not isinstance(den, tuple) else _trim(list(den))
        if not d:
            raise ZeroDivisionError("zero denominator")
        self.n, self.d = _normalize(F, n, d)

    @classmethod
    def raw(cls, F: GF, n: Poly, d: Poly = (1,)) -> "RatFunc":
        r = cls.__new__(cls)
        r.F, r.n, r.d = F, n, d
        return r

    @classmethod
    def from_poly(cls, F: GF, p) -> "RatFunc":
        if isinstance(p, FqPoly):
            p = p.c
        return cls.raw(F, p, (1,))

    @classmethod
    def const(cls, F: GF, a: int) -> "RatFunc":
        return cls.raw(F, (a,) if a else (), (1,))

    @classmethod
    def T(cls, F: GF) -> "RatFunc":
        return cls.raw(F, (0, 1), (1,))

    @property
    def num(self) -> FqPoly:
        return FqPoly(self.F, self.n)

    @property
    def den(self) -> FqPoly:
        return FqPoly(self.F, self.d)

    def is_zero(self) -> bool:
        return not self.n

    def __bool__(self):
        return bool(self.n)

    def is_one(self) -> bool:
        return self.n == (1,) and self.d == (1,)

    def is_poly(self) -> bool:
        return self.d == (1,)

    def is_const(self) -> bool:
        return self.d == (1,) and len(self.n) <= 1

    def const_value(self) -> int:
        if not self.is_const():
            raise ValueError("not a constant")
        return self.n[0] if self.n else 0

    def degree(self) -> int:
        """deg num - deg den (the negative of the valuation at infinity)."""
        if not self.n:
            raise ValueError("degree of 0")
        return len(self.n) - len(self.d)

    def _co(self, o):
        if isinstance(o, RatFunc):
            return o
        if isinstance(o, int):
            return RatFunc.const(self.F, self.F.from_int(o))
        if isinstance(o, FqPoly):
            return RatFunc.raw(self.F, o.c)
        return None

    def __add__(self, o):
        o = self._co(o)
        if o is None:
            return NotImplemented
        F = self.F
        if not o.n:
            return self
        if not self.n:
            return o
        if self.d == o.d:
            if self.d == (1,):
                return RatFunc.raw(F, F.padd(self.n, o.n))
            n = F.padd(self.n, o.n)
            if not n:
                return RatFunc.raw(F, (), (1,))
            return RatFunc.raw(F, *_normalize(F, n, self.d))
        if o.d == (1,):
            return RatFunc.raw(F, F.padd(self.n, F.pmul(o.n, self.d)), self.d)
        if self.d == (1,):
            return RatFunc.raw(F, F.padd(o.n, F.pmul(self.n, o.d)), o.d)
        g = F.pgcd(self.d, o.d)
        if g == (1,):
            n = F.padd(F.pmul(self.n, o.d), F.pmul(o.n, self.d))
            return RatFunc.raw(F, n, F.pmul(self.d, o.d))
        d1 = F.pdivmod(self.d, g)[0]
        d2 = F.pdivmod(o.d, g)[0]
        n = F.padd(F.pmul(self.n, d2), F.pmul(o.n, d1))
        if not n:
            return RatFunc.raw(F, (), (1,))
        return RatFunc.raw(F, *_normalize(F, n, F.pmul(d1, o.d)))

    __radd__ = __add__

    def __neg__(self):
        return RatFunc.raw(self.F, self.F.pneg(self.n), self.d)

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
            return RatFunc.raw(F, (), (1,))
        if self.d == (1,) and o.d == (1,):
            return RatFunc.raw(F, F.pmul(self.n, o.n))
        n1, d1, n2, d2 = self.n, self.d, o.n, o.d
        if d2 != (1,) and len(n1) > 1:
            g = F.pgcd(n1, d2)
            if g != (1,):
                n1 = F.pdivmod(n1, g)[0]
                d2 = F.pdivmod(d2, g)[0]
        if d1 != (1,) and len(n2) > 1:
            g = F.pgcd(n2, d1)
            if g != (1,):
                n2 = F.pdivmod(n2, g)[0]
                d1 = F.pdivmod(d1, g)[0]
        n = F.pmul(n1, n2)
        d = F.pmul(d1, d2)
        if d[-1] != 1:
            c = F.inv_t[d[-1]]
            n, d = F.pscale(n, c), F.pscale(d, c)
        return RatFunc.raw(F, n, d)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self.n:
            raise ZeroDivisionError("inverse of 0 in F_q(T)")
        F = self.F
        c = F.inv_t[self.n[-1]]
        return RatFunc.raw(F, F.pscale(self.d, c), F.pscale(self.n, c))

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
        F = self.F
        if e == 0:
            return RatFunc.raw(F, (1,), (1,))
        return RatFunc.raw(F, F.ppow(self.n, e), F.ppow(self.d, e))

    def __eq__(self, o):
        if isinstance(o, RatFunc):
            return self.n == o.n and self.d == o.d and self.F is o.F
        if isinstance(o, (int, FqPoly)):
            return self == self._co(o)
        return NotImplemented

    def __hash__(self):
        return hash((self.n, self.d))

    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        ns = poly_str(self.F, self.n)
        if self.d == (1,):
            return ns
        ds = poly_str(self.F, self.d)
        return f"({ns})/({ds})"

    def frobenius(self) -> "RatFunc":
        """x -> x^p."""
        return self ** self.F.p


def _normalize(F: GF, n: Poly, d: Poly) -> tuple[Poly, Poly]:
    if not n:
        return (), (1,)
    if len(d) > 1:
        g = F.pgcd(n, d)
        if g != (1,):
            n = F.pdivmod(n, g)[0]
            d = F.pdivmod(d, g)[0]
    if d[-1] != 1:
        c = F.inv_t[d[-1]]
        n, d = F.pscale(n, c), F.pscale(d, c)
    return n, d


class KField:
    """Convenience constructors for K = F_q(T)."""

    def __init__(self, q: int, modulus=None):
        self.F = get_field(q, modulus)
        self.q = q
        self.p = self.F.p

    def __call__(self, x) -> RatFunc:
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, int):
            return RatFunc.const(self.F, self.F.from_int(x))
        if isinstance(x, FqPoly):
            return RatFunc.raw(self.F, x.c)
        raise TypeError(x)

    @property
    def T(self) -> RatFunc:
        return RatFunc.T(self.F)

    def elem(self, a: int) -> RatFunc:
        """Embed the F_q element encoded by the integer a."""
        return RatFunc.const(self.F, a)

    def poly(self, coeffs) -> RatFunc:
        return RatFunc(self.F, coeffs)

    def frac(self, num, den) -> RatFunc:
        return RatFunc(self.F, num, den)


def check_unit(F: GF, det: RatFunc) -> int:
    """Return det as an F_q^* element or raise."""
    if not det.is_const() or det.is_zero():
        raise DegenerateMatrix("determinant is not a unit of F_q[T]")
    return det.const_value()
