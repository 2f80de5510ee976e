"""Symbolic ring of quasi-modular expressions.

An :class:`Expr` is a polynomial in *atoms* with coefficients in K(z).  The
atom ``pi`` may carry negative exponents.  Level-one atoms are the normalized
hyperderivatives ``D_j x`` of the generators ``x in {g, h, E}``, optionally
translated by an upper-triangular matrix in normal form: ``Sym(x, j, h)``
denotes ``z -> (D_j x)(h z)``.  Composition with any matrix of GL_2(K) is
closed on this ring: after factoring ``M = sigma * h`` the transformation law
of the generator under ``sigma in GL_2(A)`` is applied and the residual
matrix ``h`` is recorded on the atom.

Convention: ``hyper(f, n)`` is the un-normalized hyperderivative
``\\mathcal D_n``; the atom ``D_j x`` stores ``D_j = (-pi)^(-j) \\mathcal D_j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from . import binomial as bn
from .errors import UnsupportedBackend
from .fields import GF, FqPoly, RatFunc, get_field
from .matrix import Matrix2, hnf
from .scalars import CoeffScalar, ZRat, _as_k

# ---------------------------------------------------------------------------
# atoms


class Atom:
    """Protocol: hashable, ``sort_key``, ``weight(q)``, ``mtype(q)``."""

    __slots__ = ()
    negative_ok = False

    def sort_key(self) -> tuple:
        raise NotImplementedError

    def weight(self, q: int) -> int:
        raise NotImplementedError

    def mtype(self, q: int) -> int:
        raise NotImplementedError

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()


@dataclass(frozen=True)
class PiAtom(Atom):
    negative_ok = True

    def sort_key(self):
        return (0,)

    def weight(self, q):
        return 0

    def mtype(self, q):
        return 0

    def __str__(self):
        return "pi"


PI = PiAtom()

GENERATORS = ("g", "h", "E")


def gen_bigrade(base: str, q: int) -> tuple[int, int]:
    if base == "g":
        return q - 1, 0
    if base == "h":
        return q + 1, 1
    if base == "E":
        return 2, 1
    raise ValueError(base)


@dataclass(frozen=True)
class Sym(Atom):
    """``D_order base``, composed with ``shift`` when one is given."""

    base: str
    order: int = 0
    shift: Matrix2 | None = None

    def sort_key(self):
        return (1, GENERATORS.index(self.base), self.order, self.shift.key() if self.shift else ())

    def weight(self, q):
        return gen_bigrade(self.base, q)[0] + 2 * self.order

    def mtype(self, q):
        return gen_bigrade(self.base, q)[1] + self.order

    def __str__(self):
        s = self.base if self.order == 0 else f"D{self.order}[{self.base}]"
        if self.shift is not None:
            m = self.shift
            s = f"[{s}|({m.a},{m.b};0,{m.d})]"
        return s


Monomial = tuple  # tuple of (Atom, exponent), sorted by sort_key


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for at, e in b:
        ne = d.get(at, 0) + e
        if ne:
            d[at] = ne
        else:
            del d[at]
    return tuple(sorted(d.items(), key=lambda x: x[0].sort_key()))


def mono_str(m: Monomial) -> str:
    return "*".join(str(a) if e == 1 else f"{a}^{e}" for a, e in m) or "1"


# ---------------------------------------------------------------------------


class Expr:
    """Polynomial in atoms with K(z) coefficients."""

    __slots__ = ("F", "t")

    def __init__(self, F: GF, terms: dict | None = None):
        self.F = F
        self.t = {m: c for m, c in (terms or {}).items() if c}

    @classmethod
    def raw(cls, F: GF, t: dict) -> "Expr":
        r = cls.__new__(cls)
        r.F, r.t = F, t
        return r

    # -- constructors ------------------------------------------------------
    @classmethod
    def zero(cls, F: GF) -> "Expr":
        return cls.raw(F, {})

    @classmethod
    def one(cls, F: GF) -> "Expr":
        return cls.raw(F, {(): ZRat.one(F)})

    @classmethod
    def const(cls, F: GF, c) -> "Expr":
        if isinstance(c, Expr):
            return c
        if isinstance(c, CoeffScalar):
            return cls.raw(F, {((PI, e),) if e else (): ZRat.const(v) for e, v in c.t.items()})
        if isinstance(c, ZRat):
            return cls.raw(F, {(): c} if c else {})
        c = _as_k(F, c)
        return cls.raw(F, {(): ZRat.const(c)} if c.n else {})

    @classmethod
    def atom(cls, F: GF, a: Atom, e: int = 1) -> "Expr":
        if e < 0 and not a.negative_ok:
            raise ValueError("negative exponent on a non-invertible atom")
        if e == 0:
            return cls.one(F)
        return cls.raw(F, {((a, e),): ZRat.one(F)})

    @classmethod
    def pi(cls, F: GF, e: int = 1) -> "Expr":
        return cls.atom(F, PI, e)

    @classmethod
    def sym(cls, F: GF, base: str, order: int = 0, shift: Matrix2 | None = None) -> "Expr":
        return cls.atom(F, Sym(base, order, shift))

    @classmethod
    def zfun(cls, f: ZRat) -> "Expr":
        return cls.raw(f.F, {(): f} if f else {})

    # -- ring operations ---------------------------------------------------
    def _co(self, o):
        if isinstance(o, Expr):
            return o
        if isinstance(o, (ZRat, RatFunc, int, FqPoly, CoeffScalar)):
            return Expr.const(self.F, o)
        return None

    def is_zero(self) -> bool:
        return not self.t

    def __bool__(self):
        return bool(self.t)

    def __add__(self, o):
        o = self._co(o)
        if o is None:
            return NotImplemented
        if not o.t:
            return self
        if not self.t:
            return o
        r = dict(self.t)
        for m, c in o.t.items():
            v = r.get(m)
            if v is None:
                r[m] = c
            else:
                v = v + c
                if v:
                    r[m] = v
                else:
                    del r[m]
        return Expr.raw(self.F, r)

    __radd__ = __add__

    def __neg__(self):
        return Expr.raw(self.F, {m: -c for m, c in self.t.items()})

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
        if isinstance(o, ZRat):
            if not o:
                return Expr.raw(self.F, {})
            return Expr.raw(self.F, {m: c * o for m, c in self.t.items()})
        o = self._co(o)
        if o is None:
            return NotImplemented
        if not self.t or not o.t:
            return Expr.raw(self.F, {})
        r: dict = {}
        for m1, c1 in self.t.items():
            for m2, c2 in o.t.items():
                m = mono_mul(m1, m2)
                v = c1 * c2
                w = r.get(m)
                r[m] = v if w is None else w + v
        return Expr.raw(self.F, {m: c for m, c in r.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self.t) == 1:
                (m, c), = self.t.items()
                if all(a.negative_ok for a, _ in m):
                    return Expr.raw(self.F, {tuple((a, -e * (-n)) for a, e in m): c ** n})
            raise ZeroDivisionError("only pi-monomials are invertible in Expr")
        r = Expr.one(self.F)
        a = self
        while n:
            if n & 1:
                r = r * a
            n >>= 1
            if n:
                a = a * a
        return r

    def __truediv__(self, o):
        if isinstance(o, Expr):
            return self * (o ** -1)
        if isinstance(o, CoeffScalar):
            return self * Expr.const(self.F, o.inverse())
        if isinstance(o, ZRat):
            return self * o.inverse()
        return self * ZRat.const(_as_k(self.F, o).inverse())

    def __eq__(self, o):
        if isinstance(o, Expr):
            return self.t == o.t
        c = self._co(o)
        if c is None:
            return NotImplemented
        return self.t == c.t

    def __hash__(self):
        return hash(frozenset(self.t.items()))

    def __repr__(self):
        return f"Expr({self})"

    def __str__(self):
        if not self.t:
            return "0"
        parts = []
        for m in sorted(self.t, key=lambda m: [a.sort_key() + (e,) for a, e in m]):
            c = self.t[m]
            ms = mono_str(m)
            if c.is_one():
                parts.append(ms)
            elif not m:
                parts.append(f"({c})")
            else:
                parts.append(f"({c})*{ms}")
        return " + ".join(parts)

    # -- structure ---------------------------------------------------------
    def atoms(self) -> set:
        return {a for m in self.t for a, _ in m}

    def bigrades(self) -> set[tuple[int, int]]:
        q = self.F.q
        out = set()
        for m in self.t:
            k = sum(a.weight(q) * e for a, e in m)
            t = sum(a.mtype(q) * e for a, e in m)
            out.add((k, t % (q - 1) if q > 2 else 0))
        return out

    def is_homogeneous(self, k: int, mtype: int) -> bool:
        q = self.F.q
        target = (k, mtype % (q - 1) if q > 2 else 0)
        return all(b == target for b in self.bigrades())

    def is_z_free(self) -> bool:
        return all(c.is_const() for c in self.t.values())

    def is_scalar(self) -> bool:
        """True when only pi occurs among the atoms."""
        return all(a is PI or isinstance(a, PiAtom) for m in self.t for a, _ in m)

    def to_scalar(self) -> CoeffScalar:
        if not self.is_scalar() or not self.is_z_free():
            raise ValueError("not a scalar")
        out: dict = {}
        for m, c in self.t.items():
            e = m[0][1] if m else 0
            out[e] = c.const_value()
        return CoeffScalar.raw(self.F, out)

    def map_atoms(self, fn) -> "Expr":
        """Ring map sending each atom a to fn(a) (an Expr or None to keep it)."""
        cache: dict = {}
        out = Expr.zero(self.F)
        for m, c in self.t.items():
            term = Expr.raw(self.F, {(): c})
            for a, e in m:
                img = cache.get(a, 0)
                if img == 0:
                    img = fn(a)
                    cache[a] = img
                term = term * (Expr.atom(self.F, a, e) if img is None else img ** e)
            out = out + term
        return out

    def map_coeffs(self, fn) -> "Expr":
        r = {}
        for m, c in self.t.items():
            v = fn(c)
            if v:
                r[m] = v
        return Expr.raw(self.F, r)

    def compose(self, g: Matrix2) -> "Expr":
        """z -> f(g z)."""
        return compose(self, g)

    def hyper(self, n: int) -> "Expr":
        return hyper(self, n)


# ---------------------------------------------------------------------------
# level-one transformation data


def pi_pow(F: GF, e: int) -> Expr:
    return Expr.pi(F, e) if e else Expr.one(F)


def neg_pi_pow(F: GF, e: int) -> Expr:
    """(-pi)^e."""
    s = -1 if e % 2 else 1
    return pi_pow(F, e) * s


_ASSOC_CACHE: dict = {}


def symbol_assoc(F: GF, base: str, j: int) -> list[Expr]:
    """Coefficients of the associated polynomial of ``D_j base`` (untranslated)."""
    key = (F, base, j)
    hit = _ASSOC_CACHE.get(key)
    if hit is not None:
        return hit
    p, q = F.p, F.q
    if base in ("g", "h"):
        k = gen_bigrade(base, q)[0]
        out = [neg_pi_pow(F, -s) * bn.binom(j + k - 1, s, p) * Expr.sym(F, base, j - s)
               for s in range(j + 1)]
    elif base == "E":
        out = [neg_pi_pow(F, -i) * bn.binom(j + 1, i, p) * Expr.sym(F, "E", j - i)
               for i in range(j + 1)]
        out.append(neg_pi_pow(F, -j - 1))
    else:
        raise ValueError(base)
    while out and out[-1].is_zero():
        out.pop()
    _ASSOC_CACHE[key] = out
    return out


def _translate(e: Expr, h: Matrix2 | None) -> Expr:
    if h is None:
        return e

    def fn(a):
        if isinstance(a, Sym):
            if a.shift is not None:
                raise AssertionError("double translation")
            return Expr.atom(e.F, Sym(a.base, a.order, h))
        return None

    return e.map_atoms(fn)


def _is_identity(m: Matrix2) -> bool:
    return m.a.is_one() and m.d.is_one() and m.b.is_zero() and m.c.is_zero()


_COMPOSE_CACHE: dict = {}


def compose_atom(F: GF, a: Atom, g: Matrix2) -> Expr | None:
    if isinstance(a, PiAtom):
        return None
    if not isinstance(a, Sym):
        comp = getattr(a, "compose", None)
        if comp is None:
            raise UnsupportedBackend(f"atom {a} cannot be composed with a matrix")
        return comp(F, g)
    key = (F, a, g.key())
    hit = _COMPOSE_CACHE.get(key)
    if hit is not None:
        return hit
    M = a.shift * g if a.shift is not None else g
    fac = hnf(M)
    sigma, h = fac.sigma, fac.h
    h_eff = None if _is_identity(h) else h
    k, m = a.weight(F.q), a.mtype(F.q)
    det = sigma.det.const_value()
    w = h.moebius() if h_eff is not None else ZRat.z(F)
    jw = w * sigma.c + ZRat.const(sigma.d)
    kap = ZRat.const(sigma.c) / jw if not sigma.c.is_zero() else ZRat.zero(F)
    P = symbol_assoc(F, a.base, a.order)
    pref = ZRat.const(RatFunc.const(F, F.pow(det, -m))) * jw ** k
    total = Expr.zero(F)
    kp = ZRat.one(F)
    for i, Pi in enumerate(P):
        if i:
            kp = kp * kap
            if not kp:
                break
        total = total + _translate(Pi, h_eff) * kp
    total = total * pref
    _COMPOSE_CACHE[key] = total
    return total


def compose(f: Expr, g: Matrix2) -> Expr:
    F = f.F
    res = Expr.zero(F)
    for m, c in f.t.items():
        cc = g.act(c)
        term = Expr.raw(F, {(): cc})
        pis = ()
        for a, e in m:
            if isinstance(a, PiAtom):
                pis = ((a, e),)
                continue
            img = compose_atom(F, a, g)
            term = term * (img ** e if e != 1 else img)
        if pis:
            term = Expr.raw(F, {mono_mul(mm, pis): v for mm, v in term.t.items()})
        res = res + term
    return res


# ---------------------------------------------------------------------------
# hyperderivatives


_HYPER_Z_CACHE: dict = {}


def hyper_ratfn(f: ZRat, n: int) -> ZRat:
    """\\mathcal D_n on K(z), exact (memoized)."""
    if n == 0:
        return f
    key = (f, n)
    hit = _HYPER_Z_CACHE.get(key)
    if hit is None:
        hit = _HYPER_Z_CACHE[key] = f.hyper(n)
    return hit


_HYPER_ATOM_CACHE: dict = {}


def hyper_atom(F: GF, a: Atom, n: int) -> Expr:
    """\\mathcal D_n of a single atom."""
    if n == 0:
        return Expr.atom(F, a)
    if isinstance(a, PiAtom):
        return Expr.zero(F)
    if isinstance(a, Sym):
        b = bn.binom(n + a.order, n, F.p)
        if not b:
            return Expr.zero(F)
        out = neg_pi_pow(F, n) * b * Expr.atom(F, Sym(a.base, a.order + n, a.shift))
        if a.shift is not None:
            s = a.shift
            out = out * ((s.a / s.d) ** n)
        return out
    fn = getattr(a, "hyper", None)
    if fn is None:
        raise UnsupportedBackend(f"no hyperderivative rule for atom {a}")
    return fn(F, n)


def _hyper_mono(F: GF, m: Monomial, n: int) -> Expr:
    if n == 0:
        return Expr.raw(F, {m: ZRat.one(F)})
    if not m:
        return Expr.zero(F)
    key = (F, m, n)
    hit = _HYPER_ATOM_CACHE.get(key)
    if hit is not None:
        return hit
    a, e = m[0]
    if isinstance(a, PiAtom):
        rest = _hyper_mono(F, m[1:], n)
        res = rest * Expr.raw(F, {((a, e),): ZRat.one(F)})
    else:
        rest_m = ((a, e - 1),) + m[1:] if e > 1 else m[1:]
        res = Expr.zero(F)
        for r in range(n + 1):
            da = hyper_atom(F, a, r)
            if da.is_zero():
                continue
            dr = _hyper_mono(F, rest_m, n - r)
            if dr.is_zero():
                continue
            res = res + da * dr
    _HYPER_ATOM_CACHE[key] = res
    return res


def hyper(f: Expr, n: int) -> Expr:
    """\\mathcal D_n f via Leibniz, iterativity on atoms and the chain rule."""
    if n == 0:
        return f
    F = f.F
    res = Expr.zero(F)
    for m, c in f.t.items():
        for r in range(n + 1):
            dc = hyper_ratfn(c, r)
            if not dc:
                continue
            dm = _hyper_mono(F, m, n - r)
            if dm.is_zero():
                continue
            res = res + dm * dc
    return res


def hyper_normalized(f: Expr, n: int) -> Expr:
    """D_n = (-pi)^(-n) \\mathcal D_n."""
    return hyper(f, n) * neg_pi_pow(f.F, -n)


# ---------------------------------------------------------------------------


class Level1:
    """Handles on the level-one generators for a given q."""

    def __init__(self, q: int, modulus=None):
        self.F = get_field(q, modulus)
        self.q = q
        self.p = self.F.p
        F = self.F
        self.g = Expr.sym(F, "g")
        self.h = Expr.sym(F, "h")
        self.E = Expr.sym(F, "E")
        self.pi = Expr.pi(F)
        self.one = Expr.one(F)
        self.zero = Expr.zero(F)
        self.z = Expr.zfun(ZRat.z(F))
        self.T = RatFunc.T(F)

    def D(self, base: str, j: int) -> Expr:
        return Expr.sym(self.F, base, j)

    def const(self, c) -> Expr:
        return Expr.const(self.F, c)

    def k(self, x) -> RatFunc:
        return _as_k(self.F, x)

    def matrix(self, a, b, c, d) -> Matrix2:
        return Matrix2(self.F, a, b, c, d)


def assoc_of_expr(f: Expr) -> list[Expr]:
    """Structural associated polynomial of an expression in untranslated level-one atoms.

    The map is the ring homomorphism sending each generator atom to its
    associated polynomial; z-dependent coefficients are rejected.
    """
    F = f.F
    total: list[Expr] = []
    for m, c in f.t.items():
        if not c.is_const():
            raise UnsupportedBackend("associated polynomial of a z-dependent coefficient")
        poly = [Expr.raw(F, {(): c})]
        for a, e in m:
            if isinstance(a, PiAtom):
                poly = [x * Expr.atom(F, a, e) for x in poly]
                continue
            if not isinstance(a, Sym) or a.shift is not None:
                raise UnsupportedBackend(f"no associated polynomial rule for {a}")
            P = symbol_assoc(F, a.base, a.order)
            for _ in range(e):
                poly = _xpoly_mul(poly, P, F)
        total = _xpoly_add(total, poly)
    while total and total[-1].is_zero():
        total.pop()
    return total


def _xpoly_mul(a: list, b: list, F: GF) -> list:
    if not a or not b:
        return []
    r = [Expr.zero(F) for _ in range(len(a) + len(b) - 1)]
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            r[i + j] = r[i + j] + x * y
    return r


def _xpoly_add(a: list, b: list) -> list:
    if len(a) < len(b):
        a, b = b, a
    r = list(a)
    for i, y in enumerate(b):
        r[i] = r[i] + y
    return r
