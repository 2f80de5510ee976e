"""Carlitz-module oracle: exact truncated u-expansions of level-one forms.

u = 1/e_C(pi z) is the uniformizer at infinity and u_a = 1/C_a(1/u).  For
a monic polynomial a of degree D the series u_a has valuation q^D, so the
terms with deg a > D are invisible below u^(q^(D+1)); that bound is the
exactness horizon of every Eisenstein series computed here.

Normalizations: g has constant term 1, Delta = -u^(q-1) + ..., and h is
the (q-1)-th root of -Delta with u-coefficient -1.
"""

from __future__ import annotations

import functools
import os
import pickle
from pathlib import Path

from .errors import PrecisionLoss, UnsupportedBackend
from .fields import GF, RatFunc
from .scalars import CoeffScalar
from .series import USeries

# ---------------------------------------------------------------------------
# Carlitz module


@functools.lru_cache(maxsize=None)
def carlitz_d(F: GF, i: int) -> tuple:
    """d_0 = 1, d_i = (T^(q^i) - T) d_(i-1)^q."""
    if i == 0:
        return (1,)
    q = F.q
    Tq = tuple([0] * (q ** i) + [1])
    return F.pmul(F.psub(Tq, (0, 1)), F.ppow(carlitz_d(F, i - 1), q))


@functools.lru_cache(maxsize=None)
def _carlitz_T_pow(F: GF, j: int) -> tuple:
    """Coefficients of C_(T^j) as a list indexed by i (coefficient of x^(q^i))."""
    if j == 0:
        return ((1,),)
    prev = _carlitz_T_pow(F, j - 1)
    q = F.q
    out = []
    for i in range(len(prev) + 1):
        acc: tuple = ()
        if i < len(prev):
            acc = F.pmul((0, 1), prev[i])
        if i >= 1:
            acc = F.padd(acc, F.ppow(prev[i - 1], q))
        out.append(acc)
    return tuple(out)


def carlitz_action(F: GF, a: tuple) -> list[tuple]:
    """C_a(x) = sum_i c_i x^(q^i); returns [c_0, c_1, ...] (polynomials in T)."""
    out: list = []
    for j, aj in enumerate(a):
        if not aj:
            continue
        for i, c in enumerate(_carlitz_T_pow(F, j)):
            if i >= len(out):
                out.append(())
            out[i] = F.padd(out[i], F.pscale(c, aj))
    while out and not out[-1]:
        out.pop()
    return out


def carlitz_eval(F: GF, a: tuple, x: RatFunc) -> RatFunc:
    acc = RatFunc.const(F, 0)
    for i, c in enumerate(carlitz_action(F, a)):
        if c:
            acc = acc + RatFunc.raw(F, c) * x ** (F.q ** i)
    return acc


def u_sub(F: GF, a: tuple, N: int) -> USeries:
    """u_a = u^(q^D) / (1 + sum_(i<D) c_i u^(q^D - q^i)) for monic a of degree D."""
    if not a or a[-1] != 1:
        raise ValueError("u_sub expects a monic polynomial")
    D = len(a) - 1
    v = F.q ** D
    if N < v:
        raise PrecisionLoss(f"u_a has valuation {v} > requested precision {N}", N)
    cs = carlitz_action(F, a)
    rel = N - v
    den = [CoeffScalar.zero(F)] * max(rel, 1)
    den[0] = CoeffScalar.one(F)
    for i in range(D):
        e = v - F.q ** i
        if cs[i] and e < rel:
            den[e] = CoeffScalar.of(RatFunc.raw(F, cs[i]), 0, F)
    inv = USeries(F, den, 0, rel).inverse() if rel > 0 else USeries.zero(F, 0)
    return USeries.raw(F, inv.coeffs(0), v, N) if rel > 0 else USeries.zero(F, N)


# ---------------------------------------------------------------------------
# Goss polynomials and lattice sums


@functools.lru_cache(maxsize=None)
def goss(F: GF, k: int) -> tuple:
    """Coefficients (index = power of X) of the Goss polynomial G_k for the lattice pi*A.

    G_1 = X and G_k = X (G_(k-1) + sum_(i>=1) d_i^(-1) G_(k-q^i)), G_j = 0 for j <= 0.
    """
    zero = RatFunc.const(F, 0)
    if k <= 0:
        return ()
    if k == 1:
        return (zero, RatFunc.const(F, 1))
    acc = list(goss(F, k - 1))
    i = 1
    while F.q ** i < k + 1:
        Gi = goss(F, k - F.q ** i)
        if Gi:
            inv = RatFunc.raw(F, carlitz_d(F, i)).inverse()
            acc += [zero] * (len(Gi) - len(acc))
            for j, c in enumerate(Gi):
                if c:
                    acc[j] = acc[j] + c * inv
        i += 1
    out = [zero] + acc
    while out and not out[-1]:
        out.pop()
    return tuple(out)


@functools.lru_cache(maxsize=None)
def _inv_exp(F: GF, n: int) -> tuple:
    """Coefficients of (e_C(z)/z)^(-1) up to z^n."""
    w = [RatFunc.const(F, 0)] * (n + 1)
    w[0] = RatFunc.const(F, 1)
    i = 1
    while F.q ** i - 1 <= n:
        w[F.q ** i - 1] = RatFunc.raw(F, carlitz_d(F, i)).inverse()
        i += 1
    b = [RatFunc.const(F, 1)]
    for k in range(1, n + 1):
        acc = RatFunc.const(F, 0)
        for j in range(1, k + 1):
            if w[j]:
                acc = acc + w[j] * b[k - j]
        b.append(-acc)
    return tuple(b)


def lattice_sum(F: GF, k: int) -> CoeffScalar:
    """S_k with sum'_(a in A) a^(-k) = pi^k S_k; S_k = -[z^k] (e_C(z)/z)^(-1)."""
    if k < 1:
        raise ValueError("k >= 1")
    return CoeffScalar.of(-_inv_exp(F, k)[k], 0, F)


# ---------------------------------------------------------------------------
# Eisenstein series and the generators


def horizon_depth(F: GF, N: int) -> int:
    """Smallest D with q^(D+1) >= N."""
    D = 0
    while F.q ** (D + 1) < N:
        D += 1
    return D


def _monics(F: GF, D: int):
    for d in range(D + 1):
        yield from F.monic_polys(d)


@functools.lru_cache(maxsize=None)
def _u_subs(F: GF, D: int, N: int) -> tuple:
    return tuple((a, u_sub(F, a, N)) for a in _monics(F, D) if F.q ** (len(a) - 1) < N)


def eisenstein_u(F: GF, k: int, N: int, D: int | None = None) -> USeries:
    """E_k = sum' (az+b)^(-k) = pi^k [S_k + sum_(a monic) sum_(c in F_q^*) G_k(c^(-1) u_a)]."""
    if D is None:
        D = horizon_depth(F, N)
    if N > F.q ** (D + 1):
        raise PrecisionLoss(f"precision {N} exceeds the horizon q^{D + 1}", F.q ** (D + 1))
    G = goss(F, k)
    # sum_c c^(-j) = -1 when (q-1) | j, else 0
    red = [(-c if j % (F.q - 1) == 0 else RatFunc.const(F, 0)) for j, c in enumerate(G)]
    acc = USeries.const(F, lattice_sum(F, k), N)
    for _, ua in _u_subs(F, D, N):
        acc = acc + ua.subs_poly(red)
    return acc.scale(CoeffScalar.pi(F, k))


@functools.lru_cache(maxsize=None)
def E_u(F: GF, N: int, D: int | None = None) -> USeries:
    """The false Eisenstein series E = sum_(a monic) a u_a."""
    if D is None:
        D = horizon_depth(F, N)
    if N > F.q ** (D + 1):
        raise PrecisionLoss(f"precision {N} exceeds the horizon q^{D + 1}", F.q ** (D + 1))
    acc = USeries.zero(F, N)
    for a, ua in _u_subs(F, D, N):
        acc = acc + ua.scale(RatFunc.raw(F, a))
    return acc


@functools.lru_cache(maxsize=None)
def g_u(F: GF, N: int) -> USeries:
    q = F.q
    return eisenstein_u(F, q - 1, N).scale(CoeffScalar.pi(F, 1 - q) * lattice_sum(F, q - 1).inverse())


@functools.lru_cache(maxsize=None)
def delta_u(F: GF, N: int) -> USeries:
    """Delta from the coefficients of the generic rank-two Drinfeld module.

    With phi_T = T + g' tau + Delta' tau^2 and log = -sum E_(q^i-1) tau^i one has
    Delta' = [2] E_(q^2-1) + [1]^q E_(q-1)^(q+1); the result is Delta' / pi^(q^2-1).
    """
    q = F.q
    T = RatFunc.T(F)
    b1 = T ** q - T
    b2 = T ** (q * q) - T
    Eq1 = eisenstein_u(F, q - 1, N)
    Eq2 = eisenstein_u(F, q * q - 1, N)
    d = Eq2.scale(b2) + (Eq1 ** (q + 1)).scale(b1 ** q)
    return d.scale(CoeffScalar.pi(F, 1 - q * q))


@functools.lru_cache(maxsize=None)
def h_u(F: GF, N: int) -> USeries:
    """h with h^(q-1) = -Delta, normalized to u-coefficient -1."""
    q = F.q
    Nd = N + q - 2
    root = (-delta_u(F, Nd)).nth_root(q - 1)
    return (-root).truncate(N)


# ---------------------------------------------------------------------------
# rendering symbolic expressions


def _cache_path(F: GF, name: str, N: int) -> Path | None:
    d = os.environ.get("QMF_CACHE_DIR")
    if not d:
        return None
    mod = "".join(map(str, F.modulus))
    return Path(d) / f"{name}-q{F.q}-m{mod}-N{N}.pkl"


def base_series(F: GF, name: str, N: int) -> USeries:
    """Series of a generator, optionally cached on disk under QMF_CACHE_DIR."""
    path = _cache_path(F, name, N)
    if path is not None and path.exists():
        with path.open("rb") as fh:
            return pickle.load(fh)
    fn = {"E": E_u, "g": g_u, "h": h_u, "Delta": delta_u}[name]
    s = fn(F, N)
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("wb") as fh:
            pickle.dump(s, fh)
    return s


_RENDER_ATOM: dict = {}


def render_atom(F: GF, a, N: int) -> USeries:
    from .hyper import hyper_series
    from .symbolic import PiAtom, Sym

    key = (F, a, N)
    hit = _RENDER_ATOM.get(key)
    if hit is not None:
        return hit
    if isinstance(a, PiAtom):
        s = USeries.const(F, CoeffScalar.pi(F), N)
    elif isinstance(a, Sym):
        if a.shift is not None:
            raise UnsupportedBackend("translated symbols have no u-expansion at level one")
        s = base_series(F, a.base, N)
        if a.order:
            s = hyper_series(s, a.order).scale(_neg_pi(F, -a.order))
    else:
        fn = getattr(a, "render", None)
        if fn is None:
            raise UnsupportedBackend(f"cannot render atom {a}")
        s = fn(F, N)
    _RENDER_ATOM[key] = s
    return s


def _neg_pi(F: GF, e: int) -> CoeffScalar:
    c = CoeffScalar.pi(F, e)
    return -c if e % 2 else c


def render(f, N: int) -> USeries:
    """u-expansion of a level-one expression to precision N (a ring morphism)."""
    from .symbolic import PiAtom

    F = f.F
    acc = USeries.zero(F, N)
    for m, c in f.t.items():
        if not c.is_const():
            raise UnsupportedBackend("z-dependent coefficient")
        term = USeries.const(F, c.const_value(), N)
        for a, e in m:
            if isinstance(a, PiAtom):
                term = term.scale(CoeffScalar.pi(F, e))
                continue
            term = term * (render_atom(F, a, N) ** e)
        acc = acc + term
    return acc
