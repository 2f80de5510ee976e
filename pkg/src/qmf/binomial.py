"""Binomial coefficients reduced modulo p.

Negative upper arguments use C(-a, k) = (-1)^k C(a + k - 1, k); nonnegative ones
go through Lucas' theorem.  Other modules call ``binom`` through this module
object so that a single patch point exists.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable


def _lucas(n: int, k: int, p: int) -> int:
    r = 1
    while k:
        ni, ki = n % p, k % p
        if ki > ni:
            return 0
        r = r * math.comb(ni, ki) % p
        n //= p
        k //= p
    return r


def binom_mod_p(n: int, k: int, p: int) -> int:
    """C(n, k) mod p for n, k >= 0 by base-p digits."""
    if k < 0 or n < 0:
        raise ValueError("binom_mod_p needs n, k >= 0")
    return 0 if k > n else _lucas(n, k, p)


def binom(n: int, k: int, p: int) -> int:
    """C(n, k) mod p for any integer n and k >= 0 (0 for k < 0)."""
    if k < 0:
        return 0
    if n >= 0:
        return 0 if k > n else _lucas(n, k, p)
    v = _lucas(k - n - 1, k, p)
    return v if k % 2 == 0 else (-v) % p


def binom_int(a: int, k: int, p: int) -> int:
    """Generalized binomial C(a, k) reduced mod p; a may be negative."""
    return binom(a, k, p)


def binom_z(a: int, k: int) -> int:
    """Exact generalized binomial over Z."""
    if k < 0:
        return 0
    if a >= 0:
        return math.comb(a, k)
    return (-1) ** k * math.comb(k - a - 1, k)


def vandermonde_check(j: int, i: int, k: int, n: int, p: int) -> bool:
    """Sum_{h=j..n} C(-i, n-h) C(-k+2i-j, h-j) == C(-k+i-j, n-j) mod p."""
    lhs = sum(binom(-i, n - h, p) * binom(-k + 2 * i - j, h - j, p) for h in range(j, n + 1)) % p
    return lhs == binom(-k + i - j, n - j, p)


# ---------------------------------------------------------------------------
# dimensions and NVH


def dim_level1(k: int, m: int, q: int) -> int:
    """#{(a, b) >= 0 : (q-1)a + (q+1)b = k, b = m mod (q-1)}, i.e. dim M_{k,m}(GL_2(A))."""
    if k < 0:
        return 0
    s = q - 1
    count = 0
    for b in range(k // (q + 1) + 1):
        r = k - (q + 1) * b
        if r % s == 0 and (b - m) % s == 0:
            count += 1
    return count


def level1_monomials(k: int, m: int, q: int) -> list[tuple[int, int]]:
    """Exponent pairs (a, b) of the monomials g^a h^b spanning M_{k,m}."""
    if k < 0:
        return []
    s = q - 1
    out = []
    for b in range(k // (q + 1) + 1):
        r = k - (q + 1) * b
        if r % s == 0 and (b - m) % s == 0:
            out.append((r // s, b))
    return out


@dataclass(frozen=True)
class NvhWitness:
    index: int
    binomial: int
    dimension: int


@dataclass(frozen=True)
class NvhReport:
    holds: bool
    witnesses: tuple[NvhWitness, ...]
    k: int
    l: int
    m: int
    q: int

    def failing(self) -> list[NvhWitness]:
        return [w for w in self.witnesses if w.binomial == 0 and w.dimension > 0]


DimOracle = Callable[[int, int, int], int]


def nvh_check(k: int, l: int, m: int, q: int, dim_oracle: DimOracle | None = None) -> NvhReport:
    """Evaluate the non-vanishing hypothesis for weight k, depth l, type m."""
    from .errors import OutOfRangeWeight
    from .fields import prime_power

    p = prime_power(q)[0]
    oracle = dim_oracle or dim_level1
    if l <= 0:
        return NvhReport(True, (), k, l, m, q)
    if k < 2 * l:
        raise OutOfRangeWeight(f"k={k} < 2l={2 * l}")
    top = l if k > 2 * l else l - 1
    wits = []
    for i in range(1, top + 1):
        wits.append(NvhWitness(i, binom(k - i - 1, i, p), oracle(k - 2 * i, m - i, q)))
    holds = not any(w.binomial == 0 and w.dimension > 0 for w in wits)
    return NvhReport(holds, tuple(wits), k, l, m, q)


def plenty_of_cases(q: int, l: int, k_max: int, dim_oracle: DimOracle | None = None) -> list[tuple[int, int, bool]]:
    """Scan (k, m) with 2l <= k <= k_max, m mod q-1, k = 2m mod q-1; report NVH."""
    out = []
    s = q - 1
    for k in range(2 * l, k_max + 1):
        for m in range(s):
            if (k - 2 * m) % s:
                continue
            out.append((k, m, nvh_check(k, l, m, q, dim_oracle).holds))
    return out
