"""Seeded random generators for fuzzing identities."""

from __future__ import annotations

import random

from .errors import DegenerateMatrix
from .fields import GF, RatFunc, _trim
from .matrix import Matrix2
from .qmod import AssocPoly
from .scalars import ZRat
from .symbolic import Expr


def rand_poly(rng: random.Random, F: GF, deg: int, monic: bool = False) -> tuple:
    c = [rng.randrange(F.q) for _ in range(deg + 1)]
    if monic:
        c[-1] = 1
    return _trim(c)


def rand_k(rng: random.Random, F: GF, deg: int = 2, den_deg: int = 1, nonzero: bool = False) -> RatFunc:
    while True:
        n = rand_poly(rng, F, rng.randint(0, deg))
        d = rand_poly(rng, F, rng.randint(0, den_deg), monic=True)
        x = RatFunc(F, n, d)
        if x.n or not nonzero:
            return x


def rand_zrat(rng: random.Random, F: GF, zdeg: int = 2, rational: float = 0.3) -> ZRat:
    num = [rand_k(rng, F, 2, 1 if rng.random() < 0.3 else 0) for _ in range(rng.randint(0, zdeg) + 1)]
    if rng.random() < rational:
        den = [rand_k(rng, F, 1, 0), RatFunc.const(F, 1)]
        return ZRat(F, num, den)
    return ZRat(F, num)


def rand_matrix(rng: random.Random, F: GF, deg: int = 2, integral: bool = False) -> Matrix2:
    while True:
        if integral:
            ent = [RatFunc.raw(F, rand_poly(rng, F, rng.randint(0, deg))) for _ in range(4)]
        else:
            ent = [rand_k(rng, F, deg, 1) for _ in range(4)]
        try:
            return Matrix2(F, *ent)
        except DegenerateMatrix:
            continue


def rand_gl2a(rng: random.Random, F: GF, deg: int = 3, steps: int = 4) -> Matrix2:
    """Random element of GL_2(F_q[T]) with entries of degree <= deg (product of elementary moves)."""
    one = RatFunc.const(F, 1)
    zero = RatFunc.const(F, 0)
    while True:
        g = Matrix2(F, RatFunc.const(F, rng.randrange(1, F.q)), zero, zero, RatFunc.const(F, rng.randrange(1, F.q)))
        for _ in range(steps):
            b = RatFunc.raw(F, rand_poly(rng, F, rng.randint(0, 2)))
            e = Matrix2(F, one, b, zero, one) if rng.random() < 0.5 else Matrix2(F, one, zero, b, one)
            g = g * e
            if rng.random() < 0.3:
                g = g * Matrix2(F, zero, one, one, zero)
        if all(len(x.n) - 1 <= deg for x in g.entries()) and not g.c.is_zero():
            return g


def rand_test_poly(rng: random.Random, F: GF, depth: int = 2) -> AssocPoly:
    """Depth <= depth polynomial in X with random K(z) coefficients and pi powers."""
    d = rng.randint(0, depth)
    coeffs = []
    for _ in range(d + 1):
        c = Expr.zfun(rand_zrat(rng, F))
        if rng.random() < 0.3:
            c = c * Expr.pi(F, rng.choice([-1, 1, 2]))
        coeffs.append(c)
    k = rng.randint(0, 6)
    m = rng.randint(-2, 3)
    return AssocPoly(F, k, m, coeffs)
