import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qmf.carlitz import E_u, render
from qmf.fields import RatFunc, get_field
from qmf.hyper import (commutation_residual, compose_slash_formula, hyper_assoc, hyper_series,
                       hyper_series_normalized, ratfn_law_residuals, series_law_residuals)
from qmf.matrix import Matrix2
from qmf.qmod import AssocPoly
from qmf.randgen import rand_matrix, rand_test_poly, rand_zrat
from qmf.scalars import CoeffScalar, ZRat
from qmf.series import USeries
from qmf.symbolic import Expr, hyper_ratfn, neg_pi_pow
from strategies import seeds

F3 = get_field(3)
z = ZRat.z(F3)


def test_ratfn_examples():
    assert hyper_ratfn(z ** 2, 1) == z * 2
    assert hyper_ratfn(z ** -1, 2) == z ** -3
    assert hyper_ratfn(z ** 3, 3) == ZRat.one(F3)
    assert hyper_ratfn(z ** 3, 1).is_zero()


@given(seeds, st.integers(0, 6), st.integers(0, 4))
def test_ratfn_laws(rng, i, j):
    f, g = rand_zrat(rng, F3), rand_zrat(rng, F3)
    assert all(ratfn_law_residuals(f, g, i, j).values())


def test_series_examples():
    N = 12
    u = USeries.u(F3, N)
    assert hyper_series(u, 0).equal_to(u)
    assert hyper_series(u, 1).equal_to((u * u).scale(-CoeffScalar.pi(F3)))


@pytest.mark.parametrize("q,N", [(3, 26), (2, 15), (5, 25)])
def test_D1E_is_E_squared(q, N):
    F = get_field(q)
    E = E_u(F, N)
    assert hyper_series_normalized(E, 1).equal_to(E * E)


@given(seeds, st.integers(0, 5), st.integers(0, 5))
def test_series_laws(rng, i, j):
    N = 20
    a = render(Expr.sym(F3, rng.choice("ghE")), N)
    b = render(Expr.sym(F3, rng.choice("ghE")), N)
    assert all(series_law_residuals(a + b, a * b, i, j).values())


def test_composition_example():
    t = RatFunc.T(F3)
    f = (z ** 3 - ZRat.const(t)) ** -1
    g = Matrix2(F3, t, 1, 1, 0)
    for v in ("cocycle", "chain", "slash"):
        assert compose_slash_formula(f, g, 0, v, k=2, m=1).is_zero()
        assert compose_slash_formula(f, g, 2, v, k=2, m=1).is_zero()


@given(seeds, st.sampled_from(["cocycle", "chain", "slash"]))
def test_composition_random(rng, v):
    f, g, n = rand_zrat(rng, F3), rand_matrix(rng, F3), rng.randint(0, 4)
    assert compose_slash_formula(f, g, n, v, k=rng.randint(0, 5), m=rng.randint(-2, 3)).is_zero()


@given(seeds)
def test_commutation_random(rng):
    P, g, n = rand_test_poly(rng, F3), rand_matrix(rng, F3), rng.randint(0, 3)
    assert commutation_residual(P, g, n).is_zero()


def test_hyper_assoc_modular():
    g = Expr.sym(F3, "g")
    P = AssocPoly(F3, 2, 0, [g])
    H = hyper_assoc(P, 1)
    from qmf.symbolic import hyper
    assert H.coeff(0) == hyper(g, 1) and H.coeff(1) == g * 2
    assert hyper_assoc(P, 0) == P


@pytest.mark.parametrize("q", (2, 3, 5))
def test_DnE_depth_drop(q):
    F = get_field(q)
    PE = AssocPoly.of_expr(Expr.sym(F, "E"), 2, 1)
    B = AssocPoly(F, 0, 0, [Expr.one(F)])
    for n in range(9):
        B = B * PE
        A = hyper_assoc(PE, n) * neg_pi_pow(F, -n)
        assert A.coeff(n + 1) == neg_pi_pow(F, -n - 1)
        D = A - B
        assert D.coeff(n + 1).is_zero() and D.coeff(n).is_zero()
