import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qmf.eexp import EExpansion, d_dE, e_expansion_of, from_e, is_identity, mat_mul, phi_psi, to_e
from qmf.errors import CharacteristicObstruction, WeightTypeMismatch
from qmf.fields import RatFunc, get_field
from qmf.matrix import Matrix2
from qmf.qmod import (AssocPoly, check_bigrade, coeff_assoc, default_generators, dslash_fn, dslash_poly,
                      is_weak_qmod, key_eq_residual, reconstruct, slash_fn)
from qmf.randgen import rand_gl2a, rand_matrix, rand_test_poly, rand_zrat
from qmf.symbolic import Expr, Level1, pi_pow
from strategies import seeds

L3 = Level1(3)
F3 = L3.F
PE3 = AssocPoly.of_expr(L3.E, 2, 1)


def test_assoc_of_E():
    assert PE3.coeff(0) == L3.E
    assert PE3.coeff(1) == Expr.pi(F3, -1) * -1


def test_translation_shifts_z():
    rng = random.Random(1)
    P = rand_test_poly(rng, F3)
    b = RatFunc.T(F3) + 1
    got = dslash_poly(P, Matrix2(F3, 1, b, 0, 1))
    want = [c.compose(Matrix2(F3, 1, b, 0, 1)) for c in P.c]
    assert got.c == want


def test_E_invariant_under_weyl_like_matrix():
    assert dslash_poly(PE3, Matrix2(F3, 0, 1, 2, 0)) == PE3


def test_depth_zero_slash_equals_dslash():
    rng = random.Random(2)
    f = Expr.zfun(rand_zrat(rng, F3))
    P = AssocPoly(F3, 4, 1, [f])
    g = rand_matrix(rng, F3)
    assert slash_fn(f, g, 4, 1) == dslash_fn(P, g)


@given(seeds)
def test_dslash_is_a_right_action(rng):
    P, a, b = rand_test_poly(rng, F3), rand_matrix(rng, F3), rand_matrix(rng, F3)
    assert dslash_poly(P, a * b) == dslash_poly(dslash_poly(P, a), b)


def test_key_equation_on_Eg():
    rng = random.Random(7)
    P = AssocPoly.of_expr(L3.E * L3.g, 4, 1)
    for _ in range(20):
        assert key_eq_residual(P, rand_gl2a(rng, F3)).is_zero()


def test_coeff_assoc():
    c = coeff_assoc(PE3, 1)
    assert c.depth == 0 and c.coeff(0) == Expr.pi(F3, -1) * -1
    assert coeff_assoc(PE3, 0).c == PE3.c
    F5 = get_field(5)
    P = AssocPoly(F5, 6, 2, [Expr.sym(F5, "g"), Expr.sym(F5, "h"), Expr.sym(F5, "E")])
    assert coeff_assoc(coeff_assoc(P, 1), 1).coeff(0) == Expr.sym(F5, "E") * 2


@pytest.mark.parametrize("q", (2, 3, 4, 5, 9))
def test_E_is_weakly_quasi_modular(q):
    L = Level1(q)
    assert is_weak_qmod(AssocPoly.of_expr(L.E, 2, 1))


def test_weak_qmod_rejections():
    X = AssocPoly(F3, 2, 1, [0, 1])
    assert is_weak_qmod(X, [Matrix2(F3, 1, 1, 0, 1)])
    assert not is_weak_qmod(X, [Matrix2(F3, 0, 1, 1, 0)])
    bad = AssocPoly(F3, 2, 1, [L3.E, Expr.pi(F3, -1)])  # wrong sign on X
    assert not is_weak_qmod(bad)


def test_reconstruct():
    assert reconstruct(PE3)
    P2 = PE3 * PE3
    assert reconstruct(AssocPoly(F3, 4, 2, P2.c))
    broken = AssocPoly(F3, 4, 2, [P2.c[0], P2.c[1] + L3.g, P2.c[2]])
    assert not reconstruct(broken)


def test_check_bigrade():
    check_bigrade(PE3)
    with pytest.raises(WeightTypeMismatch):
        check_bigrade(AssocPoly(F3, 4, 1, [L3.E]))


@pytest.mark.parametrize("q", (2, 3, 5, 9))
def test_phi_psi_small(q):
    F = get_field(q)
    Phi, Psi = phi_psi(0, q)
    assert Phi == ((Expr.one(F),),) and Psi == ((Expr.one(F),),)
    Phi, Psi = phi_psi(1, q)
    E = Expr.sym(F, "E")
    assert Phi[0] == (Expr.one(F), pi_pow(F, 1) * E) and Phi[1][1] == pi_pow(F, 1) * -1
    assert is_identity(mat_mul(Phi, Psi))


def test_to_e_examples():
    assert [str(c) for c in to_e(PE3).c] == ["0", "1"]
    assert [str(c) for c in to_e(PE3 * PE3).c] == ["0", "0", "1"]
    P0 = AssocPoly(F3, 2, 0, [L3.g])
    assert to_e(P0).c == [L3.g]


def test_from_e_examples():
    e = EExpansion(F3, 2, 1, [0, 1])
    assert from_e(e) == PE3


@given(seeds, st.sampled_from((2, 3, 5)))
def test_from_to_e_round_trip(rng, q):
    from qmf.structure import nvh_weights, random_qmod
    F = get_field(q)
    k, m, l = rng.choice(nvh_weights(q, 3, 14))
    e = random_qmod(rng, F, k, m, l)
    P = from_e(e)
    assert to_e(P).c == e.c
    assert from_e(to_e(P)) == P


def test_d_dE():
    eE = e_expansion_of(L3.E, 2, 1)
    assert d_dE(eE, 1) == Expr.one(F3)
    assert d_dE(eE, 0) == L3.E
    eE2 = e_expansion_of(L3.E ** 2, 4, 2)
    assert d_dE(eE2, 1) == L3.E * 2
    with pytest.raises(CharacteristicObstruction):
        d_dE(eE2, 3)
    assert d_dE(eE2, 2, divided=True) == Expr.one(F3)


def test_e_expansion_rejects_bad_bigrade():
    with pytest.raises(WeightTypeMismatch):
        EExpansion(F3, 4, 1, [L3.g])
