import random

import pytest
from hypothesis import given

from qmf.eexp import EExpansion
from qmf.errors import NotInKernelImage, UnsupportedBackend, ZeroEigenvalue
from qmf.fields import RatFunc, get_field
from qmf.formal import FormalHecke, e_equal
from qmf.qmod import AssocPoly
from qmf.symbolic import Expr
from strategies import seeds

F = get_field(3)
B = FormalHecke(F, (2, 1))


def test_delta_of_E():
    e = EExpansion(F, 2, 1, [Expr.zero(F), Expr.one(F)], check=False)
    d = B.delta_e(e)
    inv = B.pk(-1)
    assert d.coeff(1) == Expr.one(F) * inv
    assert d.coeff(0) == B.Ep() * inv * -1


def test_U_kills_delta_images_and_constants():
    f = B.form("f", 4, 1)
    assert B.U(B.delta(f)).is_zero()
    assert B.U(Expr.one(F)).is_zero()


def test_delta_of_g_is_unmodelled():
    with pytest.raises(UnsupportedBackend):
        B.delta(Expr.sym(F, "g"))


@pytest.mark.parametrize("q", (2, 3, 5))
def test_up_en(q):
    Fq = get_field(q)
    Bq = FormalHecke(Fq, (1, 1))
    X = Bq.form("X", 4, 1)
    for n in range(11):
        assert Bq.up_en_recursive(X, n) == Bq.up_en_closed(X, n)


def test_tp_e_depth_zero_and_one():
    f = B.form("f", 6, 0)
    e0 = EExpansion(F, 6, 0, [f], check=False)
    got = B.tp_e(e0).coeff(0)
    assert got == B.delta(f) * B.pk(6) + B.U(f)
    f1 = B.form("f1", 4, 0)
    e1 = EExpansion(F, 6, 1, [Expr.zero(F), f1], check=False)
    T1 = B.tp_e(e1)
    # hand expansion: T(f1 E) with E = E_p + p delta E
    want1 = (B.delta(f1) * B.pk(4) + B.U(f1)) * B.pk(1)
    want0 = B.delta(f1) * (-B.Ep()) * B.pk(5) + B.U(f1 * B.Ep())
    assert T1.coeff(1) == want1 and T1.coeff(0) == want0


@given(seeds)
def test_kernel_round_trip(rng):
    g = B.random_e(rng, 10, 1, rng.randint(0, 3))
    d = B.delta_e(g)
    f = EExpansion(F, d.k, d.m, [c * B.pk(d.m) for c in d.c], check=False)
    assert all(c.is_zero() for c in B.up_e(f).c)
    assert e_equal(B.ker_up_reconstruct(f), g)
    assert len(B.delta_e(g).c) == len(g.c)


@given(seeds)
def test_tp_is_pk_delta_plus_up(rng):
    h = B.random_e(rng, 10, 1, 2)
    lhs = B.tp_e(h)
    d, up = B.delta_e(h), B.up_e(h)
    for i in range(3):
        assert (lhs.coeff(i) - d.coeff(i) * B.pk(h.k) - up.coeff(i)).is_zero()


def test_reconstruct_zero_and_rejects_non_kernel():
    z = EExpansion(F, 10, 1, [], check=False)
    assert B.ker_up_reconstruct(z).c == []
    with pytest.raises(NotInKernelImage):
        B.ker_up_reconstruct(B.random_e(random.Random(3), 10, 1, 1, level="mp"))


def test_eigen_logic():
    Bx = FormalHecke(F, (2, 1))
    lam = RatFunc.T(F) + 1
    Y0, Y1 = Bx.form("Y0", 8, 0), Bx.form("Y1", 6, -1)
    Bx.declare_T_eigen(Y0, lam)
    Bx.declare_T_eigen(Y1, lam / Bx.P)
    P = AssocPoly(F, 8, 0, [Y0, Y1])
    assert Bx.eigencheck(P, lam) and Bx.is_eigen(P, lam)
    Bx.declare_T_eigen(Y1, lam)
    assert not Bx.eigencheck(P, lam) and not Bx.is_eigen(P, lam)


def test_depth_zero_declared_eigenform_at_other_prime():
    # E_p viewed at a prime Q != p: an opaque form with T_Q E_p = Q E_p
    BQ = FormalHecke(F, (0, 1))
    Ep_at_Q = BQ.form("E_p", 2, 1)
    Q = RatFunc.T(F)
    BQ.declare_T_eigen(Ep_at_Q, Q)
    assert BQ.eigencheck(AssocPoly(F, 2, 1, [Ep_at_Q]), Q)


def test_lift_eigen():
    lam = RatFunc.T(F) + 2
    Z = B.form("Zl", 4, 1)
    B.declare_T_eigen(Z, lam)
    g = B.lift_eigen(Z, 4, lam)
    assert B.U(g) == g * lam
    assert g == Z - B.delta(Z) * (B.P ** 4 / lam)
    with pytest.raises(ZeroEigenvalue):
        B.lift_eigen(Z, 4, 0)
