import random

import pytest

from qmf.errors import DegenerateMatrix
from qmf.fields import RatFunc, get_field
from qmf.matrix import Matrix2, cocycle_j, cocycle_kappa, hnf, mat_act
from qmf.randgen import rand_matrix
from qmf.scalars import ZRat

F = get_field(3)
t = RatFunc.T(F)
z = ZRat.z(F)


def test_singular_rejected():
    with pytest.raises(DegenerateMatrix):
        Matrix2(F, t, t, 1, 1)


def test_mat_act_examples():
    assert mat_act(Matrix2.identity(F), z ** 3) == z ** 3
    assert mat_act(Matrix2(F, 0, 1, 1, 0), z) == z ** -1
    assert mat_act(Matrix2(F, t + 2, 1, 0, 1), z) == z * ZRat.const(t + 2) + 1


def test_cocycle_examples():
    g = Matrix2(F, t, 1, 0, t + 1)
    assert cocycle_kappa(g).is_zero()
    w = Matrix2(F, 0, 1, 1, 0)
    assert cocycle_j(w) == z and cocycle_kappa(w) == z ** -1


def test_cocycle_identities():
    rng = random.Random(3)
    for _ in range(30):
        a, b = rand_matrix(rng, F), rand_matrix(rng, F)
        j_ab = cocycle_j(a * b)
        assert j_ab == cocycle_j(a).subst(*b.entries()) * cocycle_j(b)
        assert mat_act(a * b, z) == mat_act(b, mat_act(a, z))  # f o (ab) = (f o a) o b


def test_hnf_factorization():
    rng = random.Random(4)
    for _ in range(30):
        g = rand_matrix(rng, F, integral=True)
        h = hnf(g)
        assert h.sigma * h.h == g
        assert h.sigma.in_Gamma0(RatFunc.const(F, 1)) or h.sigma.det.is_const()
