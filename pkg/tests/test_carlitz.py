"""The u-series oracle against hand-derived values."""

import pytest

from qmf.carlitz import (E_u, carlitz_action, carlitz_d, delta_u, eisenstein_u, g_u, goss, h_u,
                         lattice_sum, render, u_sub)
from qmf.errors import PrecisionLoss
from qmf.fields import RatFunc, get_field
from qmf.scalars import CoeffScalar
from qmf.series import USeries
from qmf.symbolic import Expr


def test_carlitz_d():
    F = get_field(2)
    assert carlitz_d(F, 0) == (1,)
    d1 = F.psub(F.ppow((0, 1), 2), (0, 1))
    assert carlitz_d(F, 1) == d1
    d2 = F.pmul(F.psub(F.ppow((0, 1), 4), (0, 1)), F.pmul(d1, d1))
    assert carlitz_d(F, 2) == d2


def test_carlitz_action():
    F = get_field(3)
    assert carlitz_action(F, (2,)) == [(2,)]
    assert carlitz_action(F, (0, 1)) == [(0, 1), (1,)]
    cT2 = carlitz_action(F, (0, 0, 1))
    assert len(cT2) == 3  # degree q^2 in x
    # C_{T^2} = C_T o C_T: T^2 x + (T + T^q) x^q + x^(q^2)
    assert cT2[0] == (0, 0, 1) and cT2[1] == F.padd((0, 1), (0, 0, 0, 1)) and cT2[2] == (1,)


def test_u_sub():
    F = get_field(3)
    N = 12
    assert u_sub(F, (1,), N).equal_to(USeries.u(F, N))
    uT = u_sub(F, (0, 1), N)
    T = RatFunc.T(F)
    want = USeries(F, [0, 0, 0, 1, 0, -T, 0, T ** 2, 0, -T ** 3, 0, T ** 4], 0, N)
    assert uT.equal_to(want)
    for a in ((1,), (0, 1), (1, 0, 1)):
        assert u_sub(F, a, 30).val == 3 ** (len(a) - 1)
    with pytest.raises(PrecisionLoss):
        u_sub(F, (1, 0, 0, 1), 10)


def test_goss_and_lattice_sums():
    F = get_field(3)
    assert goss(F, 1) == (RatFunc.const(F, 0), RatFunc.const(F, 1))
    for n in range(1, 4):
        G = goss(F, n)
        assert len(G) == n + 1 and all(not c for c in G[:-1]) and G[-1] == 1
    T = RatFunc.T(F)
    assert lattice_sum(F, 2) == CoeffScalar.of((T ** 3 - T).inverse(), 0, F)
    for k in (1, 3, 5, 7):
        assert lattice_sum(F, k).is_zero()


@pytest.mark.parametrize("q", (2, 3, 4, 5))
def test_eisenstein_heads(q):
    F = get_field(q)
    N = q + 3
    E = E_u(F, N)
    assert E.coeff(0).is_zero()
    assert E.val == 1 and E.coeff(1) == CoeffScalar.one(F)
    for e in range(2, q):
        assert E.coeff(e).is_zero()
    g = g_u(F, N)
    assert g.coeff(0) == CoeffScalar.one(F)
    Ek = eisenstein_u(F, q - 1, N)
    assert Ek.coeff(0) == CoeffScalar.pi(F, q - 1) * lattice_sum(F, q - 1)


@pytest.mark.parametrize("q", (2, 3, 4, 5))
def test_delta_and_h(q):
    F = get_field(q)
    N = 3 * q
    D, h = delta_u(F, N), h_u(F, N)
    assert D.val == q - 1 and D.coeff(q - 1) == -CoeffScalar.one(F)
    assert (h ** (q - 1)).equal_to(-D)
    assert h.val == 1 and h.coeff(1) == -CoeffScalar.one(F)


def test_frozen_q3_heads():
    # computed once from the Carlitz oracle, then frozen; the u^5 term of E
    # and the u^2 term of g are cross-checked by the identities in test_hyper
    F = get_field(3)
    E = E_u(F, 8)
    assert str(E) == "u + u^5 + O(u^8)"


def test_render_generators():
    F = get_field(3)
    assert render(Expr.sym(F, "E"), 10).equal_to(E_u(F, 10))
    assert render(Expr.sym(F, "g") ** 2, 10).equal_to(g_u(F, 10) ** 2)
    assert render(Expr.pi(F) * Expr.sym(F, "h"), 10).equal_to(h_u(F, 10).scale(CoeffScalar.pi(F)))
