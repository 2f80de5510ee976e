import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qmf import binomial as bn
from qmf import structure as st_
from qmf.eexp import EExpansion, e_expansion_of, to_e
from qmf.errors import NvhViolation, OutOfRangeWeight
from qmf.fields import get_field
from qmf.hyper import hyper_assoc
from qmf.qmod import AssocPoly
from qmf.symbolic import Expr
from strategies import seeds


def test_decompose_E():
    for q in (2, 3, 5):
        F = get_field(q)
        d = st_.decompose(e_expansion_of(Expr.sym(F, "E"), 2, 1))
        assert d.alpha == Expr.one(F) and all(x.is_zero() for x in d.parts)
        assert st_.der_to_assoc(d) == AssocPoly.of_expr(Expr.sym(F, "E"), 2, 1)


def test_decompose_D1g():
    F = get_field(3)
    g = Expr.sym(F, "g")
    f = to_e(hyper_assoc(AssocPoly(F, 2, 0, [g]), 1) * st_.neg_pi_pow(F, -1))
    d = st_.decompose(f)
    assert d.parts[1] == g
    assert st_.resolve_modular(d.parts[0], 4, 1) is not None


def test_decompose_depth_zero():
    F = get_field(3)
    h = Expr.sym(F, "h")
    d = st_.decompose(e_expansion_of(h, 4, 1))
    assert d.l == 0 and d.parts == (h,)
    assert st_.der_to_assoc(d) == AssocPoly(F, 4, 1, [h])


def test_nvh_violation():
    F = get_field(3)
    f = st_.random_qmod(random.Random(0), F, 8, 1, 1)
    with pytest.raises(NvhViolation) as ei:
        st_.decompose(f)
    assert ei.value.index == 1 and not ei.value.report.holds


def test_out_of_range_weight():
    F = get_field(3)
    E = Expr.sym(F, "E")
    with pytest.raises(OutOfRangeWeight):
        st_.decompose(EExpansion(F, 2, 3, [0, 0, E], check=False))


@given(seeds, st.sampled_from((2, 3, 5)))
def test_recombine_and_series_round_trip(rng, q):
    F = get_field(q)
    ws = [w for w in st_.nvh_weights(q, 2, 12) if w[2] >= 1]
    k, m, l = rng.choice(ws)
    f = st_.random_qmod(rng, F, k, m, l)
    d = st_.decompose(f)
    assert d.recombine() == f.to_expr()
    assert st_.roundtrip_by_series(f, d, 12)


@given(seeds)
def test_injectivity(rng):
    # building f from modular parts and decomposing returns those parts
    q = 3
    F = get_field(q)
    ws = [w for w in st_.nvh_weights(q, 2, 14) if w[2] >= 1 and w[0] > 2 * w[2]]
    k, m, l = rng.choice(ws)
    parts = [st_.random_modular(rng, F, k - 2 * i, m - i) for i in range(l + 1)]
    if parts[l].is_zero():
        return
    dec0 = st_.DerDecomposition(k, m, l, tuple(parts))
    f = to_e(st_.der_to_assoc(dec0))
    d = st_.decompose(f)
    assert d.parts == dec0.parts


def test_der_to_assoc_matches_from_e_for_k_equal_2l():
    F = get_field(3)
    rng = random.Random(11)
    for _ in range(5):
        f = st_.random_qmod(rng, F, 4, 0, 2)
        d = st_.decompose(f)
        assert d.alpha is not None and not d.alpha.is_zero()
        assert st_.roundtrip_by_series(f, d, 20)


@pytest.mark.parametrize("q", (2, 3, 5))
def test_serre_completion_is_minus_h(q):
    F = get_field(q)
    co, res = st_.serre_completion(F, 26)
    assert co is not None and res.is_zero()
    basis = st_.modular_basis(F, q + 1, 1)
    want = [(-1 if b == Expr.sym(F, "h") else 0) for b in basis]
    assert [c == w for c, w in zip(co, want)] == [True] * len(basis)


def test_product_criterion_implies_nvh():
    for k in range(2, 30):
        for l in range(1, k // 2 + 1):
            for m in range(2):
                if st_.product_criterion(k, l, 3):
                    assert bn.nvh_check(k, l, m, 3).holds
