import pytest

from qmf import hecke as hk
from qmf.errors import BadRepSet, NotPrime
from qmf.fields import RatFunc, get_field
from qmf.matrix import Matrix2
from qmf.qmod import AssocPoly, slash_fn
from qmf.symbolic import Expr

F = get_field(3)
t = RatFunc.T(F)
PE = AssocPoly.of_expr(Expr.sym(F, "E"), 2, 1)
S = Matrix2(F, 1, 1, t, t + 1)


def test_rep_counts():
    R = hk.reps_gamma0(F, (0, 1))
    assert len(R) == 4 and R.kind == "T"
    assert R.mats[0] == Matrix2(F, t, 0, 0, 1)
    assert {m.b.n for m in R.mats[1:]} == {(), (1,), (2,)}
    assert len(hk.reps_gamma0(F, (0, 1), (0, 1))) == 3
    assert len(hk.reps_gamma0(F, (1, 0, 1))) == 10
    for P in ((0, 1), (1, 1), (2, 1), (1, 0, 1)):
        hk.validate_reps(hk.reps_gamma0(F, P))


def test_not_prime():
    with pytest.raises(NotPrime):
        hk.reps_gamma0(F, (2, 0, 1))  # t^2 - 1 = (t-1)(t+1)
    with pytest.raises(NotPrime):
        hk.reps_gamma0(F, (0, 2))  # not monic


def test_bad_rep_sets():
    R = hk.reps_gamma0(F, (0, 1))
    with pytest.raises(BadRepSet):
        hk.validate_reps(hk.RepSet(R.mats[:-1], R.eta, R.level, R.kind))
    dup = R.mats[:-1] + (Matrix2(F, 1, t + 1, 0, t),)  # same coset as (1, 1; 0, t)
    with pytest.raises(BadRepSet):
        hk.validate_reps(hk.RepSet(dup, R.eta, R.level, R.kind))
    scaled = (Matrix2(F, t * t, 0, 0, t),) + R.mats[1:]
    with pytest.raises(BadRepSet):
        hk.validate_reps(hk.RepSet(scaled, R.eta, R.level, R.kind))


@pytest.mark.parametrize("P", [(0, 1), (1, 1), (2, 1)])
def test_well_posed_on_E(P):
    R = hk.reps_gamma0(F, P)
    eta = hk.eta_p(F, P)
    a = hk.hecke_generic(PE, eta, R)
    assert a == hk.hecke_generic(PE, eta, R.left(S))
    assert a == hk.hecke_generic(PE, eta, R.permuted(list(reversed(range(len(R))))))
    naive_a = hk.hecke_slash(PE.c[0], 2, 1, eta, R)
    assert naive_a != hk.hecke_slash(PE.c[0], 2, 1, eta, R.left(S))


def test_depth_zero_matches_slash_sum():
    h = Expr.sym(F, "h")
    R = hk.reps_gamma0(F, (0, 1))
    eta = hk.eta_p(F, (0, 1))
    assert hk.hecke_generic(AssocPoly(F, 4, 1, [h]), eta, R).coeff(0) == hk.hecke_slash(h, 4, 1, eta, R)


@pytest.mark.parametrize("expr,k,m", [("E", 2, 1), ("E*g", 4, 1), ("E^2*h", 8, 3)])
def test_coefficientwise_and_derivative_equivariance(expr, k, m):
    from qmf.serialize import parse_expr
    P = AssocPoly.of_expr(parse_expr(F, expr), k, m)
    R = hk.reps_gamma0(F, (1, 1))
    eta = hk.eta_p(F, (1, 1))
    assert all(x.is_zero() for x in hk.coefficient_residuals(P, eta, R))
    for n in (1, 2):
        assert all(x.is_zero() for x in hk.derivative_residual(P, eta, R, n).c)


def test_counterexample():
    c = hk.naive_counterexample()
    assert c.nonzero and c.value == c.brute
    den = (t + 1) * (t + 2) ** 2 * (t * t + t + 2) * (t * t + 2 * t + 2)
    assert (c.value * den).is_poly()  # reduced denominator divides the displayed one
    assert c.numerator == -c.value * den
    cof = c.cofactor
    assert cof.is_poly() and cof.degree() == 6 and cof.n[-1] == 1
    assert c.numerator == t * (t + 2) * cof


def test_counterexample_brute_force_independent():
    # recompute each slash term directly from f(z) = -pi^-1 t/(tz+t+1)
    from qmf.scalars import ZRat
    reps = hk.counterexample_reps(F)
    f = Expr.zfun(ZRat.const(t) / ZRat.linear(t, t + 1)) * Expr.pi(F, -1) * -1
    total = RatFunc.const(F, 0)
    for g in reps:
        term = slash_fn(f, g, 2, 1)
        (mono, c), = term.t.items()
        total = total + c(RatFunc.const(F, 0))
    assert total == hk.naive_counterexample().value
