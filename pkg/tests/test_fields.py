import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qmf.fields import GF, FqPoly, RatFunc, get_field, prime_power
from strategies import FIELDS, field, poly, ratfunc


@pytest.mark.parametrize("q", FIELDS)
def test_field_axioms_exhaustive(q):
    F = get_field(q)
    E = list(F.elements())
    for a, b in itertools.product(E, E):
        assert F.add(a, b) == F.add(b, a)
        assert F.mul(a, b) == F.mul(b, a)
        assert F.sub(F.add(a, b), b) == a
        if b:
            assert F.mul(F.div(a, b), b) == a
    for a in E[1:]:
        assert F.pow(a, q - 1) == 1


@pytest.mark.parametrize("q,p,r", [(2, 2, 1), (4, 2, 2), (9, 3, 2), (8, 2, 3), (25, 5, 2)])
def test_prime_power(q, p, r):
    assert prime_power(q) == (p, r)


def test_prime_power_rejects_composite():
    with pytest.raises(ValueError):
        prime_power(6)


def test_explicit_default_modulus_is_the_same_field():
    F = get_field(4)
    assert get_field(4, F.modulus) is F
    assert get_field(3, (0, 1)) is get_field(3)


def test_other_modulus_gives_other_field():
    F = get_field(9)
    others = [m for m in ((1, 0, 1), (2, 1, 1), (2, 2, 1)) if m != F.modulus]
    G = get_field(9, others[0])
    assert G is not F and G.modulus == others[0]


@pytest.mark.parametrize("q", FIELDS)
def test_irreducible_count_degree_two(q):
    F = get_field(q)
    n = sum(1 for f in F.monic_polys(2) if F.is_irreducible(f))
    assert n == (q * q - q) // 2


@given(st.data())
def test_poly_division(data):
    F = data.draw(field())
    a = data.draw(poly(F, 6))
    b = data.draw(poly(F, 3))
    if not any(b):
        return
    qq, r = F.pdivmod(a, b)
    assert F.psub(F.padd(F.pmul(qq, b), r), a) == ()
    assert len(r) < len(F.padd(b, ()))


@given(st.data())
def test_gcd_divides(data):
    F = data.draw(field())
    a, b = data.draw(poly(F, 5)), data.draw(poly(F, 5))
    g = F.pgcd(a, b)
    if g:
        assert not F.pmod(a, g) and not F.pmod(b, g)
        assert g[-1] == 1


@given(st.data())
def test_ratfunc_field_laws(data):
    F = data.draw(field())
    a, b, c = (data.draw(ratfunc(F)) for _ in range(3))
    assert (a + b) * c == a * c + b * c
    assert a - a == RatFunc.const(F, 0)
    if b:
        assert (a / b) * b == a
    assert a.d[-1] == 1


@given(st.data())
def test_frobenius(data):
    F = data.draw(field())
    a, b = data.draw(ratfunc(F)), data.draw(ratfunc(F))
    p = F.p
    assert (a + b) ** p == a ** p + b ** p


def test_fqpoly_basics():
    F = get_field(3)
    t = FqPoly.T(F)
    f = t * t + FqPoly.const(F, 1)
    assert f.degree() == 2 and f.is_monic() and f.is_irreducible()
    assert not (t * t + FqPoly.const(F, 2)).is_irreducible()
    assert f.to_ratfunc() == RatFunc(F, [1, 0, 1])


def test_flint_and_pure_kernels_agree():
    F = get_field(5)
    G = GF(5)
    G.fast = False
    a, b = (3, 1, 4, 1, 0, 2) * 5, (2, 7 % 5, 1) * 9
    assert F.pmul(a, b) == G.pmul(a, b)
    assert F.pgcd(a, b) == G.pgcd(a, b)
    assert F.pdivmod(a, b) == G.pdivmod(a, b)
