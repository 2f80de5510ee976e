import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qmf import binomial as bn
from qmf.errors import OutOfRangeWeight

primes = st.sampled_from([2, 3, 5, 7])


@given(st.integers(0, 300), st.integers(0, 300), primes)
def test_lucas_matches_exact(n, k, p):
    assert bn.binom_mod_p(n, k, p) == math.comb(n, k) % p


@given(st.integers(-200, 200), st.integers(0, 60), primes)
def test_generalized_matches_exact(a, k, p):
    assert bn.binom_int(a, k, p) == bn.binom_z(a, k) % p


@pytest.mark.parametrize("n,k,p,v", [(4, 2, 3, 0), (5, 2, 3, 1), (9, 0, 3, 1), (0, 0, 2, 1)])
def test_binom_examples(n, k, p, v):
    assert bn.binom_mod_p(n, k, p) == v


@pytest.mark.parametrize("a,k,p,v", [(-2, 1, 3, 1), (-1, 2, 3, 1), (17, 0, 5, 1), (-7, 0, 2, 1)])
def test_binom_int_examples(a, k, p, v):
    assert bn.binom_int(a, k, p) == v


def test_vandermonde_examples():
    assert bn.vandermonde_check(0, 1, 4, 2, 3)
    assert bn.vandermonde_check(3, 2, 7, 3, 5)


def test_vandermonde_random():
    rng = random.Random(5)
    for _ in range(500):
        p = rng.choice([2, 3, 5])
        j = rng.randint(0, 6)
        n = j + rng.randint(0, 8)
        assert bn.vandermonde_check(j, rng.randint(-4, 8), rng.randint(-4, 20), n, p)


@pytest.mark.parametrize("k,m,q,d", [(4, 1, 3, 1), (2, 1, 3, 0), (0, 0, 3, 1), (0, 0, 5, 1), (8, 0, 3, 2)])
def test_dim_examples(k, m, q, d):
    assert bn.dim_level1(k, m, q) == d


@given(st.integers(0, 60), st.integers(0, 8), st.sampled_from([2, 3, 4, 5, 9]))
def test_dim_is_monomial_count(k, m, q):
    mons = bn.level1_monomials(k, m, q)
    assert len(mons) == bn.dim_level1(k, m, q)
    for a, b in mons:
        assert (q - 1) * a + (q + 1) * b == k


def test_nvh_examples():
    assert bn.nvh_check(5, 0, 0, 3).holds
    r = bn.nvh_check(8, 1, 1, 3)
    assert not r.holds
    assert r.failing()[0].index == 1 and r.failing()[0].binomial == 0 and r.failing()[0].dimension == 1
    assert bn.nvh_check(4, 1, 1, 3).holds


def test_nvh_rejects_small_weight():
    with pytest.raises(OutOfRangeWeight):
        bn.nvh_check(3, 2, 0, 3)


def test_nvh_custom_oracle():
    assert bn.nvh_check(8, 1, 1, 3, dim_oracle=lambda k, m, q: 0).holds


def test_plenty_of_cases_flags_agree():
    for k, m, ok in bn.plenty_of_cases(3, 1, 20):
        assert ok == bn.nvh_check(k, 1, m, 3).holds
