"""Shared hypothesis strategies."""

import random

from hypothesis import strategies as st

from qmf.fields import RatFunc, get_field

FIELDS = (2, 3, 4, 5, 9)
PRIME_FIELDS = (2, 3, 5)


def field(qs=FIELDS):
    return st.sampled_from(qs).map(get_field)


@st.composite
def poly(draw, F, max_deg=4):
    n = draw(st.integers(0, max_deg + 1))
    c = draw(st.lists(st.integers(0, F.q - 1), min_size=n, max_size=n))
    while c and not c[-1]:
        c.pop()  # kernel polynomials are kept trimmed
    return tuple(c)


@st.composite
def ratfunc(draw, F, nonzero=False):
    num = draw(poly(F, 3))
    den = draw(poly(F, 2))
    if not any(den):
        den = (1,)
    r = RatFunc(F, list(num), list(den))
    if nonzero and r.is_zero():
        r = RatFunc.const(F, 1)
    return r


seeds = st.integers(0, 2 ** 32 - 1).map(random.Random)
