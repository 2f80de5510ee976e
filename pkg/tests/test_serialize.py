import json
from importlib import resources

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qmf import hecke as hk
from qmf.binomial import nvh_check
from qmf.eexp import to_e
from qmf.errors import UsageError
from qmf.fields import FqPoly, RatFunc, get_field
from qmf.matrix import Matrix2
from qmf.qmod import AssocPoly
from qmf.scalars import ZRat
from qmf.serialize import dumps, loads, nvh_doc, parse_expr, parse_poly, same, to_doc
from qmf.structure import decompose
from strategies import FIELDS, field, ratfunc

jsonschema = pytest.importorskip("jsonschema")
SCHEMA = json.loads(resources.files("qmf").joinpath("schema/qmf.schema.json").read_text())


def valid(doc):
    jsonschema.validate(doc, SCHEMA)


EXPRS = ["E", "g*h - E^2*g", "D(1, g)", "Dn(2, E*h)", "pi^2*g + T*E/(T+1)", "form(\"f\", 4, 1)*E"]


@pytest.mark.parametrize("q", FIELDS)
@pytest.mark.parametrize("text", EXPRS)
def test_expr_round_trip(q, text):
    F = get_field(q)
    f = parse_expr(F, text)
    doc = to_doc(f)
    valid(doc)
    assert same(loads(json.dumps(doc)), f)
    assert dumps(f) == dumps(loads(dumps(f)))


@given(st.data())
def test_ratfunc_round_trip(data):
    F = data.draw(field())
    r = data.draw(ratfunc(F))
    valid(to_doc(r))
    assert loads(dumps(r)) == r


@pytest.mark.parametrize("q", (2, 3, 4))
def test_structured_kinds_round_trip(q):
    F = get_field(q)
    t = RatFunc.T(F)
    P = AssocPoly.of_expr(parse_expr(F, "E^2*g + h*E"), q + 3, 2)
    objs = [
        P,
        to_e(P),
        FqPoly(F, [1, 0, 1]),
        ZRat.linear(t, t + 1),
        Matrix2(F, 1, 1, t, t + 1),
        hk.reps_gamma0(F, (0, 1)),
    ]
    for x in objs:
        d = to_doc(x)
        valid(d)
        assert same(loads(json.dumps(d)), x), type(x).__name__


def test_counterexample_and_decomposition_docs():
    c = hk.naive_counterexample()
    d = to_doc(c)
    valid(d)
    assert d["pi_exponent"] == -1 and same(loads(dumps(c)), c)
    F = get_field(3)
    dec = decompose(to_e(AssocPoly.of_expr(parse_expr(F, "D(1,g)*E + g*E^2 + g^3"), 6, 2)))
    dd = to_doc(dec)
    valid(dd)
    assert same(loads(dumps(dec)), dec)


def test_nvh_doc():
    rep = nvh_check(8, 2, 2, 3)
    d = nvh_doc(rep)
    valid(d)
    assert loads(json.dumps(d)) == rep


def test_keys_sorted_and_deterministic():
    F = get_field(5)
    s = dumps(parse_expr(F, "h*g + E"))
    assert s == json.dumps(json.loads(s), sort_keys=True)
    assert s == dumps(parse_expr(F, "E + g*h"))


@pytest.mark.parametrize("bad", ["g +", "x", "g**h", "g^-1", "open('x')", "D(g)", "1 if g else 2"])
def test_parse_errors(bad):
    with pytest.raises(UsageError):
        parse_expr(get_field(3), bad)


def test_newer_version_rejected():
    doc = to_doc(RatFunc.T(get_field(3)))
    doc["version"] = 99
    with pytest.raises(UsageError):
        loads(json.dumps(doc))


def test_parse_poly():
    F = get_field(3)
    assert parse_poly(F, "T^2 + 2") == (2, 0, 1)
    assert parse_poly(F, "0") == ()


def test_field_canonical():
    assert get_field(3, None) is get_field(3, [1, 0, 1][:0] or None)
    F4 = get_field(4)
    assert get_field(4, F4.modulus) is F4
