import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from boundext.approximations import CompactApprox, FunctionApprox, PointApprox, ULACApprox
from boundext.errors import SchemaError
from boundext.exact import CarlesonRect, RationalDisk, RationalRect
from boundext.harness import build_candidate_configuration
from boundext.serialize import decode_rational, dumps, encode_rational, loads

from conftest import generated

F = Fraction
q = st.fractions(min_value=-5, max_value=5, max_denominator=10**9)


@st.composite
def rects(draw):
    a, b = sorted(draw(st.lists(q, min_size=2, max_size=2, unique=True)))
    c, d = sorted(draw(st.lists(q, min_size=2, max_size=2, unique=True)))
    return RationalRect(a, b, c, d)


@st.composite
def pieces(draw):
    if draw(st.booleans()):
        return RationalDisk.origin(draw(st.fractions(min_value=F(1, 10**6), max_value=F(999, 1000), max_denominator=10**6)))
    r1, r2 = sorted(draw(st.lists(st.fractions(min_value=F(1, 100), max_value=F(99, 100), max_denominator=1000), min_size=2, max_size=2, unique=True)))
    t1 = draw(st.fractions(min_value=-7, max_value=7, max_denominator=1000))
    w = draw(st.fractions(min_value=F(1, 1000), max_value=6, max_denominator=1000))
    return CarlesonRect(r1, r2, t1, t1 + w)


@given(q)
def test_rational_round_trip(x):
    enc = encode_rational(x)
    assert decode_rational(enc) == x
    assert F(enc["num"], enc["den"]) == x and enc["den"] > 0


@given(st.lists(st.tuples(pieces(), rects()), min_size=1, max_size=8))
def test_phi_round_trip(pairs):
    phi = FunctionApprox(tuple(pairs))
    assert loads(dumps(phi), "phi.approx") == phi


@given(st.lists(rects(), min_size=1, max_size=8), st.lists(st.integers(0, 100), max_size=8), rects())
def test_other_round_trips(rs, vals, r):
    for x in (CompactApprox(tuple(rs)), ULACApprox(tuple(vals)), PointApprox(r)):
        assert loads(dumps(x)) == x


def test_configuration_round_trip():
    _, inputs = generated("identity", 4)
    c = build_candidate_configuration(inputs, 5, 17, evaluate=False).config
    assert loads(dumps(c), "configuration") == c


@pytest.mark.parametrize(
    "doc",
    [
        '{"type":"point.approx","rect":{"x_lo":{"num":0,"den":0},"x_hi":{"num":1,"den":1},"y_lo":{"num":0,"den":1},"y_hi":{"num":1,"den":1}}}',
        '{"type":"point.approx","rect":{"x_lo":{"num":0.5,"den":1},"x_hi":{"num":1,"den":1},"y_lo":{"num":0,"den":1},"y_hi":{"num":1,"den":1}}}',
        '{"type":"point.approx","rect":{"x_lo":{"num":1,"den":1},"x_hi":{"num":1,"den":1},"y_lo":{"num":0,"den":1},"y_hi":{"num":1,"den":1}}}',
        '{"type":"point.approx"}',
        '{"type":"mystery"}',
        '{"type":"ulac.approx","values":[1,-2]}',
        '{"type":"ulac.approx","values":[true]}',
        '{"type":"phi.approx","pairs":[{"piece":{"kind":"disk","radius":{"num":1,"den":1}},"value":{"x_lo":{"num":0,"den":1},"x_hi":{"num":1,"den":1},"y_lo":{"num":0,"den":1},"y_hi":{"num":1,"den":1}}}]}',
        '{"type":"phi.approx","pairs":[{"piece":{"kind":"hexagon"}}]}',
        "not json",
        "[]",
    ],
)
def test_schema_errors(doc):
    with pytest.raises(SchemaError):
        loads(doc)


def test_wrong_document_type():
    doc = dumps(ULACApprox((1, 2)))
    with pytest.raises(SchemaError):
        loads(doc, "boundary.approx")


def test_output_is_lowest_terms_and_deterministic():
    r = PointApprox(RationalRect(F(2, 4), F(3, 4), 0, 1))
    text = dumps(r)
    assert text == dumps(r)
    assert json.loads(text)["rect"]["x_lo"] == {"num": 1, "den": 2}
