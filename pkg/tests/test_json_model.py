from decimal import Decimal
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from jswitness.errors import JsonError
from jswitness.json_model import (
    INF,
    NEG_INF,
    depth,
    dumps,
    fraction_to_decimal,
    from_python,
    json_equal,
    kind,
    parse_json,
    validate,
)
from jswitness.translator import translate

json_values = st.recursive(
    st.none()
    | st.booleans()
    | st.integers(-5, 5).map(Decimal)
    | st.sampled_from([Decimal("1.0"), Decimal("0.5"), Decimal("-2.50")])
    | st.text(alphabet="ab", max_size=2),
    lambda children: st.lists(children, max_size=3)
    | st.dictionaries(st.text(alphabet="xy", max_size=1), children, max_size=3),
    max_leaves=8,
)


def test_object_member_order_is_irrelevant():
    assert json_equal(parse_json('{"a":1,"b":2}'), parse_json('{"b":2,"a":1}'))


def test_arrays_are_ordered():
    assert not json_equal(parse_json("[1,2]"), parse_json("[2,1]"))


def test_numbers_compare_by_value():
    assert json_equal(parse_json("1.0"), parse_json("1"))
    assert json_equal(Decimal("1e2"), Decimal(100))


def test_booleans_are_not_numbers():
    assert not json_equal(True, Decimal(1))
    assert not json_equal(False, Decimal(0))
    assert kind(True) == "Bool"


@pytest.mark.parametrize("text, d", [("42", 1), ("[]", 1), ('{"a":[1]}', 3), ("[[],[[]]]", 3)])
def test_depth(text, d):
    assert depth(parse_json(text)) == d


def _depth_oracle(v):
    children = list(v.values()) if isinstance(v, dict) else v if isinstance(v, list) else []
    return 1 + max(map(_depth_oracle, children), default=0)


@given(json_values)
def test_depth_matches_recursive_definition(v):
    assert depth(v) == _depth_oracle(v)


@given(json_values, json_values, json_values)
def test_equality_is_an_equivalence(a, b, c):
    assert json_equal(a, a)
    assert json_equal(a, b) == json_equal(b, a)
    if json_equal(a, b) and json_equal(b, c):
        assert json_equal(a, c)


@given(json_values)
def test_dumps_round_trips(v):
    assert json_equal(parse_json(dumps(v)), v)


def test_dumps_is_canonical():
    assert dumps(parse_json('{"b": 1.50, "a": [true, null, "x"]}')) == '{"a":[true,null,"x"],"b":1.5}'
    assert dumps(Decimal("1E+2")) == "100"


def test_parse_keeps_numbers_exact():
    assert parse_json("0.1") + parse_json("0.2") == parse_json("0.3")


def test_parse_rejects_duplicates_and_non_finite():
    with pytest.raises(JsonError):
        parse_json('{"a":1,"a":2}')
    with pytest.raises(JsonError):
        parse_json("NaN")
    with pytest.raises(JsonError):
        parse_json("[1,")


def test_fraction_to_decimal():
    assert fraction_to_decimal(Fraction(1, 8)) == Decimal("0.125")
    assert fraction_to_decimal(Fraction(-5, 2)) == Decimal("-2.5")
    with pytest.raises(ValueError):
        fraction_to_decimal(Fraction(1, 3))


def test_from_python_uses_float_repr():
    assert from_python(0.1) == Decimal("0.1")
    assert from_python({"a": [1, None]}) == {"a": [Decimal(1), None]}


def test_infinities_are_ordered_against_numbers():
    assert NEG_INF < Decimal(-(10**30)) < Decimal(10**30) < INF
    assert -INF == NEG_INF


@pytest.mark.parametrize("value, expected", [({}, True), ({"foo": 1}, False), (None, False)])
def test_validate_negated_required(value, expected):
    doc = translate({"not": {"required": ["foo"]}})
    assert validate(from_python(value), doc) is expected
