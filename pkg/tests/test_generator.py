import itertools
from types import SimpleNamespace

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from jswitness import patterns
from jswitness.algebra import IsBoolValue, Pattern, SchemaDoc, Var, validate_doc
from jswitness.generator import NONE, Deadline, bottom_up, disjoint_solutions, gen_bool, gen_string
from jswitness.json_model import INF, from_python
from jswitness.normalizer import normalize
from jswitness.pipeline import solve
from jswitness.preparer import prepare
from jswitness.translator import translate
from oracles import probe_values, reference_valid


def witness_of(schema):
    schema = from_python(schema)
    res = solve(schema)
    if res.satisfiable:
        assert res.validated
        assert reference_valid(schema, res.witness)
    return res


def test_booleans():
    assert gen_bool(frozenset()) is True
    assert gen_bool(frozenset({IsBoolValue(False)})) is False
    assert gen_bool(frozenset({IsBoolValue(False), IsBoolValue(True)})) is NONE


def test_strings():
    a, b = Pattern(patterns.parse_pattern("^a")), Pattern(patterns.parse_pattern("^.b"))
    assert gen_string(frozenset({a, b})) == "ab"
    assert gen_string(frozenset({a, Pattern(patterns.parse_pattern("^b"))})) is NONE
    assert gen_string(frozenset()) == ""


def test_base_witnesses():
    assert witness_of({"type": "null"}).witness is None
    assert witness_of({"type": "integer", "exclusiveMinimum": 2}).witness == 3
    assert witness_of({"type": "string", "minLength": 2, "pattern": "^x"}).witness == "x "
    assert witness_of({"enum": [1, "a", None], "type": "string"}).witness == "a"


def test_disjoint_solutions_enumerate_each_partition_once():
    c = lambda *s: SimpleNamespace(rp_satisfied=frozenset(s))  # noqa: E731
    choices = [c(0), c(1), c(2), c(0, 1), c(1, 2), c(0, 1, 2)]
    sols = list(disjoint_solutions(choices, 3, 10, Deadline(None)))
    as_sets = [frozenset(x.rp_satisfied for x in s) for s in sols]
    # independent count: subsets of the blocks that partition {0, 1, 2}
    blocks = [x.rp_satisfied for x in choices]
    expected = {
        frozenset(sub)
        for sub in itertools.chain.from_iterable(itertools.combinations(blocks, k) for k in range(1, 4))
        if sum(len(b) for b in sub) == 3 and frozenset().union(*sub) == {0, 1, 2}
    }
    assert len(as_sets) == len(set(as_sets))
    assert set(as_sets) == expected
    assert [len(s) for s in sols] == sorted(len(s) for s in sols)
    assert all(len(s) <= 1 for s in disjoint_solutions(choices, 3, 1, Deadline(None)))
    assert list(disjoint_solutions([], 0, INF, Deadline(None))) == [[]]


def test_object_key_regions_must_hold_enough_keys():
    assert not witness_of({"propertyNames": {"enum": ["a"]}, "type": "object", "minProperties": 2}).satisfiable
    res = witness_of({"propertyNames": {"enum": ["a", "b"]}, "type": "object", "minProperties": 2})
    assert set(res.witness) == {"a", "b"}
    assert not witness_of({"type": "object", "required": ["a", "b"], "maxProperties": 1}).satisfiable
    # required keys only constrain objects
    assert witness_of({"required": ["a", "b"], "maxProperties": 1}).witness is None


def test_pattern_requirement_shared_by_one_member():
    res = witness_of(
        {
            "type": "object",
            "maxProperties": 1,
            "allOf": [
                {"not": {"patternProperties": {"^a": {"not": {"type": "integer"}}}}},
                {"not": {"patternProperties": {"b$": {"not": {"minimum": 5}}}}},
            ],
        }
    )
    ((k, v),) = res.witness.items()
    assert k.startswith("a") and k.endswith("b") and v >= 5


def test_array_shapes():
    res = witness_of({"type": "array", "contains": {"type": "null"}, "minContains": 2, "items": [{"type": "string"}]})
    assert res.witness[0] == "" and res.witness[1:] == [None, None]
    res = witness_of({"type": "array", "minItems": 3, "items": {"type": "boolean"}})
    assert res.witness == [True, True, True]
    assert not witness_of(
        {"type": "array", "contains": {"type": "null"}, "maxContains": 1, "minItems": 2, "items": {"type": "null"}}
    ).satisfiable
    assert not witness_of({"type": "array", "items": [False], "minItems": 1}).satisfiable


def test_empty_array_when_nothing_is_required():
    assert witness_of({"type": "array", "minContains": 0, "maxContains": 0, "contains": {}}).witness == []
    # minContains defaults to one
    assert not witness_of({"type": "array", "maxContains": 0, "contains": {}}).satisfiable


def test_pass_count_stays_under_bound():
    depth = 5
    defs = {"d0": {"type": "null"}}
    for i in range(1, depth + 1):
        defs[f"d{i}"] = {"type": "object", "required": ["k"], "properties": {"k": {"$ref": f"#/definitions/d{i - 1}"}}}
    res = solve(from_python({"definitions": defs, "$ref": f"#/definitions/d{depth}"}))
    assert res.satisfiable and res.validated
    assert res.pass_count >= depth
    assert res.pass_count <= res.pass_bound


def test_bottom_up_assignment_is_validated():
    doc = translate(from_python({"anyOf": [{"type": "array", "items": {"$ref": "#"}, "minItems": 2}, {"type": "null"}]}))
    gen = bottom_up(prepare(normalize(doc)))
    for name, value in gen.assignment.items():
        if name in doc.env:
            assert validate_doc(value, SchemaDoc(Var(name), doc.env)), name


def test_timeout_is_reported():
    from jswitness.errors import Timeout
    from jswitness.pipeline import PipelineConfig

    with pytest.raises(Timeout):
        solve(from_python({"type": "string", "pattern": "^(a|b)*a(a|b){6}$"}), PipelineConfig(timeout=0.0))


# ---------------------------------------------------------------------------
# random schemas: any witness validates, and any valid probe means a witness exists

leaf_schemas = st.sampled_from(
    [
        {"type": "null"},
        {"type": "integer"},
        {"type": "string"},
        {"type": "object"},
        {"type": "array"},
        {"minimum": 2},
        {"maximum": 1},
        {"multipleOf": 3},
        {"pattern": "^a"},
        {"maxLength": 1},
        {"required": ["a"]},
        {"maxProperties": 1},
        {"minItems": 2},
        {"enum": [1, "a", None]},
        {"const": {"a": 1}},
        True,
        False,
    ]
)


def _wrap(kind, sub):
    return {
        "not": {"not": sub},
        "items": {"items": sub},
        "contains": {"contains": sub, "maxContains": 1},
        "props": {"properties": {"a": sub}},
        "patt": {"patternProperties": {"^b": sub}},
        "addl": {"properties": {"a": {}}, "additionalProperties": sub},
    }[kind]


schemas = st.recursive(
    leaf_schemas,
    lambda inner: st.tuples(st.sampled_from(["not", "items", "contains", "props", "patt", "addl"]), inner).map(
        lambda t: _wrap(*t)
    )
    | st.lists(inner, min_size=2, max_size=3).map(lambda xs: {"allOf": xs})
    | st.lists(inner, min_size=2, max_size=3).map(lambda xs: {"anyOf": xs})
    | st.lists(inner, min_size=2, max_size=2).map(lambda xs: {"oneOf": xs}),
    max_leaves=6,
)


@settings(max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(schemas)
def test_random_schemas_agree_with_reference(schema):
    schema = from_python(schema)
    res = solve(schema)
    if res.satisfiable:
        assert res.validated
        assert reference_valid(schema, res.witness), res.witness
    else:
        for v in probe_values(schema, 60, max_depth=3):
            assert not reference_valid(schema, v), v
