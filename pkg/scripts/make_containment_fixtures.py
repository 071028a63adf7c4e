"""Write the hand-built containment pairs to tests/fixtures/containment.json."""

import json
import pathlib

ROOT = pathlib.Path(__file__).resolve().parent.parent
Y, N = True, False

PAIRS = [
    ("identical_string", {"type": "string"}, {"type": "string"}, Y),
    ("false_prop_vs_not_required", {"type": "object", "properties": {"foo": False}}, {"not": {"required": ["foo"]}}, Y),
    ("not_required_vs_false_prop", {"not": {"required": ["foo"]}}, {"type": "object", "properties": {"foo": False}}, Y),
    ("false_prop_untyped_vs_not_required", {"properties": {"foo": False}}, {"not": {"required": ["foo"]}}, N),
    ("minimum_widen", {"minimum": 1}, {"minimum": 0}, Y),
    ("minimum_narrow", {"minimum": 0}, {"minimum": 1}, N),
    ("integer_in_number", {"type": "integer"}, {"type": "number"}, Y),
    ("number_in_integer", {"type": "number"}, {"type": "integer"}, N),
    ("multiple_of_chain", {"multipleOf": 6}, {"multipleOf": 3}, Y),
    ("multiple_of_reverse", {"multipleOf": 3}, {"multipleOf": 6}, N),
    ("fraction_multiples", {"type": "number", "multipleOf": 0.5}, {"type": "number", "multipleOf": 0.25}, Y),
    ("exclusive_in_closed", {"exclusiveMinimum": 0, "exclusiveMaximum": 1}, {"minimum": 0, "maximum": 1}, Y),
    ("closed_in_exclusive", {"type": "number", "minimum": 0, "maximum": 1}, {"exclusiveMinimum": 0, "exclusiveMaximum": 1}, N),
    ("integers_between", {"type": "integer", "exclusiveMinimum": 0, "exclusiveMaximum": 3}, {"enum": [1, 2]}, Y),
    ("enum_subset", {"enum": [1, "a"]}, {"enum": [1, "a", None]}, Y),
    ("enum_superset", {"enum": [1, "a", None]}, {"enum": [1, "a"]}, N),
    ("pattern_narrow", {"type": "string", "pattern": "^ab"}, {"type": "string", "pattern": "^a"}, Y),
    ("pattern_wide", {"type": "string", "pattern": "^a"}, {"type": "string", "pattern": "^ab"}, N),
    ("length_from_pattern", {"type": "string", "pattern": "^[a-z]{3}$"}, {"type": "string", "maxLength": 3, "minLength": 3}, Y),
    ("required_subset", {"required": ["a", "b"]}, {"required": ["a"]}, Y),
    ("required_superset", {"required": ["a"]}, {"required": ["a", "b"]}, N),
    ("closed_object_in_open", {"type": "object", "properties": {"a": {"type": "string"}}, "additionalProperties": False}, {"type": "object", "properties": {"a": {"type": "string"}}}, Y),
    ("open_object_in_closed", {"type": "object", "properties": {"a": {"type": "string"}}}, {"type": "object", "additionalProperties": False, "properties": {"a": {}}}, N),
    ("max_properties_from_closed", {"type": "object", "properties": {"a": {}, "b": {}}, "additionalProperties": False}, {"maxProperties": 2}, Y),
    ("pattern_properties_cover", {"patternProperties": {"^a": {"type": "integer"}}}, {"properties": {"ab": {"type": "number"}}}, Y),
    ("pattern_properties_miss", {"patternProperties": {"^b": {"type": "integer"}}}, {"properties": {"ab": {"type": "number"}}}, N),
    ("items_in_contains", {"type": "array", "items": {"type": "string"}, "minItems": 1}, {"contains": {"type": "string"}}, Y),
    ("contains_in_items", {"type": "array", "contains": {"type": "string"}}, {"items": {"type": "string"}}, N),
    ("tuple_in_max_items", {"type": "array", "items": [{}, {}], "additionalItems": False}, {"maxItems": 2}, Y),
    ("min_contains_implies_min_items", {"type": "array", "contains": {"type": "null"}, "minContains": 3}, {"minItems": 3}, Y),
    ("max_contains_not_max_items", {"type": "array", "contains": {"type": "null"}, "maxContains": 1}, {"maxItems": 1}, N),
    ("any_of_split", {"anyOf": [{"type": "string"}, {"type": "null"}]}, {"type": ["null", "string"]}, Y),
    ("one_of_vs_any_of", {"oneOf": [{"minimum": 0}, {"maximum": 10}]}, {"anyOf": [{"minimum": 0}, {"maximum": 10}]}, Y),
    ("any_of_vs_one_of", {"anyOf": [{"minimum": 0}, {"maximum": 10}]}, {"oneOf": [{"minimum": 0}, {"maximum": 10}]}, N),
    ("recursive_lists", {"definitions": {"l": {"type": "array", "items": {"$ref": "#/definitions/l"}, "maxItems": 1}}, "$ref": "#/definitions/l"}, {"definitions": {"m": {"type": "array", "items": {"$ref": "#/definitions/m"}}}, "$ref": "#/definitions/m"}, Y),
    ("recursive_lists_reverse", {"definitions": {"m": {"type": "array", "items": {"$ref": "#/definitions/m"}}}, "$ref": "#/definitions/m"}, {"definitions": {"l": {"type": "array", "items": {"$ref": "#/definitions/l"}, "maxItems": 1}}, "$ref": "#/definitions/l"}, N),
    ("false_in_anything", False, {"type": "string"}, Y),
    ("anything_in_true", {"type": "string"}, True, Y),
    ("true_in_false", True, False, N),
    ("dependency_implication", {"required": ["a", "b"]}, {"dependencies": {"a": ["b"]}}, Y),
]


def main():
    out = [{"name": n, "left": a, "right": b, "included": inc} for n, a, b, inc in PAIRS]
    path = ROOT / "tests" / "fixtures" / "containment.json"
    path.write_text(json.dumps(out, indent=1) + "\n")
    print(f"wrote {len(out)} pairs to {path}")


if __name__ == "__main__":
    main()
