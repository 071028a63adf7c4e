"""Write the handwritten satisfiability fixtures and their expected verdicts."""

import json
import pathlib

ROOT = pathlib.Path(__file__).resolve().parent.parent
S, U = "sat", "unsat"
cases = [
 # base types
 ("null", {"type": "null"}, S),
 ("bool_const_true", {"const": True}, S),
 ("bool_enum_clash", {"allOf": [{"const": True}, {"const": False}]}, U),
 ("string_vs_number", {"allOf": [{"type": "string"}, {"type": "number"}]}, U),
 ("false_schema", False, U),
 ("not_true", {"not": {}}, U),
 ("type_list_intersection", {"type": ["string", "null"], "not": {"type": "null"}}, S),
 ("enum_filtered", {"enum": [1, "a", None], "type": "string"}, S),
 ("enum_all_filtered", {"enum": [1, 2], "type": "string"}, U),
 # strings
 ("pattern_and_length", {"type": "string", "pattern": "^[a-c]+$", "minLength": 3}, S),
 ("pattern_conflict", {"type": "string", "allOf": [{"pattern": "^a"}, {"pattern": "^b"}]}, U),
 ("max_length_vs_pattern", {"type": "string", "pattern": "^abcd", "maxLength": 3}, U),
 ("pattern_negated", {"type": "string", "pattern": "x", "not": {"pattern": "^x"}}, S),
 ("length_window", {"type": "string", "minLength": 2, "maxLength": 2, "pattern": "^\\d+$"}, S),
 ("length_empty_window", {"type": "string", "minLength": 3, "maxLength": 2}, U),
 # numbers
 ("integer_range", {"type": "integer", "minimum": 3, "maximum": 4}, S),
 ("integer_gap", {"type": "integer", "exclusiveMinimum": 3, "exclusiveMaximum": 4}, U),
 ("number_gap", {"type": "number", "exclusiveMinimum": 3, "exclusiveMaximum": 4}, S),
 ("multiple_of_window", {"multipleOf": 10, "minimum": 0, "maximum": 20, "not": {"anyOf": [{"multipleOf": 4}, {"multipleOf": 6}]}}, S),
 ("multiple_of_dominated", {"type": "number", "multipleOf": 6, "not": {"multipleOf": 3}}, U),
 ("multiple_of_fraction", {"type": "number", "multipleOf": 0.25, "minimum": 0.3, "maximum": 0.6}, S),
 ("multiple_of_none_in_window", {"type": "number", "multipleOf": 0.25, "exclusiveMinimum": 0.5, "exclusiveMaximum": 0.75}, U),
 ("unbounded_not_multiples", {"type": "integer", "exclusiveMinimum": 0, "not": {"anyOf": [{"multipleOf": 2}, {"multipleOf": 3}]}}, S),
 ("negative_side", {"type": "integer", "maximum": -7, "not": {"multipleOf": 7}}, S),
 ("single_point", {"type": "number", "minimum": 5, "maximum": 5, "multipleOf": 2.5}, S),
 ("single_point_bad", {"type": "number", "minimum": 5, "maximum": 5, "multipleOf": 2}, U),
 ("draft4_exclusive", {"type": "number", "minimum": 1, "exclusiveMinimum": True, "maximum": 1}, U),
 # objects
 ("required_vs_false_prop", {"type": "object", "required": ["a"], "properties": {"a": False}}, U),
 ("required_pattern_typed", {"type": "object", "required": ["ab"], "patternProperties": {"^a": {"type": "string"}, "b$": {"type": "string", "minLength": 2}}}, S),
 ("required_overlap_conflict", {"type": "object", "required": ["ab"], "patternProperties": {"^a": {"type": "string"}, "b$": {"type": "number"}}}, U),
 ("additional_false_required", {"type": "object", "properties": {"a": {}}, "additionalProperties": False, "required": ["b"]}, U),
 ("max_properties_vs_required", {"type": "object", "required": ["a", "b"], "maxProperties": 1}, U),
 ("min_properties_additional_false", {"type": "object", "properties": {"a": {}, "b": {}}, "additionalProperties": False, "minProperties": 2}, S),
 ("min_properties_too_many", {"type": "object", "properties": {"a": {}, "b": {}}, "additionalProperties": False, "minProperties": 3}, U),
 ("property_names_length", {"type": "object", "propertyNames": {"maxLength": 1, "pattern": "^[xy]$"}, "minProperties": 2}, S),
 ("property_names_too_few", {"type": "object", "propertyNames": {"enum": ["x", "y"]}, "minProperties": 3}, U),
 ("single_key_two_patterns", {"definitions": {"var1": {"multipleOf": 10}, "var2": {"multipleOf": 5}}, "type": "object", "required": ["abz"], "not": {"patternProperties": {"^a": {"$ref": "#/definitions/var1"}}}, "maxProperties": 1, "patternProperties": {"z$": {"$ref": "#/definitions/var2"}}}, S),
 ("dependencies_chain", {"type": "object", "required": ["a"], "dependencies": {"a": ["b"], "b": {"properties": {"c": {"type": "null"}}, "required": ["c"]}}}, S),
 ("dependencies_conflict", {"type": "object", "required": ["a"], "dependencies": {"a": ["b"]}, "properties": {"b": False}}, U),
 ("not_required_vs_required", {"required": ["foo"], "not": {"required": ["foo"]}}, U),
 # arrays
 ("tuple_and_min_items", {"type": "array", "items": [{"type": "string"}, {"type": "integer"}], "minItems": 3, "contains": {"type": "boolean"}}, S),
 ("items_false_min_items", {"type": "array", "items": False, "minItems": 1}, U),
 ("additional_items_false", {"type": "array", "items": [{}, {}], "additionalItems": False, "minItems": 3}, U),
 ("contains_vs_items", {"type": "array", "items": {"type": "string"}, "contains": {"type": "number"}}, U),
 ("contains_counts", {"type": "array", "contains": {"type": "integer"}, "minContains": 2, "maxContains": 2, "maxItems": 3}, S),
 ("contains_counts_conflict", {"type": "array", "contains": {"type": "integer"}, "minContains": 3, "maxItems": 2}, U),
 ("contains_two_kinds", {"type": "array", "allOf": [{"contains": {"type": "string"}}, {"contains": {"type": "null"}}], "maxItems": 2}, S),
 ("contains_two_kinds_too_short", {"type": "array", "allOf": [{"contains": {"type": "string"}}, {"contains": {"type": "null"}}], "maxItems": 1}, U),
 ("nested_array", {"type": "array", "items": {"type": "array", "minItems": 1, "items": {"type": "array", "contains": {"const": 7}}}, "minItems": 2}, S),
 ("nested_array_unsat", {"type": "array", "minItems": 1, "items": {"type": "array", "minItems": 1, "items": {"type": "array", "minItems": 1, "items": False}}}, U),
 ("head_position_conflict", {"type": "array", "items": [{"type": "string"}], "contains": {"type": "number"}, "maxItems": 1}, U),
 # recursion and references
 ("recursive_list", {"definitions": {"list": {"anyOf": [{"type": "null"}, {"type": "object", "properties": {"next": {"$ref": "#/definitions/list"}}, "required": ["next"]}]}}, "allOf": [{"$ref": "#/definitions/list"}, {"type": "object"}]}, S),
 ("recursive_infinite", {"definitions": {"inf": {"type": "object", "required": ["next"], "properties": {"next": {"$ref": "#/definitions/inf"}}}}, "$ref": "#/definitions/inf"}, U),
 ("recursive_depth_three", {"definitions": {"t": {"type": "array", "minItems": 1, "items": {"anyOf": [{"type": "integer", "minimum": 2}, {"$ref": "#/definitions/t"}]}}}, "allOf": [{"$ref": "#/definitions/t"}, {"items": {"type": "array", "items": {"type": "array"}}}]}, S),
 ("root_self_reference", {"type": "object", "properties": {"child": {"$ref": "#"}}, "required": ["child"], "minProperties": 1, "maxProperties": 1}, U),
 ("one_of_exclusive", {"oneOf": [{"type": "integer"}, {"multipleOf": 2}], "minimum": 0, "maximum": 3}, S),
 ("one_of_overlap_only", {"oneOf": [{"type": "integer"}, {"type": "integer"}]}, U),
 ("if_then_else", {"if": {"type": "string"}, "then": {"minLength": 2}, "else": {"type": "string"}}, S),
 ("if_then_else_unsat", {"if": {"type": "string"}, "then": False, "else": False}, U),
]
out = ROOT / "tests" / "fixtures" / "handwritten"
out.mkdir(parents=True, exist_ok=True)
expected = {}
for i, (name, schema, verdict) in enumerate(cases):
    fn = f"{i:02d}_{name}.json"
    (out / fn).write_text(json.dumps(schema, indent=2) + "\n")
    expected[fn] = verdict
(ROOT / "tests" / "fixtures" / "handwritten_expected.json").write_text(json.dumps(expected, indent=2, sort_keys=True) + "\n")
print(len(cases), sum(v == S for v in expected.values()))
