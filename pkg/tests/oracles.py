"""Independent checks used across the test suite.

The reference validator is the third-party ``jsonschema`` Draft-7
implementation, extended to count ``contains`` matches for
``minContains``/``maxContains`` and to treat exact decimals as numbers.
Random values come from a seeded ``random.Random`` and are built from the
constants that appear in the schema, so that the interesting corners
(required keys, enumerated values, bound values) are actually hit.
"""

from __future__ import annotations

import json
import random
from decimal import Decimal
from pathlib import Path

import jsonschema
from jsonschema import Draft7Validator, ValidationError, validators

from jswitness import patterns
from jswitness.errors import UnsupportedPattern
from jswitness.json_model import from_python

FIXTURES = Path(__file__).parent / "fixtures"
HANDWRITTEN = FIXTURES / "handwritten"


# ---------------------------------------------------------------------------
# reference validator


def _is_number(checker, v):
    return isinstance(v, (int, float, Decimal)) and not isinstance(v, bool)


def _is_integer(checker, v):
    if isinstance(v, bool):
        return False
    if isinstance(v, int):
        return True
    if isinstance(v, Decimal):
        return v.is_finite() and v == v.to_integral_value()
    return isinstance(v, float) and v.is_integer()


_TYPES = Draft7Validator.TYPE_CHECKER.redefine_many({"number": _is_number, "integer": _is_integer})


def _contains(validator, contains, instance, schema):
    if not validator.is_type(instance, "array"):
        return
    lo = schema.get("minContains", 1)
    hi = schema.get("maxContains")
    n = sum(1 for x in instance if validator.evolve(schema=contains).is_valid(x))
    if n < lo or (hi is not None and n > hi):
        yield ValidationError(f"{n} elements match contains, expected [{lo},{hi}]")


ReferenceValidator = validators.extend(Draft7Validator, {"contains": _contains}, type_checker=_TYPES)


def reference_valid(schema, value) -> bool:
    return ReferenceValidator(schema).is_valid(value)


def load_fixture(path) -> object:
    """A fixture schema with numbers as exact decimals."""
    return from_python(json.loads(Path(path).read_text(), parse_float=Decimal))


def handwritten_cases():
    expected = json.loads((FIXTURES / "handwritten_expected.json").read_text())
    return [(name, load_fixture(HANDWRITTEN / name), verdict) for name, verdict in sorted(expected.items())]


def containment_cases():
    raw = json.loads((FIXTURES / "containment.json").read_text(), parse_float=Decimal)
    return [(p["name"], from_python(p["left"]), from_python(p["right"]), p["included"]) for p in raw]


# ---------------------------------------------------------------------------
# probe values


def schema_constants(schema):
    """Keys, strings and numbers mentioned anywhere in a schema."""
    keys, strings, numbers, values = {"", "a", "foo"}, {"", "a", "ab"}, {Decimal(0), Decimal(1), Decimal(-1)}, []

    def walk(s, parent_key=None):
        if isinstance(s, dict):
            for k, v in s.items():
                if parent_key in ("properties", "patternProperties", "dependencies", "definitions"):
                    keys.add(k)
                    strings.add(k)
                if k in ("pattern",) and isinstance(v, str):
                    strings.update(_pattern_words(v))
                if k == "patternProperties" and isinstance(v, dict):
                    for p in v:
                        keys.update(_pattern_words(p))
                if k in ("const",):
                    values.append(v)
                if k == "enum" and isinstance(v, list):
                    values.extend(v)
                walk(v, k)
        elif isinstance(s, list):
            for x in s:
                if isinstance(x, str) and parent_key in ("required", "dependencies"):
                    keys.add(x)
                walk(x, parent_key)
        elif isinstance(s, str):
            strings.add(s)
        elif isinstance(s, Decimal):
            for d in (Decimal(0), Decimal(1), Decimal(-1), Decimal("0.5")):
                numbers.add(s + d)
            numbers.add(s * 2)
            numbers.add(s * 3)

    walk(schema)
    return sorted(keys), sorted(strings), sorted(numbers), values


def _pattern_words(src: str) -> list:
    try:
        d = patterns.compile(patterns.parse_pattern(src, anchored=False))
    except UnsupportedPattern:
        return []
    return patterns.enumerate_words(d, 3) or patterns.enumerate_words(d, 1) or []


class ValueFactory:
    """Seeded random JSON values drawn from a schema's vocabulary."""

    def __init__(self, schema, seed: int = 0):
        self.rng = random.Random(seed)
        self.keys, self.strings, self.numbers, self.values = schema_constants(schema)

    def base(self):
        r = self.rng.random()
        if r < 0.1:
            return None
        if r < 0.2:
            return self.rng.random() < 0.5
        if r < 0.5:
            return self.rng.choice(self.numbers)
        if r < 0.55:
            return Decimal(self.rng.randint(-50, 50))
        return self.rng.choice(self.strings)

    def value(self, max_depth: int):
        if self.values and self.rng.random() < 0.1:
            return self.rng.choice(self.values)
        if max_depth <= 1 or self.rng.random() < 0.4:
            return self.base()
        n = self.rng.choice((0, 1, 1, 2, 2, 3))
        if self.rng.random() < 0.5:
            return [self.value(max_depth - 1) for _ in range(n)]
        return {self.rng.choice(self.keys): self.value(max_depth - 1) for _ in range(n)}

    def sample(self, n: int, max_depth: int) -> list:
        return [self.value(max_depth) for _ in range(n)]


def probe_values(schema, n: int = 200, max_depth: int = 3, seed: int = 0, extra=()) -> list:
    f = ValueFactory(schema, seed)
    out = list(extra) + list(f.values)
    out += [None, True, False, Decimal(0), "", {}, []]
    out += f.sample(max(0, n - len(out)), max_depth)
    return out[:n] if len(out) > n else out


__all__ = [
    "FIXTURES",
    "HANDWRITTEN",
    "ReferenceValidator",
    "ValueFactory",
    "containment_cases",
    "handwritten_cases",
    "jsonschema",
    "load_fixture",
    "probe_values",
    "reference_valid",
]
