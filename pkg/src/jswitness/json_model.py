"""JSON values with exact decimal numbers.

Values use plain Python containers: ``None``, ``bool``, :class:`decimal.Decimal`
for every number, ``str``, ``dict`` and ``list``.  Two helpers cover the
places where Python's own equality is wrong for JSON (``True == 1``, and
``dict``/``list`` being unhashable): :func:`value_key` gives a hashable,
type-tagged key and :func:`json_equal` compares through it.
"""

from __future__ import annotations

import json
from decimal import Decimal
from fractions import Fraction
from functools import total_ordering
from typing import Any, Union

from .errors import JsonError

JsonValue = Union[None, bool, Decimal, str, dict, list]

KINDS = ("Null", "Bool", "Num", "Str", "Obj", "Arr")


@total_ordering
class _Infinity:
    """One of the two extended bounds; compares against ints, Decimals and Fractions."""

    __slots__ = ("sign",)

    def __init__(self, sign: int):
        self.sign = sign

    def __eq__(self, other):
        return isinstance(other, _Infinity) and other.sign == self.sign

    def __lt__(self, other):
        if isinstance(other, _Infinity):
            return self.sign < other.sign
        return self.sign < 0

    def __neg__(self):
        return NEG_INF if self.sign > 0 else INF

    def __hash__(self):
        return hash(("inf", self.sign))

    def __repr__(self):
        return "∞" if self.sign > 0 else "-∞"

    __str__ = __repr__


INF = _Infinity(1)
NEG_INF = _Infinity(-1)


def is_infinite(x) -> bool:
    return isinstance(x, _Infinity)


# ---------------------------------------------------------------------------
# kinds and conversions


def kind(v: Any) -> str:
    """Name of the JSON type of ``v`` (one of :data:`KINDS`)."""
    if v is None:
        return "Null"
    if isinstance(v, bool):
        return "Bool"
    if isinstance(v, (Decimal, int, Fraction)):
        return "Num"
    if isinstance(v, str):
        return "Str"
    if isinstance(v, dict):
        return "Obj"
    if isinstance(v, list):
        return "Arr"
    raise JsonError(f"not a JSON value: {v!r}")


def to_fraction(q) -> Fraction:
    """Exact rational value of a JSON number."""
    return Fraction(q)


def fraction_to_decimal(f: Fraction) -> Decimal:
    """Convert a rational with a terminating decimal expansion to an exact Decimal."""
    f = Fraction(f)
    den = f.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        raise ValueError(f"{f} has no finite decimal expansion")
    scale = max(twos, fives)
    coefficient = f.numerator * (10**scale // f.denominator)
    return Decimal(coefficient).scaleb(-scale)


def from_python(v: Any) -> JsonValue:
    """Normalise a Python structure (ints, floats via their repr) into a JsonValue."""
    if v is None or isinstance(v, (bool, str)):
        return v
    if isinstance(v, Decimal):
        return v
    if isinstance(v, int):
        return Decimal(v)
    if isinstance(v, float):
        return Decimal(repr(v))
    if isinstance(v, Fraction):
        return fraction_to_decimal(v)
    if isinstance(v, dict):
        return {str(k): from_python(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [from_python(x) for x in v]
    raise JsonError(f"not a JSON value: {v!r}")


# ---------------------------------------------------------------------------
# parsing and serialisation


def _reject_duplicates(pairs):
    out = {}
    for k, v in pairs:
        if k in out:
            raise JsonError(f"duplicate member name {k!r}")
        out[k] = v
    return out


def _reject_constant(name):
    raise JsonError(f"non-finite number {name} is not JSON")


def parse_json(text: str) -> JsonValue:
    """Parse JSON text keeping numbers exact and rejecting duplicate keys."""
    try:
        return json.loads(
            text,
            parse_float=Decimal,
            parse_int=Decimal,
            parse_constant=_reject_constant,
            object_pairs_hook=_reject_duplicates,
        )
    except json.JSONDecodeError as exc:
        raise JsonError(str(exc)) from exc


def format_number(q) -> str:
    """Shortest decimal text for ``q`` that reads back to the same value."""
    d = q if isinstance(q, Decimal) else fraction_to_decimal(Fraction(q))
    if d == d.to_integral_value():
        return str(int(d))
    text = format(d.normalize(), "f")
    return text


def dumps(v: JsonValue) -> str:
    """Canonical compact serialisation: sorted member names, shortest numbers."""
    k = kind(v)
    if k == "Null":
        return "null"
    if k == "Bool":
        return "true" if v else "false"
    if k == "Num":
        return format_number(v)
    if k == "Str":
        return json.dumps(v)
    if k == "Arr":
        return "[" + ",".join(dumps(x) for x in v) + "]"
    items = sorted(v.items())
    return "{" + ",".join(json.dumps(key) + ":" + dumps(x) for key, x in items) + "}"


# ---------------------------------------------------------------------------
# equality and depth


def value_key(v: JsonValue):
    """Hashable key such that ``value_key(a) == value_key(b)`` iff a and b are equal JSON."""
    k = kind(v)
    if k == "Null":
        return ("n",)
    if k == "Bool":
        return ("b", v)
    if k == "Num":
        return ("q", Fraction(v))
    if k == "Str":
        return ("s", v)
    if k == "Arr":
        return ("a", tuple(value_key(x) for x in v))
    return ("o", frozenset((name, value_key(x)) for name, x in v.items()))


def json_equal(a: JsonValue, b: JsonValue) -> bool:
    return value_key(a) == value_key(b)


def depth(v: JsonValue) -> int:
    if isinstance(v, dict):
        return 1 + max((depth(x) for x in v.values()), default=0)
    if isinstance(v, list):
        return 1 + max((depth(x) for x in v), default=0)
    return 1


# ---------------------------------------------------------------------------
# reference validator


def validate(j: JsonValue, doc) -> bool:
    """True iff ``j`` satisfies the root of ``doc`` (a SchemaDoc)."""
    from .algebra import validate_doc

    return validate_doc(j, doc)
