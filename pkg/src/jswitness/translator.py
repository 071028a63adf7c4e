"""JSON Schema (Draft-06 plus minContains/maxContains) to the core algebra.

Two passes.  :func:`normalize_refs` rewrites every ``$ref`` so that it names
an entry of the top-level ``definitions``; :func:`translate` then maps each
definition to a variable and each keyword to algebra terms.  ``propertyNames``
needs the finished environment, so it is first emitted as a placeholder
(:class:`PNames`) and expanded at the end.
"""

from __future__ import annotations

import copy
import json
import logging
from dataclasses import dataclass, field
from decimal import Decimal
from functools import reduce
from urllib.parse import unquote

from . import patterns
from .algebra import (
    FALSE,
    TRUE,
    And,
    Betw,
    Cont,
    Item,
    Items,
    IsBoolValue,
    MulOf,
    Not,
    Or,
    Pattern,
    Pro,
    Props,
    Req,
    SchemaDoc,
    Type,
    Var,
    XBetw,
    conj,
    disj,
    size,
    term,
    with_schema,
    WITH_SCHEMA,
    check_guarded,
)
from .errors import ExpansionBudgetExceeded, SchemaError, UnguardedRecursion, UnresolvableRef
from .json_model import INF, NEG_INF, from_python, kind
from .patterns.syntax import Alt, literal

log = logging.getLogger(__name__)

TYPE_NAMES = {
    "null": "Null",
    "boolean": "Bool",
    "number": "Num",
    "string": "Str",
    "object": "Obj",
    "array": "Arr",
}

# Keywords whose values are subschemas, grouped by how they hold them.
SINGLE_SCHEMA = ("additionalItems", "contains", "additionalProperties", "propertyNames", "not", "if", "then", "else")
SCHEMA_LIST = ("allOf", "anyOf", "oneOf")
SCHEMA_MAP = ("properties", "patternProperties", "definitions", "$defs")

REF_SIZE_FACTOR = 100
PNAMES_SIZE_FACTOR = 2


@term
class PNames:
    """Placeholder for ``propertyNames`` until the environment is complete."""

    schema: object

    def __str__(self):
        return f"pNames({self.schema})"


# ---------------------------------------------------------------------------
# walking subschemas


def subschema_slots(schema):
    """Yield ``(container, key)`` for every direct subschema of ``schema``."""
    if not isinstance(schema, dict) or "$ref" in schema:
        return
    for kw in SINGLE_SCHEMA:
        if kw in schema:
            yield schema, kw
    items = schema.get("items")
    if isinstance(items, list):
        for i in range(len(items)):
            yield items, i
    elif "items" in schema:
        yield schema, "items"
    for kw in SCHEMA_LIST:
        if isinstance(schema.get(kw), list):
            for i in range(len(schema[kw])):
                yield schema[kw], i
    for kw in SCHEMA_MAP:
        if isinstance(schema.get(kw), dict):
            for name in schema[kw]:
                yield schema[kw], name
    deps = schema.get("dependencies")
    if isinstance(deps, dict):
        for name, value in deps.items():
            if isinstance(value, (dict, bool)):
                yield deps, name


def _all_refs(schema, out: list) -> list:
    if isinstance(schema, dict):
        if "$ref" in schema:
            out.append(schema["$ref"])
            return out
        for container, key in subschema_slots(schema):
            _all_refs(container[key], out)
    return out


def _pointer(ref: str) -> list:
    if not isinstance(ref, str) or not ref.startswith("#"):
        raise UnresolvableRef(f"only local references are supported: {ref!r}")
    frag = unquote(ref[1:])
    if frag == "":
        return []
    if not frag.startswith("/"):
        raise UnresolvableRef(f"anchor-style reference not supported: {ref!r}")
    return [p.replace("~1", "/").replace("~0", "~") for p in frag[1:].split("/")]


def _resolve(doc, path: list):
    node = doc
    for part in path:
        if isinstance(node, dict) and part in node:
            node = node[part]
        elif isinstance(node, list) and part.isdigit() and int(part) < len(node):
            node = node[int(part)]
        else:
            raise UnresolvableRef("cannot resolve #/" + "/".join(path))
    if not isinstance(node, (dict, bool)):
        raise UnresolvableRef("reference #/" + "/".join(path) + " does not point to a schema")
    return node


def normalize_refs(raw):
    """Make every ``$ref`` point to ``#/definitions/<name>``, copying targets as needed."""
    if not isinstance(raw, dict):
        return raw
    defs = raw.get("definitions", {})
    if not isinstance(defs, dict):
        raise SchemaError("definitions must be an object")
    mapping: dict = {}
    used = set(defs)
    for ref in _all_refs(raw, []):
        if ref in mapping:
            continue
        path = _pointer(ref)
        if len(path) == 2 and path[0] == "definitions":
            if path[1] not in defs:
                raise UnresolvableRef(f"missing definition {ref!r}")
            mapping[ref] = path[1]
            continue
        _resolve(raw, path)
        base = "_".join(path) or "root"
        name, n = base, 1
        while name in used:
            n += 1
            name = f"{base}_{n}"
        used.add(name)
        mapping[ref] = name

    def rewrite(schema):
        if isinstance(schema, dict):
            if "$ref" in schema:
                out = dict(schema)
                out["$ref"] = "#/definitions/" + _escape(mapping[schema["$ref"]])
                return out
            out = copy.copy(schema)
            for kw in SINGLE_SCHEMA + ("items",) + SCHEMA_LIST + SCHEMA_MAP + ("dependencies",):
                if kw in out and isinstance(out[kw], (dict, list)):
                    out[kw] = copy.copy(out[kw])
            for container, key in subschema_slots(out):
                container[key] = rewrite(container[key])
            return out
        return schema

    result = rewrite(raw)
    new_defs = dict(result.get("definitions", {}))
    for ref, name in mapping.items():
        if name not in defs:
            new_defs[name] = rewrite(_resolve(raw, _pointer(ref)))
    if new_defs or "definitions" in result:
        result["definitions"] = new_defs
    before = len(json.dumps(raw, default=str))
    after = len(json.dumps(result, default=str))
    if after > REF_SIZE_FACTOR * max(before, 1):
        raise ExpansionBudgetExceeded(f"reference normalisation grew the schema {after / before:.0f}x")
    return result


def _escape(name: str) -> str:
    return name.replace("~", "~0").replace("/", "~1")


def _ref_name(ref: str) -> str:
    path = _pointer(ref)
    if len(path) != 2 or path[0] != "definitions":
        raise UnresolvableRef(f"reference not normalised: {ref!r}")
    return path[1]


# ---------------------------------------------------------------------------
# constants


def translate_const(j):
    """Algebra term satisfied exactly by values equal to ``j``."""
    k = kind(j)
    if k == "Null":
        return Type("Null")
    if k == "Bool":
        return conj(Type("Bool"), IsBoolValue(j))
    if k == "Num":
        return conj(Type("Num"), Betw(j, j))
    if k == "Str":
        return conj(Type("Str"), Pattern(patterns.exact(j)))
    if k == "Arr":
        n = len(j)
        parts = [Type("Arr"), Cont(n, n, TRUE)]
        parts += [Item(i + 1, translate_const(v)) for i, v in enumerate(j)]
        return conj(*parts)
    parts = [Type("Obj")]
    parts += [Req(name) for name in j]
    parts.append(Pro(0, len(j)))
    parts += [Props(patterns.exact(name), translate_const(v)) for name, v in j.items()]
    return conj(*parts)


# ---------------------------------------------------------------------------
# propertyNames


def patt_of_s(s, env, memo=None):
    """Pattern whose language is the set of strings satisfying ``s``."""
    if memo is None:
        memo = {}
    if isinstance(s, Type):
        return patterns.TOP if s.name == "Str" else patterns.BOTTOM
    if isinstance(s, Pattern):
        return s.regex
    if isinstance(s, And):
        return reduce(patterns.intersect, (patt_of_s(x, env, memo) for x in s.items), patterns.TOP)
    if isinstance(s, Or):
        return reduce(patterns.union, (patt_of_s(x, env, memo) for x in s.items), patterns.BOTTOM)
    if isinstance(s, Not):
        return patterns.complement(patt_of_s(s.item, env, memo))
    if isinstance(s, Var):
        if s.name not in memo:
            memo[s.name] = None  # unguarded cycles are rejected before we get here
            memo[s.name] = patt_of_s(env[s.name], env, memo)
        return memo[s.name]
    return patterns.TOP  # any other typed operator is vacuous on strings


# ---------------------------------------------------------------------------
# the translator proper


def _number(value, kw: str):
    if kind(value) != "Num":
        raise SchemaError(f"{kw} must be a number, got {value!r}")
    return value


def _count(value, kw: str) -> int:
    value = _number(value, kw)
    if value < 0 or value != value.to_integral_value():
        raise SchemaError(f"{kw} must be a non-negative integer, got {value}")
    return int(value)


def _string_list(value, kw: str) -> list:
    if not isinstance(value, list) or not all(isinstance(x, str) for x in value):
        raise SchemaError(f"{kw} must be an array of strings")
    return value


@dataclass
class Translator:
    """Stateful translation of one document; ``prefix`` namespaces its variables."""

    prefix: str = ""
    env: dict = field(default_factory=dict)
    counter: int = 0

    def fresh(self, hint: str) -> str:
        while True:
            self.counter += 1
            name = f"{self.prefix}{hint}{self.counter}"
            if name not in self.env:
                return name

    def define(self, hint: str, body) -> Var:
        name = self.fresh(hint)
        self.env[name] = body
        return Var(name)

    # -- entry point -----------------------------------------------------

    def document(self, raw) -> SchemaDoc:
        raw = normalize_refs(from_python(raw))
        if isinstance(raw, dict):
            defs = raw.get("definitions", {})
            for name in defs:
                self.env[self.prefix + name] = TRUE  # reserve the names first
            for name, sub in defs.items():
                self.env[self.prefix + name] = self.schema(sub)
        root = self.schema(raw)
        doc = SchemaDoc(root, self.env)
        return expand_property_names(doc)

    # -- schemas -----------------------------------------------------------

    def schema(self, s):
        if s is True:
            return TRUE
        if s is False:
            return FALSE
        if not isinstance(s, dict):
            raise SchemaError(f"a schema must be an object or a boolean, got {s!r}")
        if "$ref" in s:
            return Var(self.prefix + _ref_name(s["$ref"]))
        parts = []
        for kw, value in s.items():
            handler = getattr(self, "kw_" + kw.replace("$", "_"), None)
            if handler is not None:
                parts.append(handler(value, s))
        parts += self.object_family(s)
        parts += self.array_family(s)
        parts += self.conditional(s)
        return conj(*parts)

    def types(self, names) -> object:
        names = [names] if isinstance(names, str) else names
        if not isinstance(names, list):
            raise SchemaError(f"type must be a string or an array, got {names!r}")
        out = []
        for n in names:
            if n == "integer":
                out.append(conj(Type("Num"), MulOf(Decimal(1))))
            elif n in TYPE_NAMES:
                out.append(Type(TYPE_NAMES[n]))
            else:
                raise SchemaError(f"unknown type {n!r}")
        return disj(*out)

    # -- simple keywords ---------------------------------------------------

    def kw_type(self, value, s):
        return self.types(value)

    def kw_const(self, value, s):
        return translate_const(value)

    def kw_enum(self, value, s):
        if not isinstance(value, list):
            raise SchemaError("enum must be an array")
        return disj(*(translate_const(v) for v in value))

    def kw_multipleOf(self, value, s):
        q = _number(value, "multipleOf")
        if q <= 0:
            raise SchemaError("multipleOf must be strictly positive")
        return MulOf(q)

    def kw_minimum(self, value, s):
        m = _number(value, "minimum")
        return XBetw(m, INF) if s.get("exclusiveMinimum") is True else Betw(m, INF)

    def kw_maximum(self, value, s):
        m = _number(value, "maximum")
        return XBetw(NEG_INF, m) if s.get("exclusiveMaximum") is True else Betw(NEG_INF, m)

    def kw_exclusiveMinimum(self, value, s):
        if isinstance(value, bool):
            return TRUE  # boolean form only modifies "minimum"
        return XBetw(_number(value, "exclusiveMinimum"), INF)

    def kw_exclusiveMaximum(self, value, s):
        if isinstance(value, bool):
            return TRUE
        return XBetw(NEG_INF, _number(value, "exclusiveMaximum"))

    def kw_minLength(self, value, s):
        return Pattern(patterns.length_pattern(_count(value, "minLength")))

    def kw_maxLength(self, value, s):
        return Pattern(patterns.length_pattern(0, _count(value, "maxLength")))

    def kw_pattern(self, value, s):
        if not isinstance(value, str):
            raise SchemaError("pattern must be a string")
        return Pattern(patterns.parse_pattern(value))

    def kw_minItems(self, value, s):
        return Cont(_count(value, "minItems"), INF, TRUE)

    def kw_maxItems(self, value, s):
        return Cont(0, _count(value, "maxItems"), TRUE)

    def kw_uniqueItems(self, value, s):
        if value is True:
            log.warning("uniqueItems is not supported and is ignored")
        return TRUE

    def kw_required(self, value, s):
        return conj(*(Req(k) for k in _string_list(value, "required")))

    def kw_minProperties(self, value, s):
        return Pro(_count(value, "minProperties"), INF)

    def kw_maxProperties(self, value, s):
        return Pro(0, _count(value, "maxProperties"))

    def kw_propertyNames(self, value, s):
        return PNames(self.schema(value))

    def kw_allOf(self, value, s):
        return conj(*(self.schema(x) for x in self._schema_list(value, "allOf")))

    def kw_anyOf(self, value, s):
        return disj(*(self.schema(x) for x in self._schema_list(value, "anyOf")))

    def kw_oneOf(self, value, s):
        return self.one_of([self.schema(x) for x in self._schema_list(value, "oneOf")])

    def kw_not(self, value, s):
        return Not(self.schema(value))

    def kw_dependencies(self, value, s):
        if not isinstance(value, dict):
            raise SchemaError("dependencies must be an object")
        out = []
        for k, dep in value.items():
            trigger = conj(Type("Obj"), Req(k))
            if isinstance(dep, list):
                then = conj(*(Req(x) for x in _string_list(dep, "dependencies")))
            else:
                then = self.schema(dep)
            out.append(disj(Not(trigger), then))
        return conj(*out)

    @staticmethod
    def _schema_list(value, kw):
        if not isinstance(value, list):
            raise SchemaError(f"{kw} must be an array")
        return value

    # -- grouped keywords --------------------------------------------------

    def one_of(self, branches: list):
        """Exactly one branch holds: ⋁_i (x_i ∧ ⋀_{j≠i} ¬x_j), with fresh x_i."""
        if not branches:
            return FALSE
        xs = [self.define("one", b) for b in branches]
        if len(xs) == 1:
            return xs[0]
        return disj(
            *(conj(x, *(Not(y) for y in xs if y is not x)) for x in xs)
        )

    def object_family(self, s) -> list:
        out = []
        props = s.get("properties", {})
        pattern_props = s.get("patternProperties", {})
        if not isinstance(props, dict) or not isinstance(pattern_props, dict):
            raise SchemaError("properties and patternProperties must be objects")
        for k, sub in props.items():
            out.append(Props(patterns.exact(k), self.schema(sub)))
        parsed = []
        for src, sub in pattern_props.items():
            r = patterns.parse_pattern(src)
            parsed.append(r)
            out.append(Props(r, self.schema(sub)))
        if "additionalProperties" in s:
            others = patterns.TOP
            if props:
                keys = patterns.Base(Alt(tuple(literal(k) for k in props)), source="|".join(props))
                others = patterns.intersect(others, patterns.complement(keys))
            if parsed:
                node = Alt(tuple(r.node for r in parsed))
                pats = patterns.Base(node, search=True, source="|".join(pattern_props))
                others = patterns.intersect(others, patterns.complement(pats))
            out.append(Props(others, self.schema(s["additionalProperties"])))
        return out

    def array_family(self, s) -> list:
        out = []
        items = s.get("items")
        if isinstance(items, list):
            out += [Item(i + 1, self.schema(sub)) for i, sub in enumerate(items)]
            if "additionalItems" in s:
                out.append(Items(len(items), self.schema(s["additionalItems"])))
        elif "items" in s:
            out.append(Items(0, self.schema(items)))
        if "contains" in s:
            lo = _count(s["minContains"], "minContains") if "minContains" in s else 1
            hi = _count(s["maxContains"], "maxContains") if "maxContains" in s else INF
            out.append(Cont(lo, hi, self.schema(s["contains"])))
        return out

    def conditional(self, s) -> list:
        if "if" not in s or ("then" not in s and "else" not in s):
            return []
        x = self.define("if", self.schema(s["if"]))
        then = self.schema(s.get("then", True))
        other = self.schema(s.get("else", True))
        return [disj(conj(x, then), conj(Not(x), other))]


def translate(raw, prefix: str = "") -> SchemaDoc:
    """Translate a parsed JSON Schema into a core-algebra document."""
    return Translator(prefix=prefix).document(raw)


def translate_one_of(branches: list, translator: Translator | None = None):
    """oneOf over already-translated branches; returns (assertion, new definitions)."""
    t = translator or Translator()
    before = set(t.env)
    result = t.one_of(branches)
    return result, {k: v for k, v in t.env.items() if k not in before}


# ---------------------------------------------------------------------------
# propertyNames expansion


def _replace_pnames(s, env, memo, budget):
    if isinstance(s, PNames):
        r = patt_of_s(Not(s.schema), env, memo)
        if patterns.eere_size(r) > budget:
            raise ExpansionBudgetExceeded("propertyNames expansion is too large")
        return Props(r, FALSE)
    if isinstance(s, (And, Or)):
        return type(s)(tuple(_replace_pnames(x, env, memo, budget) for x in s.items))
    if isinstance(s, Not):
        return Not(_replace_pnames(s.item, env, memo, budget))
    if isinstance(s, WITH_SCHEMA):
        return with_schema(s, _replace_pnames(s.schema, env, memo, budget))
    return s


def _has_pnames(s) -> bool:
    if isinstance(s, PNames):
        return True
    if isinstance(s, (And, Or)):
        return any(_has_pnames(x) for x in s.items)
    if isinstance(s, Not):
        return _has_pnames(s.item)
    if isinstance(s, WITH_SCHEMA):
        return _has_pnames(s.schema)
    return False


def expand_property_names(doc: SchemaDoc) -> SchemaDoc:
    bodies = [doc.root] + list(doc.env.values())
    if not any(_has_pnames(b) for b in bodies):
        return doc
    if not check_guarded(doc.env):
        raise UnguardedRecursion("propertyNames over an unguarded recursive definition")
    budget = PNAMES_SIZE_FACTOR * sum(size(b) for b in bodies)
    memo: dict = {}
    env = {name: _replace_pnames(body, doc.env, memo, budget) for name, body in doc.env.items()}
    root = _replace_pnames(doc.root, doc.env, memo, budget)
    return SchemaDoc(root, env)
