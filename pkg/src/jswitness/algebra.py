"""Assertion terms, environments and their two evaluation modes.

The same term classes serve the core algebra (with :class:`Not`) and the
positive algebra (with :class:`NotMulOf`, :class:`PattReq` and
:class:`ContAfter` instead).  ``⊤`` is ``pro(0, ∞)`` and ``⊥`` is the empty
disjunction.

Two evaluators share one rule table: :func:`validate_doc` unfolds variables
through the environment, :func:`assignment_eval` reads them from a finite
assignment.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields
from decimal import Decimal
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from . import patterns
from .errors import MissingComplement, UnboundVariable, UndefinedVariable, UnguardedRecursion
from .json_model import INF, KINDS, format_number, is_infinite, kind, value_key


def _cached_hash(self):
    h = self.__dict__.get("_hash")
    if h is None:
        h = hash((type(self).__name__,) + tuple(getattr(self, f.name) for f in fields(self)))
        object.__setattr__(self, "_hash", h)
    return h


def term(cls):
    """Frozen dataclass whose (deep) hash is computed once."""
    cls = dataclass(frozen=True)(cls)
    cls.__hash__ = _cached_hash
    return cls


def _num(q) -> str:
    return str(q) if is_infinite(q) else format_number(q)


# ---------------------------------------------------------------------------
# typed operators


@term
class IsBoolValue:
    value: bool

    def __str__(self):
        return f"isBoolValue({'true' if self.value else 'false'})"


@term
class Pattern:
    regex: object

    def __str__(self):
        return f"pattern({self.regex})"


@term
class Betw:
    lo: object
    hi: object

    def __str__(self):
        return f"betw_{_num(self.lo)}^{_num(self.hi)}"


@term
class XBetw:
    lo: object
    hi: object

    def __str__(self):
        return f"xBetw_{_num(self.lo)}^{_num(self.hi)}"


@term
class MulOf:
    q: Decimal

    def __str__(self):
        return f"mulOf({_num(self.q)})"


@term
class NotMulOf:
    q: Decimal

    def __str__(self):
        return f"notMulOf({_num(self.q)})"


@term
class Props:
    regex: object
    schema: object

    def __str__(self):
        return f"props({self.regex}:{self.schema})"


@term
class PattReq:
    regex: object
    schema: object

    def __str__(self):
        return f"pattReq({self.regex}:{self.schema})"


@term
class Req:
    key: str

    def __str__(self):
        return f"req({self.key})"


@term
class Pro:
    lo: int
    hi: object

    def __str__(self):
        if self.lo == 0 and self.hi == INF:
            return "⊤"
        return f"pro_{self.lo}^{_num(self.hi)}"


@term
class Item:
    index: int
    schema: object

    def __str__(self):
        return f"item({self.index}:{self.schema})"


@term
class Items:
    after: int
    schema: object

    def __str__(self):
        return f"items({self.after}:{self.schema})"


@term
class ContAfter:
    after: int
    schema: object

    def __str__(self):
        return f"contAfter({self.after}:{self.schema})"


@term
class Cont:
    lo: int
    hi: object
    schema: object

    def __str__(self):
        return f"cont_{self.lo}^{_num(self.hi)}({self.schema})"


@term
class Type:
    name: str

    def __str__(self):
        return f"type({self.name})"


# ---------------------------------------------------------------------------
# variables and Boolean structure


@term
class Var:
    name: str

    def __str__(self):
        return self.name


@term
class And:
    items: tuple

    def __str__(self):
        if not self.items:
            return "⊤"
        return "(" + " ∧ ".join(str(x) for x in self.items) + ")"


@term
class Or:
    items: tuple

    def __str__(self):
        if not self.items:
            return "⊥"
        return "(" + " ∨ ".join(str(x) for x in self.items) + ")"


@term
class Not:
    item: object

    def __str__(self):
        return f"¬{self.item}"


TRUE = Pro(0, INF)
FALSE = Or(())

ITO_KIND = {
    IsBoolValue: "Bool",
    Pattern: "Str",
    Betw: "Num",
    XBetw: "Num",
    MulOf: "Num",
    NotMulOf: "Num",
    Props: "Obj",
    PattReq: "Obj",
    Req: "Obj",
    Pro: "Obj",
    Item: "Arr",
    Items: "Arr",
    ContAfter: "Arr",
    Cont: "Arr",
}

WITH_SCHEMA = (Props, PattReq, Item, Items, ContAfter, Cont)
BOOLEAN = (And, Or, Not)


def is_ito(s) -> bool:
    return type(s) in ITO_KIND


def is_to(s) -> bool:
    return type(s) in ITO_KIND or isinstance(s, Type)


def ito_kind(s) -> str:
    return ITO_KIND[type(s)]


def with_schema(s, schema):
    """Copy of a schema-carrying operator with its argument replaced."""
    if isinstance(s, Cont):
        return Cont(s.lo, s.hi, schema)
    if isinstance(s, (Props, PattReq)):
        return type(s)(s.regex, schema)
    if isinstance(s, Item):
        return Item(s.index, schema)
    return type(s)(s.after, schema)


def conj(*items):
    """Flattening conjunction: drops ⊤, collapses on ⊥, removes duplicates."""
    out = []
    seen = set()
    for x in items:
        parts = x.items if isinstance(x, And) else (x,)
        for p in parts:
            if p == TRUE:
                continue
            if p == FALSE:
                return FALSE
            if p not in seen:
                seen.add(p)
                out.append(p)
    if not out:
        return TRUE
    return out[0] if len(out) == 1 else And(tuple(out))


def disj(*items):
    """Flattening disjunction: drops ⊥, collapses on ⊤, removes duplicates."""
    out = []
    seen = set()
    for x in items:
        parts = x.items if isinstance(x, Or) else (x,)
        for p in parts:
            if p == FALSE:
                continue
            if p == TRUE:
                return TRUE
            if p not in seen:
                seen.add(p)
                out.append(p)
    if not out:
        return FALSE
    return out[0] if len(out) == 1 else Or(tuple(out))


def children(s) -> tuple:
    if isinstance(s, (And, Or)):
        return s.items
    if isinstance(s, Not):
        return (s.item,)
    if isinstance(s, WITH_SCHEMA):
        return (s.schema,)
    return ()


def size(s) -> int:
    return 1 + sum(size(c) for c in children(s))


def variables(s) -> set:
    """Names of all variables occurring in ``s``."""
    out = set()
    stack = [s]
    while stack:
        x = stack.pop()
        if isinstance(x, Var):
            out.add(x.name)
        else:
            stack.extend(children(x))
    return out


def unguarded_variables(s) -> set:
    """Variables reachable from ``s`` through Boolean operators only."""
    out = set()
    stack = [s]
    while stack:
        x = stack.pop()
        if isinstance(x, Var):
            out.add(x.name)
        elif isinstance(x, BOOLEAN):
            stack.extend(children(x))
    return out


def is_positive(s) -> bool:
    stack = [s]
    while stack:
        x = stack.pop()
        if isinstance(x, (Not, Req)):
            return False
        stack.extend(children(x))
    return True


# ---------------------------------------------------------------------------
# documents


@dataclass
class SchemaDoc:
    root: object
    env: dict = field(default_factory=dict)

    def __str__(self):
        return doc_to_text(self)


def doc_to_text(doc: SchemaDoc) -> str:
    lines = [f"root: {doc.root}"]
    lines += [f"{name} ↦ {body}" for name, body in doc.env.items()]
    return "\n".join(lines)


def check_closing(env: Mapping, root=None) -> None:
    names = set(env)
    for body in list(env.values()) + ([root] if root is not None else []):
        missing = variables(body) - names
        if missing:
            raise UndefinedVariable(f"undefined variable(s): {', '.join(sorted(missing))}")


def direct_dependencies(env: Mapping) -> dict:
    return {name: unguarded_variables(body) for name, body in env.items()}


def check_guarded(env: Mapping) -> bool:
    """True iff no variable reaches itself through unguarded dependencies."""
    check_closing(env)
    deps = direct_dependencies(env)
    state: dict = {}
    for root in deps:
        if root in state:
            continue
        state[root] = 1
        stack = [(root, iter(sorted(deps[root])))]
        while stack:
            name, it = stack[-1]
            for nxt in it:
                st = state.get(nxt)
                if st == 1:
                    return False
                if st is None:
                    state[nxt] = 1
                    stack.append((nxt, iter(sorted(deps[nxt]))))
                    break
            else:
                state[name] = 2
                stack.pop()
    return True


def dependency_order(env: Mapping) -> list:
    """Variables ordered so that each comes after everything it directly depends on."""
    deps = direct_dependencies(env)
    order, done = [], set()
    for root in env:
        if root in done:
            continue
        stack = [(root, iter(sorted(deps[root])))]
        active = {root}
        while stack:
            name, it = stack[-1]
            for nxt in it:
                if nxt in done:
                    continue
                if nxt in active:
                    raise UnguardedRecursion(f"unguarded recursion through {nxt}")
                active.add(nxt)
                stack.append((nxt, iter(sorted(deps[nxt]))))
                break
            else:
                stack.pop()
                active.discard(name)
                done.add(name)
                order.append(name)
    return order


def complement_of(name: str, complements: Mapping) -> str:
    try:
        return complements[name]
    except KeyError:
        raise MissingComplement(f"no complement recorded for {name}") from None


# ---------------------------------------------------------------------------
# evaluation


def _is_multiple(j, q) -> bool:
    return (Fraction(j) / Fraction(q)).denominator == 1


def _matches(regex, key: str) -> bool:
    return patterns.compile(regex).accepts(key)


def evaluate(s, j, lookup: Callable) -> bool:
    """Rule table shared by both evaluators; ``lookup(name, j)`` decides variables."""
    t = type(s)
    if t is And:
        return all(evaluate(x, j, lookup) for x in s.items)
    if t is Or:
        return any(evaluate(x, j, lookup) for x in s.items)
    if t is Not:
        return not evaluate(s.item, j, lookup)
    if t is Var:
        return lookup(s.name, j)
    k = kind(j)
    if t is Type:
        return k == s.name
    if ITO_KIND[t] != k:
        return True  # implicative: vacuous outside its own type
    if t is IsBoolValue:
        return j == s.value
    if t is Pattern:
        return _matches(s.regex, j)
    if t is Betw:
        return s.lo <= j <= s.hi
    if t is XBetw:
        return s.lo < j < s.hi
    if t is MulOf:
        return _is_multiple(j, s.q)
    if t is NotMulOf:
        return not _is_multiple(j, s.q)
    if t is Props:
        return all(evaluate(s.schema, v, lookup) for key, v in j.items() if _matches(s.regex, key))
    if t is PattReq:
        return any(evaluate(s.schema, v, lookup) for key, v in j.items() if _matches(s.regex, key))
    if t is Req:
        return s.key in j
    if t is Pro:
        return s.lo <= len(j) <= s.hi
    if t is Item:
        return len(j) < s.index or evaluate(s.schema, j[s.index - 1], lookup)
    if t is Items:
        return all(evaluate(s.schema, v, lookup) for v in j[s.after :])
    if t is ContAfter:
        return any(evaluate(s.schema, v, lookup) for v in j[s.after :])
    if t is Cont:
        n = sum(1 for v in j if evaluate(s.schema, v, lookup))
        return s.lo <= n <= s.hi
    raise TypeError(f"unknown assertion {s!r}")


_guarded_cache: dict = {}


def _ensure_guarded(env: Mapping) -> None:
    key = id(env)
    cached = _guarded_cache.get(key)
    if cached is not None and cached[0] is env:
        ok = cached[1]
    else:
        ok = check_guarded(env)
        if len(_guarded_cache) > 256:
            _guarded_cache.clear()
        _guarded_cache[key] = (env, ok)
    if not ok:
        raise UnguardedRecursion("environment has unguarded recursion")


def validate_in_env(s, j, env: Mapping) -> bool:
    """Does ``j`` satisfy ``s``, unfolding variables through ``env``?"""
    _ensure_guarded(env)
    memo: dict = {}

    def lookup(name, v):
        key = (name, id(v))
        hit = memo.get(key)
        if hit is None:
            if name not in env:
                raise UndefinedVariable(name)
            hit = evaluate(env[name], v, lookup)
            memo[key] = hit
        return hit

    return evaluate(s, j, lookup)


def validate_doc(j, doc: SchemaDoc) -> bool:
    return validate_in_env(doc.root, j, doc.env)


def assignment_eval(s, assignment: Mapping, j) -> bool:
    """Does ``j`` satisfy ``s`` when each variable denotes its finite set in ``assignment``?"""
    keys: dict = {}

    def lookup(name, v):
        if name not in assignment:
            raise UnboundVariable(name)
        if name not in keys:
            keys[name] = {value_key(x) for x in assignment[name]}
        return value_key(v) in keys[name]

    return evaluate(s, j, lookup)


def type_union(names: Iterable[str]):
    return disj(*(Type(n) for n in KINDS if n in set(names)))
