"""Regular expressions extended with outer complement and intersection.

An :class:`Eere` is either a :class:`Base` syntax tree or a ``Complement`` /
``Intersect`` built on top of other Eeres.  All languages are over full
Unicode codepoints.  ``compile`` turns an Eere into a :class:`Dfa`; the
results are cached per (term, state budget).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from . import automata
from .automata import (
    DEFAULT_STATE_BUDGET,
    Dfa,
    current_budget,
    enumerate_words,
    has_at_least,
    is_empty,
    is_infinite,
    minimize,
    state_budget,
    to_dot,
)
from .syntax import ANY_CODEPOINT, NOTHING, Repeat, literal, node_size, parse_regex, to_source

__all__ = [
    "Base",
    "Complement",
    "Intersect",
    "Eere",
    "Dfa",
    "TOP",
    "BOTTOM",
    "DEFAULT_STATE_BUDGET",
    "parse_pattern",
    "exact",
    "length_pattern",
    "complement",
    "intersect",
    "union",
    "compile",
    "is_empty",
    "is_infinite",
    "enumerate_words",
    "has_at_least",
    "matches",
    "minimize",
    "state_budget",
    "to_dot",
    "eere_size",
]


@dataclass(frozen=True)
class Base:
    """A standard regular expression.

    ``search`` selects JSON Schema's substring semantics (Σ*·r·Σ*); otherwise
    the expression must match the whole string.
    """

    node: object
    search: bool = False
    source: str = field(default="", compare=False)

    def __str__(self):
        text = self.source or to_source(self.node)
        return f"/{text}/" if self.search else text


@dataclass(frozen=True)
class Complement:
    inner: object

    def __str__(self):
        return f"¬({self.inner})"


@dataclass(frozen=True)
class Intersect:
    left: object
    right: object

    def __str__(self):
        return f"({self.left} ∧ {self.right})"


Eere = object  # Base | Complement | Intersect

TOP = Base(Repeat(ANY_CODEPOINT, 0, None), source="⊤p")
BOTTOM = Base(NOTHING, source="⊥p")


def parse_pattern(src: str, anchored: bool = False) -> Base:
    """Parse an ECMA pattern.  Unanchored patterns match if any substring matches."""
    return Base(parse_regex(src), search=not anchored, source=src)


def exact(k: str) -> Base:
    """Pattern whose language is exactly ``{k}``."""
    return Base(literal(k), source=to_source(literal(k)) if k else '""')


def length_pattern(lo: int, hi=None) -> Base:
    """Strings with between ``lo`` and ``hi`` codepoints (``hi=None``: unbounded)."""
    node = Repeat(ANY_CODEPOINT, lo, hi)
    text = "{%d,%s}" % (lo, "" if hi is None else hi)
    return Base(node, source="^[^]" + text + "$")


def complement(r) -> object:
    if isinstance(r, Complement):
        return r.inner
    if r == TOP:
        return BOTTOM
    if r == BOTTOM:
        return TOP
    return Complement(r)


def intersect(a, b) -> object:
    if a == TOP or b == BOTTOM:
        return b
    if b == TOP or a == BOTTOM:
        return a
    if a == b:
        return a
    return Intersect(a, b)


def union(a, b) -> object:
    """Union through De Morgan, since only complement and intersection are primitive."""
    return complement(intersect(complement(a), complement(b)))


def eere_size(r) -> int:
    if isinstance(r, Base):
        return 1
    if isinstance(r, Complement):
        return 1 + eere_size(r.inner)
    return 1 + eere_size(r.left) + eere_size(r.right)


@lru_cache(maxsize=8192)
def _compile(r, budget: int) -> Dfa:
    if isinstance(r, Base):
        return automata.from_syntax(r.node, r.search)
    if isinstance(r, Complement):
        return automata.complement_dfa(_compile(r.inner, budget))
    if isinstance(r, Intersect):
        return automata.product(_compile(r.left, budget), _compile(r.right, budget))
    raise TypeError(f"not a pattern: {r!r}")


def compile(r) -> Dfa:  # noqa: A001 - mirrors the usual regex API name
    """DFA accepting exactly L(r)."""
    return _compile(r, current_budget())


def matches(r, s: str) -> bool:
    return compile(r).accepts(s)


def size_of_syntax(r) -> int:
    return node_size(r.node) if isinstance(r, Base) else eere_size(r)
