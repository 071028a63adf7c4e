"""Equivalence-preserving rewriting of a schema document.

The :class:`Workspace` carries one document through the pipeline:

1. ``not_complete``: every variable gets a complement variable;
2. ``eliminate_not``: negation is pushed down to the typed operators, which
   produces the positive algebra;
3. ``stratify``: every schema argument of a typed operator becomes a variable;
4. ``to_gdnf``: bodies become sets of conjunctions of typed operators, with
   unguarded variables substituted away;
5. ``canonicalize``: each conjunction becomes a group with exactly one type.

Variables are interned through an ROBDD table so that Boolean-equivalent
bodies share a name; this is what keeps the later and-completion finite.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

from . import patterns
from .algebra import (
    FALSE,
    ITO_KIND,
    TRUE,
    WITH_SCHEMA,
    And,
    Betw,
    Cont,
    ContAfter,
    Item,
    Items,
    IsBoolValue,
    MulOf,
    Not,
    NotMulOf,
    Or,
    PattReq,
    Pattern,
    Pro,
    Props,
    Req,
    SchemaDoc,
    Type,
    Var,
    XBetw,
    check_guarded,
    complement_of,
    conj,
    dependency_order,
    disj,
    is_ito,
    ito_kind,
    with_schema,
)
from .errors import UnguardedRecursion
from .json_model import INF, KINDS, NEG_INF
from .robdd import FALSE as BDD_FALSE
from .robdd import TRUE as BDD_TRUE
from .robdd import Robdd

TOP_VAR = "⊤"
BOTTOM_VAR = "⊥"


# ---------------------------------------------------------------------------
# typed groups


@dataclass(frozen=True)
class TypedGroup:
    """A conjunction of ``type(kind)`` with implicative operators of that type."""

    kind: str
    itos: frozenset

    def sorted_itos(self) -> list:
        return sorted(self.itos, key=str)

    def as_assertion(self):
        return conj(Type(self.kind), *self.sorted_itos())

    def __str__(self):
        return "{" + ", ".join([f"type({self.kind})"] + [str(x) for x in self.sorted_itos()]) + "}"


def groups_to_assertion(groups) -> object:
    return disj(*(g.as_assertion() for g in groups))


def gdnf_to_assertion(g) -> object:
    return disj(*(conj(*sorted(c, key=str)) for c in _sorted_conjunctions(g)))


def _sorted_conjunctions(g) -> list:
    return sorted(g, key=lambda c: sorted(str(t) for t in c))


def _types_of(c) -> set:
    return {t.name for t in c if isinstance(t, Type)}


def canonicalize(g) -> tuple:
    """Turn a GDNF (set of conjunctions) into deduplicated typed groups."""
    out = []
    seen = set()
    for c in _sorted_conjunctions(g):
        types = _types_of(c)
        if len(types) > 1:
            continue
        itos = [t for t in c if is_ito(t) and t != TRUE]
        kinds = list(types) if types else list(KINDS)
        for k in kinds:
            group = TypedGroup(k, frozenset(t for t in itos if ito_kind(t) == k))
            if group not in seen:
                seen.add(group)
                out.append(group)
    return tuple(out)


def conjoin_groups(group_lists) -> tuple:
    """Canonical groups of the conjunction of several canonical disjunctions."""
    acc = [None]  # None: the empty conjunction (no type fixed yet)
    for groups in group_lists:
        nxt = []
        for a in acc:
            for g in groups:
                if a is None:
                    nxt.append(g)
                elif a.kind == g.kind:
                    nxt.append(TypedGroup(a.kind, a.itos | g.itos))
        acc = nxt
        if not acc:
            return ()
    if acc == [None]:
        return tuple(TypedGroup(k, frozenset()) for k in KINDS)
    out, seen = [], set()
    for g in acc:
        if g not in seen:
            seen.add(g)
            out.append(g)
    return tuple(out)


# ---------------------------------------------------------------------------
# negation pushing


def push_not(s, complements=None, negate: bool = True):
    """Positive term equivalent to ``¬s`` (or to ``s`` when ``negate`` is False).

    ``complements`` maps variable names to their complement names; without it
    the complement of ``x`` is called ``not_x``.
    """
    if complements is None:
        complements = _DefaultComplements()
    return _nnf(s, negate, complements)


class _DefaultComplements(dict):
    def __missing__(self, name):
        return name[4:] if name.startswith("not_") else "not_" + name


def _pos(s, comps):
    return _nnf(s, False, comps)


def _neg(s, comps):
    return _nnf(s, True, comps)


def _nnf(s, neg: bool, comps):
    t = type(s)
    if t is Not:
        return _nnf(s.item, not neg, comps)
    if t is And:
        parts = [_nnf(x, neg, comps) for x in s.items]
        return disj(*parts) if neg else conj(*parts)
    if t is Or:
        parts = [_nnf(x, neg, comps) for x in s.items]
        return conj(*parts) if neg else disj(*parts)
    if t is Var:
        return Var(complement_of(s.name, comps)) if neg else s
    if t is Req:
        if neg:
            return conj(Type("Obj"), Props(patterns.exact(s.key), FALSE))
        return PattReq(patterns.exact(s.key), TRUE)
    if not neg:
        if t in WITH_SCHEMA:
            return with_schema(s, _pos(s.schema, comps))
        return s
    # negated typed operators
    if t is Type:
        return disj(*(Type(k) for k in KINDS if k != s.name))
    if t is IsBoolValue:
        return conj(Type("Bool"), IsBoolValue(not s.value))
    if t is Pattern:
        return conj(Type("Str"), Pattern(patterns.complement(s.regex)))
    if t is Betw:
        below = XBetw(NEG_INF, s.lo) if s.lo != NEG_INF else FALSE
        above = XBetw(s.hi, INF) if s.hi != INF else FALSE
        return conj(Type("Num"), disj(below, above))
    if t is XBetw:
        below = Betw(NEG_INF, s.lo) if s.lo != NEG_INF else FALSE
        above = Betw(s.hi, INF) if s.hi != INF else FALSE
        return conj(Type("Num"), disj(below, above))
    if t is MulOf:
        return conj(Type("Num"), NotMulOf(s.q))
    if t is NotMulOf:
        return conj(Type("Num"), MulOf(s.q))
    if t is Props:
        return conj(Type("Obj"), PattReq(s.regex, _neg(s.schema, comps)))
    if t is PattReq:
        return conj(Type("Obj"), Props(s.regex, _neg(s.schema, comps)))
    if t is Pro:
        below = Pro(0, s.lo - 1) if s.lo > 0 else FALSE
        above = Pro(s.hi + 1, INF) if s.hi != INF else FALSE
        return conj(Type("Obj"), disj(below, above))
    if t is Item:
        return conj(Type("Arr"), Item(s.index, _neg(s.schema, comps)), Cont(s.index, INF, TRUE))
    if t is Items:
        return conj(Type("Arr"), ContAfter(s.after, _neg(s.schema, comps)))
    if t is ContAfter:
        return conj(Type("Arr"), Items(s.after, _neg(s.schema, comps)))
    if t is Cont:
        arg = _pos(s.schema, comps)
        below = Cont(0, s.lo - 1, arg) if s.lo > 0 else FALSE
        above = Cont(s.hi + 1, INF, arg) if s.hi != INF else FALSE
        return conj(Type("Arr"), disj(below, above))
    raise TypeError(f"cannot negate {s!r}")


# ---------------------------------------------------------------------------
# the workspace


def _short_hash(text: str) -> str:
    return hashlib.sha1(text.encode("utf-8")).hexdigest()[:8]


class Workspace:
    """Mutable state of one pipeline run: environment, ROBDD table, complements."""

    def __init__(self, doc: SchemaDoc, root_name: str = "root"):
        if not check_guarded(doc.env):
            raise UnguardedRecursion("the schema has unguarded recursive references")
        self.robdd = Robdd()
        self.env: dict = {}
        self.var_bdd: dict = {}
        self.table: dict = {}
        self.complements: dict = {}
        self.counter = 0
        self.dropped_disjuncts = 0
        self.original_vars = 0
        self._add_constant(TOP_VAR, TRUE, BDD_TRUE)
        self._add_constant(BOTTOM_VAR, FALSE, BDD_FALSE)
        self.complements[TOP_VAR] = BOTTOM_VAR
        self.complements[BOTTOM_VAR] = TOP_VAR
        for name, body in doc.env.items():
            self.env[name] = body
        if isinstance(doc.root, Var):
            self.root = doc.root.name
        else:
            self.root = self._unused(root_name)
            self.env[self.root] = doc.root
        self.original_vars = len(self.env)
        self.gdnf: dict = {}
        self.groups: dict = {}

    # -- naming and interning ---------------------------------------------

    def _add_constant(self, name, body, node):
        self.env[name] = body
        self.var_bdd[name] = node
        self.table[node] = name

    def _unused(self, base: str) -> str:
        name, n = base, 1
        while name in self.env:
            n += 1
            name = f"{base}_{n}"
        return name

    def fresh(self, hint: str) -> str:
        while True:
            self.counter += 1
            name = f"{hint}{self.counter}"
            if name not in self.env:
                return name

    def bdd_of(self, s) -> int:
        t = type(s)
        if t is And:
            return self.robdd.conj_all(self.bdd_of(x) for x in s.items)
        if t is Or:
            return self.robdd.disj_all(self.bdd_of(x) for x in s.items)
        if t is Not:
            return self.robdd.neg(self.bdd_of(s.item))
        if t is Var:
            node = self.var_bdd.get(s.name)
            return node if node is not None else self.robdd.atom(("var", s.name))
        if s == TRUE:
            return BDD_TRUE
        return self.robdd.atom(s)

    def register(self, name: str, node: int) -> None:
        self.var_bdd[name] = node
        self.table.setdefault(node, name)

    def intern(self, body, hint: str = "s") -> tuple:
        """Name for ``body``; returns (name, created?)."""
        if isinstance(body, Var):
            return body.name, False
        node = self.bdd_of(body)
        existing = self.table.get(node)
        if existing is not None:
            return existing, False
        name = self.fresh(hint)
        self.env[name] = body
        self.register(name, node)
        return name, True

    def complement_of(self, name: str) -> str:
        return complement_of(name, self.complements)

    def _pair_complement(self, name: str, negated_body) -> str:
        """Create the complement of ``name``.

        An existing variable with the negated diagram is never reused: its
        body may mention ``name``'s complement, and substituting it back
        would create an unguarded cycle (e.g. ``r = (x ∧ ¬⊤) ∨ (¬x ∧ ⊤)``
        has the diagram of ``¬x``).
        """
        cnode = self.robdd.neg(self.var_bdd[name])
        comp = self._unused("not_" + name)
        self.env[comp] = negated_body
        self.register(comp, cnode)
        self.complements[name] = comp
        self.complements[comp] = name
        return comp

    # -- stage 1: not-completion -------------------------------------------

    def not_complete(self) -> None:
        order = [x for x in dependency_order(self.env) if x not in (TOP_VAR, BOTTOM_VAR)]
        for x in order:
            self.register(x, self.bdd_of(self.env[x]))
        for x in order:
            if x not in self.complements:
                self._pair_complement(x, Not(self.env[x]))

    # -- stage 2: negation elimination ---------------------------------------

    def eliminate_not(self) -> None:
        for name in list(self.env):
            self.env[name] = _pos(self.env[name], self.complements)

    # -- stage 3: stratification ---------------------------------------------

    def stratify(self) -> None:
        work = list(self.env)
        i = 0
        while i < len(work):
            name = work[i]
            self.env[name] = self._strat(self.env[name], work)
            i += 1

    def _strat(self, s, work: list):
        t = type(s)
        if t is And:
            return conj(*(self._strat(x, work) for x in s.items))
        if t is Or:
            return disj(*(self._strat(x, work) for x in s.items))
        if t in WITH_SCHEMA and not isinstance(s.schema, Var):
            arg = self._strat(s.schema, work)
            return with_schema(s, Var(self._extract(arg, work)))
        return s

    def _extract(self, body, work: list) -> str:
        name, created = self.intern(body)
        if created:
            work.append(self._pair_complement(name, _neg(body, self.complements)))
        return name

    # -- stage 4: GDNF ----------------------------------------------------------

    def to_gdnf(self) -> None:
        self.gdnf = {}
        for name in dependency_order(self.env):
            self.gdnf[name] = self._gdnf(self.env[name])

    def _gdnf(self, s) -> frozenset:
        t = type(s)
        if t is Or:
            out = set()
            for x in s.items:
                out |= self._gdnf(x)
            return frozenset(out)
        if t is And:
            acc = {frozenset()}
            for x in s.items:
                g = self._gdnf(x)
                acc = {a | b for a in acc for b in g if len(_types_of(a | b)) <= 1}
                if not acc:
                    break
            return frozenset(acc)
        if t is Var:
            return self.gdnf[s.name]
        if s == TRUE:
            return frozenset({frozenset()})
        return frozenset({frozenset({s})})

    # -- stage 5: canonicalisation ------------------------------------------

    def canonicalize(self) -> None:
        self.groups = {}
        for name, g in self.gdnf.items():
            groups = canonicalize(g)
            self.dropped_disjuncts += sum(1 for c in g if len(_types_of(c)) > 1)
            self.groups[name] = groups

    # -- and-completion ----------------------------------------------------------

    def and_complete(self, names) -> tuple:
        """Variable for the conjunction of ``names``; returns (name, created?)."""
        names = sorted(set(names))
        if not names:
            return TOP_VAR, False
        if len(names) == 1:
            return names[0], False
        node = self.robdd.conj_all(self.var_bdd[n] for n in names)
        existing = self.table.get(node)
        if existing is not None:
            return existing, False
        base = "w_" + _short_hash("∧".join(names))
        name = self._unused(base)
        self.env[name] = conj(*(Var(n) for n in names))
        self.register(name, node)
        self.groups[name] = conjoin_groups([self.groups[n] for n in names])
        return name, True

    # -- whole pipeline ---------------------------------------------------------

    def normalize(self, emit=None) -> None:
        """Run every stage; ``emit(stage, text)`` receives a dump after each one."""
        self.not_complete()
        self.eliminate_not()
        if emit:
            emit("notelim", self.dump_env())
        self.stratify()
        if emit:
            emit("strat", self.dump_env())
        self.to_gdnf()
        if emit:
            emit("gdnf", self.dump_gdnf())
        self.canonicalize()
        if emit:
            emit("canon", self.dump_groups())

    # -- views ------------------------------------------------------------------

    def doc(self) -> SchemaDoc:
        return SchemaDoc(Var(self.root), dict(self.env))

    def gdnf_doc(self) -> SchemaDoc:
        return SchemaDoc(Var(self.root), {n: gdnf_to_assertion(g) for n, g in self.gdnf.items()})

    def groups_doc(self) -> SchemaDoc:
        return SchemaDoc(Var(self.root), {n: groups_to_assertion(g) for n, g in self.groups.items()})

    def dump_env(self) -> str:
        return "\n".join(f"{n} ↦ {b}" for n, b in self.env.items())

    def dump_gdnf(self) -> str:
        lines = []
        for n, g in self.gdnf.items():
            conjs = ["{" + ", ".join(sorted(str(t) for t in c)) + "}" for c in _sorted_conjunctions(g)]
            lines.append(f"{n} ↦ " + (" ∨ ".join(conjs) if conjs else "⊥"))
        return "\n".join(lines)

    def dump_groups(self) -> str:
        lines = []
        for n, gs in self.groups.items():
            lines.append(f"{n} ↦ " + (" ∨ ".join(str(g) for g in gs) if gs else "⊥"))
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# functional wrappers


def not_complete(doc: SchemaDoc) -> SchemaDoc:
    """Document with a complement definition for every variable (bodies still core)."""
    ws = Workspace(doc)
    ws.not_complete()
    return ws.doc()


def stratify(doc: SchemaDoc) -> SchemaDoc:
    """Positive, stratified document equivalent to ``doc``."""
    ws = Workspace(doc)
    ws.not_complete()
    ws.eliminate_not()
    ws.stratify()
    return ws.doc()


def normalize(doc: SchemaDoc, emit=None) -> Workspace:
    ws = Workspace(doc)
    ws.normalize(emit)
    return ws


def stage_documents(doc: SchemaDoc) -> dict:
    """Equivalent documents after each stage, for validation-based checks."""
    ws = Workspace(doc)
    ws.not_complete()
    ws.eliminate_not()
    out = {"notelim": ws.doc()}
    ws.stratify()
    out["strat"] = ws.doc()
    ws.to_gdnf()
    out["gdnf"] = ws.gdnf_doc()
    ws.canonicalize()
    out["canon"] = ws.groups_doc()
    return out

