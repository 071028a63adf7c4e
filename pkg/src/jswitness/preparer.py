"""Rewrite object and array groups into explicit choices.

An object group is split by key: the key space is partitioned into regions,
each region being the set of keys matched by exactly a given subset of the
group's ``props`` and ``pattReq`` patterns.  A *choice* fixes a region and
the subset of matched ``pattReq`` requirements that the member's value
satisfies; its schema is the conjunction of the corresponding variables.

Array groups are split by position: one interval per head position and one
for the tail; for each, the choices decide which ``contAfter`` and counting
assertions an element contributes to.

Conjunctions of variables are created on demand (and-completion); every new
variable's groups are prepared in turn, FIFO, until nothing new appears.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations

from . import patterns
from .algebra import Cont, ContAfter, Item, Items, PattReq, Pro, Props
from .errors import Timeout
from .json_model import INF
from .normalizer import BOTTOM_VAR, TOP_VAR, TypedGroup, Workspace
from .patterns import automata


def _subsets(items):
    """All subsets of ``items`` (a sequence), by size then position."""
    for k in range(len(items) + 1):
        yield from combinations(items, k)


# ---------------------------------------------------------------------------
# objects


@dataclass
class ObjectChoice:
    cp_part: frozenset  # indices into ObjectPrepared.cp
    rp_in: frozenset  # indices into ObjectPrepared.rp matched by the key
    rp_satisfied: frozenset  # subset of rp_in the value satisfies
    pair: int  # index of the (cp_part, rp_in) region
    schema_var: str

    @property
    def is_r_choice(self) -> bool:
        return bool(self.rp_satisfied)


@dataclass
class Region:
    cp_part: frozenset
    rp_in: frozenset
    dfa: automata.Dfa
    pattern: object  # the characteristic pattern as an Eere, for display


@dataclass
class ObjectPrepared:
    group: TypedGroup
    cp: list
    rp: list
    lo: int
    hi: object
    regions: list = field(default_factory=list)
    choices: list = field(default_factory=list)

    kind = "Obj"


def characteristic_pattern(cp_in, rp_in, cp: list, rp: list):
    """Keys matched by every pattern in cp_in ∪ rp_in and by none of the others."""
    r = patterns.TOP
    for i, a in enumerate(cp):
        r = patterns.intersect(r, a.regex if i in cp_in else patterns.complement(a.regex))
    for i, a in enumerate(rp):
        r = patterns.intersect(r, a.regex if i in rp_in else patterns.complement(a.regex))
    return r


def split_regions(cp: list, rp: list, minimize_regions: bool = False) -> list:
    """Non-empty key regions, found by refining the partition one pattern at a time."""
    regions = [Region(frozenset(), frozenset(), patterns.compile(patterns.TOP), patterns.TOP)]
    tagged = [("cp", i, a.regex) for i, a in enumerate(cp)] + [("rp", i, a.regex) for i, a in enumerate(rp)]
    for side, i, regex in tagged:
        inside_dfa = patterns.compile(regex)
        outside_dfa = automata.complement_dfa(inside_dfa)
        nxt = []
        for reg in regions:
            for dfa, member in ((automata.product(reg.dfa, inside_dfa), True), (automata.product(reg.dfa, outside_dfa), False)):
                if automata.is_empty(dfa):
                    continue
                if minimize_regions:
                    dfa = automata.minimize(dfa)
                cp_part, rp_in = reg.cp_part, reg.rp_in
                if member and side == "cp":
                    cp_part = cp_part | {i}
                elif member:
                    rp_in = rp_in | {i}
                part = regex if member else patterns.complement(regex)
                nxt.append(Region(cp_part, rp_in, dfa, patterns.intersect(reg.pattern, part)))
        regions = nxt
    return regions


def object_cr_combine(group: TypedGroup, ws: Workspace, queue=None, minimize_regions=False) -> ObjectPrepared:
    cp = sorted((a for a in group.itos if isinstance(a, Props)), key=str)
    rp = sorted((a for a in group.itos if isinstance(a, PattReq)), key=str)
    pros = [a for a in group.itos if isinstance(a, Pro)]
    lo = max((a.lo for a in pros), default=0)
    hi = min((a.hi for a in pros), default=INF)
    prep = ObjectPrepared(group, cp, rp, lo, hi)
    if lo > hi:
        return prep  # no object satisfies the size bounds
    prep.regions = split_regions(cp, rp, minimize_regions)
    for pair, reg in enumerate(prep.regions):
        rp_list = sorted(reg.rp_in)
        for rp_sat in _subsets(rp_list):
            names = [cp[i].schema.name for i in sorted(reg.cp_part)]
            names += [rp[i].schema.name for i in rp_sat]
            var, created = ws.and_complete(names)
            if created and queue is not None:
                queue.append(var)
            prep.choices.append(ObjectChoice(reg.cp_part, reg.rp_in, frozenset(rp_sat), pair, var))
    return prep


# ---------------------------------------------------------------------------
# arrays


def head_length_of(a) -> int:
    if isinstance(a, Item):
        return a.index
    if isinstance(a, (Items, ContAfter)):
        return a.after
    return 0


def interval_of(a) -> tuple:
    if isinstance(a, Item):
        return (a.index, a.index)
    if isinstance(a, (Items, ContAfter)):
        return (a.after + 1, INF)
    return (1, INF)


def head_length(group: TypedGroup) -> int:
    return max(
        (head_length_of(a) for a in group.itos if isinstance(a, (Item, Items, ContAfter))),
        default=0,
    )


def restrict(assertions, interval) -> list:
    """The assertions whose position interval meets ``interval``."""
    lo, hi = interval
    out = []
    for a in assertions:
        alo, ahi = interval_of(a)
        if max(lo, alo) <= min(hi, ahi):
            out.append(a)
    return out


@dataclass
class ArrayChoice:
    interval: tuple
    ip_part: tuple  # the IP assertions applying in the interval
    ap_part: frozenset  # indices into ArrayPrepared.ap
    kp_pos: frozenset  # indices into ArrayPrepared.kp
    kp_neg: frozenset
    schema_var: str


@dataclass
class ArrayPrepared:
    group: TypedGroup
    head_length: int
    ip: list
    ap: list
    kp: list
    choices: list = field(default_factory=list)

    kind = "Arr"


def array_cr_combine(group: TypedGroup, ws: Workspace, queue=None) -> ArrayPrepared:
    ip = sorted((a for a in group.itos if isinstance(a, (Item, Items))), key=str)
    ap = sorted((a for a in group.itos if isinstance(a, ContAfter)), key=str)
    kp = sorted((a for a in group.itos if isinstance(a, Cont)), key=str)
    h = head_length(group)
    prep = ArrayPrepared(group, h, ip, ap, kp)
    if any(a.lo > a.hi for a in kp):
        return prep
    # counting over ⊤ is always satisfied by an element, over ⊥ never
    forced_pos = frozenset(i for i, a in enumerate(kp) if a.schema.name == TOP_VAR)
    forced_neg = frozenset(i for i, a in enumerate(kp) if a.schema.name == BOTTOM_VAR)
    free_kp = [i for i in range(len(kp)) if i not in forced_pos and i not in forced_neg]
    intervals = [(i, i) for i in range(1, h + 1)] + [(h + 1, INF)]
    for interval in intervals:
        ip_part = tuple(restrict(ip, interval))
        ap_idx = [i for i, a in enumerate(ap) if restrict([a], interval)]
        base = [a.schema.name for a in ip_part]
        for ap_sub in _subsets(ap_idx):
            for kp_sub in _subsets(free_kp):
                kp_pos = forced_pos | frozenset(kp_sub)
                kp_neg = frozenset(range(len(kp))) - kp_pos
                names = base + [ap[i].schema.name for i in ap_sub]
                names += [kp[i].schema.name for i in kp_pos]
                names += [ws.complement_of(kp[i].schema.name) for i in kp_neg]
                var, created = ws.and_complete(names)
                if created and queue is not None:
                    queue.append(var)
                prep.choices.append(ArrayChoice(interval, ip_part, frozenset(ap_sub), kp_pos, kp_neg, var))
    return prep


# ---------------------------------------------------------------------------
# base types


@dataclass
class BasePrepared:
    group: TypedGroup

    @property
    def kind(self):
        return self.group.kind


# ---------------------------------------------------------------------------
# the preparation loop


@dataclass
class PreparedDoc:
    """Every variable's body as a disjunction of prepared groups."""

    workspace: Workspace
    bodies: dict  # variable -> tuple of prepared groups
    variables_created: int = 0

    @property
    def root(self) -> str:
        return self.workspace.root


def prepare_group(group: TypedGroup, ws: Workspace, queue, minimize_regions=False):
    if group.kind == "Obj":
        return object_cr_combine(group, ws, queue, minimize_regions)
    if group.kind == "Arr":
        return array_cr_combine(group, ws, queue)
    return BasePrepared(group)


def prepare(ws: Workspace, deadline: float | None = None, minimize_regions: bool = False) -> PreparedDoc:
    """Prepare all groups of all variables, following and-completion to a fixpoint."""
    cache: dict = {}
    bodies: dict = {}
    queue = deque(ws.groups)
    created = 0
    while queue:
        if deadline is not None and time.monotonic() > deadline:
            raise Timeout("preparation exceeded the time budget")
        name = queue.popleft()
        if name in bodies:
            continue
        before = len(queue)
        out = []
        for g in ws.groups[name]:
            if g not in cache:
                cache[g] = prepare_group(g, ws, queue, minimize_regions)
            out.append(cache[g])
        created += len(queue) - before
        bodies[name] = tuple(out)
    return PreparedDoc(ws, bodies, created)


def dump_prepared(prep: PreparedDoc) -> str:
    """Readable listing of the choices of every prepared group."""
    lines = []
    for name, groups in prep.bodies.items():
        lines.append(f"{name}:")
        for g in groups:
            lines.append(f"  {g.group}")
            if isinstance(g, ObjectPrepared):
                for c in g.choices:
                    reg = g.regions[c.pair]
                    sample = patterns.enumerate_words(reg.dfa, 1)
                    shown = repr(sample[0]) if sample else "∅"
                    lines.append(
                        f"    key~{shown} cp={sorted(c.cp_part)} rp={sorted(c.rp_in)} "
                        f"sat={sorted(c.rp_satisfied)} -> {c.schema_var}"
                    )
            elif isinstance(g, ArrayPrepared):
                for c in g.choices:
                    lo, hi = c.interval
                    lines.append(
                        f"    [{lo},{hi}] ap={sorted(c.ap_part)} kp+={sorted(c.kp_pos)} "
                        f"kp-={sorted(c.kp_neg)} -> {c.schema_var}"
                    )
    return "\n".join(lines)
