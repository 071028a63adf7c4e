"""Bottom-up witness generation over a prepared document.

The assignment maps each variable to one known witness.  Every pass tries
to find a witness for each variable that has none yet, using only the
witnesses found in earlier passes; the search stops when the root variable
is witnessed or when a pass adds nothing.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from . import patterns
from .algebra import IsBoolValue, Pattern
from .errors import Timeout
from .numbers import gen_number
from .patterns import automata
from .preparer import ArrayPrepared, BasePrepared, ObjectPrepared, PreparedDoc

#: marks "no witness" where None would be ambiguous with JSON null
NONE = object()


class Deadline:
    """Cooperative wall-clock budget."""

    def __init__(self, seconds: float | None):
        self.at = None if seconds is None else time.monotonic() + seconds

    def check(self) -> None:
        if self.at is not None and time.monotonic() > self.at:
            raise Timeout("witness generation exceeded the time budget")


@dataclass
class GenerationResult:
    witness: object  # NONE when unsatisfiable
    passes: int
    assignment: dict = field(repr=False, default_factory=dict)

    @property
    def satisfiable(self) -> bool:
        return self.witness is not NONE


# ---------------------------------------------------------------------------
# base types


def gen_bool(itos):
    values = {a.value for a in itos if isinstance(a, IsBoolValue)}
    if len(values) > 1:
        return NONE
    if values:
        return next(iter(values))
    return True


def gen_string(itos):
    dfa = patterns.compile(patterns.TOP)
    for a in sorted((a for a in itos if isinstance(a, Pattern)), key=str):
        dfa = automata.product(dfa, patterns.compile(a.regex))
        if automata.is_empty(dfa):
            return NONE
    words = patterns.enumerate_words(dfa, 1)
    return NONE if words is None else words[0]


def gen_base(prep: BasePrepared, deadline: Deadline):
    g = prep.group
    if g.kind == "Null":
        return None
    if g.kind == "Bool":
        return gen_bool(g.itos)
    if g.kind == "Str":
        return gen_string(g.itos)
    if g.kind == "Num":
        v = gen_number(g.itos, deadline.check)
        return NONE if v is None else v
    raise ValueError(f"not a base group: {g}")


# ---------------------------------------------------------------------------
# objects


def disjoint_solutions(r_choices: list, rp_count: int, max_size, deadline: Deadline):
    """Multisets of R-choices whose satisfied requirements partition all requirements.

    Solutions come in order of size, smallest first, and have at most
    ``max_size`` members.  Within one size they are found by always covering
    the lowest uncovered requirement next, so every partition is produced
    exactly once.
    """
    by_req = [[c for c in r_choices if i in c.rp_satisfied] for i in range(rp_count)]
    full = frozenset(range(rp_count))

    def search(covered: frozenset, chosen: list, size: int):
        deadline.check()
        if covered == full:
            if len(chosen) == size:
                yield list(chosen)
            return
        if len(chosen) >= size:
            return
        target = min(full - covered)
        for c in by_req[target]:
            if c.rp_satisfied & covered:
                continue
            chosen.append(c)
            yield from search(covered | c.rp_satisfied, chosen, size)
            chosen.pop()

    # each member covers at least one requirement, so no solution is larger than rp_count
    largest = rp_count if max_size >= rp_count else int(max_size)
    for size in range(largest + 1):
        yield from search(frozenset(), [], size)


class _Viability:
    """Counts choices per key region and checks each region has enough keys."""

    def __init__(self, prep: ObjectPrepared):
        self.prep = prep
        self.counts: dict = {}
        self._known: dict = {}  # region -> largest count known to be available

    def fits(self, pair: int, extra: int = 1) -> bool:
        n = self.counts.get(pair, 0) + extra
        if self._known.get(pair, 0) >= n:
            return True
        if automata.has_at_least(self.prep.regions[pair].dfa, n):
            self._known[pair] = n
            return True
        return False

    def add(self, pair: int) -> None:
        self.counts[pair] = self.counts.get(pair, 0) + 1


def gen_object(prep: ObjectPrepared, a: dict, deadline: Deadline):
    if prep.lo > prep.hi:
        return NONE
    witnessed = [c for c in prep.choices if c.schema_var in a]
    r_choices = [c for c in witnessed if c.is_r_choice]
    nr_choices = [c for c in witnessed if not c.is_r_choice]
    for solution in disjoint_solutions(r_choices, len(prep.rp), prep.hi, deadline):
        via = _Viability(prep)
        viable = True
        for c in solution:
            if not via.fits(c.pair):
                viable = False
                break
            via.add(c.pair)
        if not viable:
            continue
        members = list(solution)
        missing = prep.lo - len(members)
        for c in nr_choices:
            while missing > 0 and via.fits(c.pair):
                deadline.check()
                via.add(c.pair)
                members.append(c)
                missing -= 1
            if missing <= 0:
                break
        if missing > 0:
            continue
        return _build_object(prep, members, a)
    return NONE


def _build_object(prep: ObjectPrepared, members: list, a: dict) -> dict:
    by_pair: dict = {}
    for c in members:
        by_pair.setdefault(c.pair, []).append(c)
    out = {}
    for pair in sorted(by_pair):
        group = by_pair[pair]
        keys = patterns.enumerate_words(prep.regions[pair].dfa, len(group))
        assert keys is not None, "viable solution ran out of keys"
        for k, c in zip(keys, group):
            out[k] = a[c.schema_var]
    return out


# ---------------------------------------------------------------------------
# arrays


def max_steps(prep: ArrayPrepared) -> int:
    return prep.head_length + len(prep.ap) + sum(k.lo for k in prep.kp)


def gen_array(prep: ArrayPrepared, a: dict, deadline: Deadline):
    """Search for a well-formed choice list whose incidence meets every requirement."""
    h = prep.head_length
    n_ap = len(prep.ap)
    kp_lo = [k.lo for k in prep.kp]
    kp_hi = [k.hi for k in prep.kp]
    witnessed = [c for c in prep.choices if c.schema_var in a]
    head = {i: [c for c in witnessed if c.interval == (i, i)] for i in range(1, h + 1)}
    tail = [c for c in witnessed if c.interval[0] == h + 1]
    # per-choice increments as a tuple over AP then KP
    delta = {
        id(c): tuple(1 if i in c.ap_part else 0 for i in range(n_ap))
        + tuple(1 if i in c.kp_pos else 0 for i in range(len(prep.kp)))
        for c in witnessed
    }

    def satisfied(inc) -> bool:
        return all(inc[i] >= 1 for i in range(n_ap)) and all(
            inc[n_ap + j] >= kp_lo[j] for j in range(len(kp_lo))
        )

    def violated(inc) -> bool:
        return any(inc[n_ap + j] > kp_hi[j] for j in range(len(kp_hi)))

    def useful(c, inc) -> bool:
        if any(inc[i] == 0 for i in c.ap_part):
            return True
        return any(inc[n_ap + j] < kp_lo[j] for j in c.kp_pos)

    def key(flen, inc):
        capped = tuple(min(x, 1) for x in inc[:n_ap]) + inc[n_ap:]
        return (min(flen, h), capped)

    failed: set = set()
    zero = (0,) * (n_ap + len(prep.kp))
    # iterative depth-first search; each frame holds (fLen, incidence, candidates, next index)
    path: list = []
    stack: list = []

    def candidates(flen, inc):
        if flen < h:
            return head[flen + 1]
        return [c for c in tail if useful(c, inc)]

    if satisfied(zero):
        return []
    stack.append((0, zero, candidates(0, zero), 0))
    while stack:
        deadline.check()
        flen, inc, cands, idx = stack.pop()
        if idx >= len(cands):
            failed.add(key(flen, inc))
            if path:
                path.pop()
            continue
        stack.append((flen, inc, cands, idx + 1))
        c = cands[idx]
        new = tuple(x + d for x, d in zip(inc, delta[id(c)]))
        if violated(new):
            continue
        if satisfied(new):
            path.append(c)
            _check_incidence(prep, path)
            return [a[x.schema_var] for x in path]
        if key(flen + 1, new) in failed:
            continue
        path.append(c)
        stack.append((flen + 1, new, candidates(flen + 1, new), 0))
    return NONE


def _check_incidence(prep: ArrayPrepared, path: list) -> None:
    for j, k in enumerate(prep.kp):
        count = sum(1 for c in path if j in c.kp_pos)
        assert k.lo <= count <= k.hi, f"incidence {count} outside [{k.lo},{k.hi}]"


# ---------------------------------------------------------------------------
# the fixpoint


def gen_group(prep, a: dict, deadline: Deadline):
    if isinstance(prep, ObjectPrepared):
        return gen_object(prep, a, deadline)
    if isinstance(prep, ArrayPrepared):
        return gen_array(prep, a, deadline)
    return gen_base(prep, deadline)


def gen(body, a: dict, deadline: Deadline):
    """One witness for a disjunction of prepared groups, or NONE."""
    for prep in body:
        v = gen_group(prep, a, deadline)
        if v is not NONE:
            return v
    return NONE


def bottom_up(doc: PreparedDoc, root: str | None = None, timeout: float | None = None) -> GenerationResult:
    """Populate variables pass by pass until ``root`` has a witness or nothing changes."""
    deadline = Deadline(timeout)
    root = doc.root if root is None else root
    a: dict = {}
    bodies = doc.bodies
    passes = 0
    limit = len(bodies) + 1
    while passes < limit:
        passes += 1
        found = {}
        for name, body in bodies.items():
            if name in a:
                continue
            v = gen(body, a, deadline)
            if v is not NONE:
                found[name] = v
        if not found:
            break
        a.update(found)
        if root in a:
            return GenerationResult(a[root], passes, a)
    return GenerationResult(NONE, passes, a)
