"""Deterministic automata over Unicode codepoints with interval-labelled edges.

The construction is the textbook one: a Thompson NFA is built from the
syntax tree, then the subset construction produces a complete DFA whose
transitions from each state are a sorted partition of ``[0, 0x10FFFF]`` into
intervals.  ``^`` and ``$`` are zero-width edges of the NFA that may only be
followed before the first character (``^``) or when checking acceptance at
the end of the input (``$``), which gives them their ECMA meaning without any
rewriting of the pattern.
"""

from __future__ import annotations

import contextvars
from bisect import bisect_left, bisect_right
from collections import deque
from contextlib import contextmanager

from ..errors import AutomatonTooLarge
from .syntax import ANY_CODEPOINT, MAX_CODEPOINT, Alt, Anchor, Chars, Repeat, Seq

DEFAULT_STATE_BUDGET = 1_000_000

_budget = contextvars.ContextVar("state_budget", default=DEFAULT_STATE_BUDGET)


@contextmanager
def state_budget(limit: int):
    """Temporarily change the maximum number of automaton states."""
    token = _budget.set(limit)
    try:
        yield
    finally:
        _budget.reset(token)


def current_budget() -> int:
    return _budget.get()


# ---------------------------------------------------------------------------
# Thompson NFA


class _Nfa:
    def __init__(self, limit: int):
        self.limit = limit
        self.eps: list[list[int]] = []
        self.chars: list[list[tuple]] = []
        self.anchors: list[list[tuple]] = []

    def new(self) -> int:
        if len(self.eps) >= self.limit:
            raise AutomatonTooLarge(f"NFA exceeds {self.limit} states")
        self.eps.append([])
        self.chars.append([])
        self.anchors.append([])
        return len(self.eps) - 1

    def build(self, node, s: int, t: int) -> None:
        if isinstance(node, Chars):
            if node.ranges:
                self.chars[s].append((node.ranges, t))
        elif isinstance(node, Anchor):
            self.anchors[s].append((node.kind, t))
        elif isinstance(node, Seq):
            if not node.items:
                self.eps[s].append(t)
                return
            cur = s
            for k, item in enumerate(node.items):
                nxt = t if k == len(node.items) - 1 else self.new()
                self.build(item, cur, nxt)
                cur = nxt
        elif isinstance(node, Alt):
            for item in node.items:
                mid = self.new()
                self.eps[s].append(mid)
                self.build(item, mid, t)
        elif isinstance(node, Repeat):
            cur = s
            for _ in range(node.lo):
                nxt = self.new()
                self.build(node.item, cur, nxt)
                cur = nxt
            if node.hi is None:
                loop, back = self.new(), self.new()
                self.eps[cur].append(loop)
                self.build(node.item, loop, back)
                self.eps[back].append(loop)
                self.eps[loop].append(t)
            else:
                for _ in range(node.hi - node.lo):
                    nxt = self.new()
                    self.eps[cur].append(t)
                    self.build(node.item, cur, nxt)
                    cur = nxt
                self.eps[cur].append(t)
        else:
            raise TypeError(node)

    def closure(self, states, at_start: bool, at_end: bool) -> frozenset:
        seen = set(states)
        stack = list(states)
        while stack:
            s = stack.pop()
            nxt = list(self.eps[s])
            for kind, t in self.anchors[s]:
                if (kind == "^" and at_start) or (kind == "$" and at_end):
                    nxt.append(t)
            for t in nxt:
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        return frozenset(seen)


# ---------------------------------------------------------------------------
# DFA


class Dfa:
    """Complete DFA; state 0 is initial and every state is reachable.

    ``trans[s]`` is a tuple of ``(lo, hi, target)`` triples sorted by ``lo``
    that covers the whole codepoint range.
    """

    __slots__ = ("trans", "accept", "_los", "_info")

    def __init__(self, trans, accept):
        self.trans = tuple(tuple(row) for row in trans)
        self.accept = frozenset(accept)
        self._los = [tuple(lo for lo, _, _ in row) for row in self.trans]
        self._info = None

    @property
    def size(self) -> int:
        return len(self.trans)

    def step(self, s: int, c: int) -> int:
        row = self.trans[s]
        return row[bisect_right(self._los[s], c) - 1][2]

    def accepts(self, word: str) -> bool:
        s = 0
        for ch in word:
            s = self.step(s, ord(ch))
        return s in self.accept

    def __repr__(self):
        return f"Dfa(states={self.size}, accepting={sorted(self.accept)})"


def _partition(edges):
    """Split the codepoint line by the edges' endpoints; return [(lo, hi, targets)]."""
    points = {0}
    for ranges, _ in edges:
        for lo, hi in ranges:
            points.add(lo)
            if hi < MAX_CODEPOINT:
                points.add(hi + 1)
    points = sorted(points)
    targets = [set() for _ in points]
    for ranges, t in edges:
        for lo, hi in ranges:
            i = bisect_left(points, lo)
            j = bisect_left(points, hi + 1)
            for k in range(i, j):
                targets[k].add(t)
    bounds = points[1:] + [MAX_CODEPOINT + 1]
    return [(lo, nxt - 1, frozenset(ts)) for lo, nxt, ts in zip(points, bounds, targets)]


def _append(row: list, lo: int, hi: int, t: int) -> None:
    if row and row[-1][2] == t and row[-1][1] + 1 == lo:
        row[-1] = (row[-1][0], hi, t)
    else:
        row.append((lo, hi, t))


def from_syntax(node, search: bool) -> Dfa:
    """Subset construction.  With ``search`` the language is Σ*·L(node)·Σ*."""
    limit = current_budget()
    nfa = _Nfa(limit)
    start, final = nfa.new(), nfa.new()
    if search:
        inner_start, inner_end = nfa.new(), nfa.new()
        nfa.chars[start].append((ANY_CODEPOINT.ranges, start))
        nfa.eps[start].append(inner_start)
        nfa.build(node, inner_start, inner_end)
        nfa.eps[inner_end].append(final)
        nfa.chars[final].append((ANY_CODEPOINT.ranges, final))
    else:
        nfa.build(node, start, final)

    first = (nfa.closure([start], True, False), True)
    index = {first: 0}
    order = [first]
    trans = []
    accept = set()
    i = 0
    while i < len(order):
        states, at_start = order[i]
        if final in nfa.closure(states, at_start, True):
            accept.add(i)
        edges = [e for s in states for e in nfa.chars[s]]
        row: list = []
        for lo, hi, targets in _partition(edges):
            key = (nfa.closure(targets, False, False), False)
            t = index.get(key)
            if t is None:
                t = len(order)
                if t >= limit:
                    raise AutomatonTooLarge(f"DFA exceeds {limit} states")
                index[key] = t
                order.append(key)
            _append(row, lo, hi, t)
        trans.append(row)
        i += 1
    return Dfa(trans, accept)


def complement_dfa(d: Dfa) -> Dfa:
    return Dfa(d.trans, set(range(d.size)) - d.accept)


def product(a: Dfa, b: Dfa, conjunction: bool = True) -> Dfa:
    """Product automaton accepting L(a) ∩ L(b) (or L(a) ∪ L(b))."""
    limit = current_budget()
    index = {(0, 0): 0}
    order = [(0, 0)]
    trans = []
    accept = set()
    i = 0
    while i < len(order):
        p, q = order[i]
        in_a, in_b = p in a.accept, q in b.accept
        if (in_a and in_b) if conjunction else (in_a or in_b):
            accept.add(i)
        ra, rb = a.trans[p], b.trans[q]
        x = y = 0
        lo = 0
        row: list = []
        while lo <= MAX_CODEPOINT:
            _, ha, ta = ra[x]
            _, hb, tb = rb[y]
            hi = min(ha, hb)
            key = (ta, tb)
            t = index.get(key)
            if t is None:
                t = len(order)
                if t >= limit:
                    raise AutomatonTooLarge(f"product DFA exceeds {limit} states")
                index[key] = t
                order.append(key)
            _append(row, lo, hi, t)
            if ha == hi:
                x += 1
            if hb == hi:
                y += 1
            lo = hi + 1
        trans.append(row)
        i += 1
    return Dfa(trans, accept)


def minimize(d: Dfa) -> Dfa:
    """Moore partition refinement; returns an equivalent DFA with the fewest states."""
    block = [1 if s in d.accept else 0 for s in range(d.size)]
    while True:
        signatures = {}
        new_block = []
        for s in range(d.size):
            row = []
            for lo, hi, t in d.trans[s]:
                if row and row[-1][2] == block[t]:
                    row[-1] = (row[-1][0], hi, block[t])
                else:
                    row.append((lo, hi, block[t]))
            sig = (block[s], tuple(row))
            new_block.append(signatures.setdefault(sig, len(signatures)))
        if len(signatures) == len(set(block)):
            break
        block = new_block
    # renumber so that the initial state is 0 and states appear in BFS order
    order = {}
    queue = deque([block[0]])
    order[block[0]] = 0
    representative = {}
    for s in range(d.size):
        representative.setdefault(block[s], s)
    trans = []
    while queue:
        b = queue.popleft()
        row: list = []
        for lo, hi, t in d.trans[representative[b]]:
            tb = block[t]
            if tb not in order:
                order[tb] = len(order)
                queue.append(tb)
            _append(row, lo, hi, order[tb])
        trans.append(row)
    accept = {order[block[s]] for s in d.accept if block[s] in order}
    return Dfa(trans, accept)


def is_empty(d: Dfa) -> bool:
    return not d.accept


# ---------------------------------------------------------------------------
# enumeration


def _analyse(d: Dfa):
    """Cached (useful states, infinite?) for ``d``."""
    if d._info is not None:
        return d._info
    reverse = [set() for _ in range(d.size)]
    for s, row in enumerate(d.trans):
        for _, _, t in row:
            reverse[t].add(s)
    useful = set(d.accept)
    stack = list(d.accept)
    while stack:
        t = stack.pop()
        for s in reverse[t]:
            if s not in useful:
                useful.add(s)
                stack.append(s)
    # cycle detection restricted to useful states (all states are reachable)
    colour = {}
    infinite = False
    for root in useful:
        if root in colour:
            continue
        colour[root] = 1
        stack = [(root, iter({t for _, _, t in d.trans[root] if t in useful}))]
        while stack and not infinite:
            s, it = stack[-1]
            for t in it:
                c = colour.get(t)
                if c == 1:
                    infinite = True
                    break
                if c is None:
                    colour[t] = 1
                    stack.append((t, iter({u for _, _, u in d.trans[t] if u in useful})))
                    break
            else:
                colour[s] = 2
                stack.pop()
        if infinite:
            break
    d._info = (frozenset(useful), infinite)
    return d._info


def is_infinite(d: Dfa) -> bool:
    return _analyse(d)[1]


# Representative order: printable ASCII first, then the remaining codepoints,
# with surrogates last because they cannot be encoded on their own.
_RANK_CLASSES = ((0x20, 0x7E), (0x00, 0x1F), (0x7F, 0xD7FF), (0xE000, MAX_CODEPOINT), (0xD800, 0xDFFF))


def _ranked_pieces(row):
    pieces = []
    for rank, (clo, chi) in enumerate(_RANK_CLASSES):
        for lo, hi, t in row:
            a, b = max(lo, clo), min(hi, chi)
            if a <= b:
                pieces.append((rank, a, b, t))
    pieces.sort()
    return [(a, b, t) for _, a, b, t in pieces]


def _words_of_length(d: Dfa, length: int, can: list, pieces: list):
    if length == 0:
        if 0 in can[0]:
            yield ""
        return

    def options(s, remaining):
        reach = can[remaining - 1]
        for lo, hi, t in pieces[s]:
            if t in reach:
                for c in range(lo, hi + 1):
                    yield c, t

    if 0 not in can[length]:
        return
    path: list = []
    stack = [options(0, length)]
    while stack:
        try:
            c, t = next(stack[-1])
        except StopIteration:
            stack.pop()
            if path:
                path.pop()
            continue
        path.append(chr(c))
        if len(path) == length:
            yield "".join(path)
            path.pop()
        else:
            stack.append(options(t, length - len(path)))


def enumerate_words(d: Dfa, i: int):
    """Return ``i`` distinct words of L(d) (shortest first), or None if |L(d)| < i."""
    if i < 1:
        raise ValueError("i must be positive")
    useful, infinite = _analyse(d)
    if 0 not in useful:
        return None
    pieces = [_ranked_pieces(row) for row in d.trans]
    can = [set(d.accept)]
    words: list = []
    length = 0
    while True:
        if not infinite and length >= d.size:
            return None
        while len(can) <= length:
            prev = can[-1]
            can.append({s for s in useful if any(t in prev for _, _, t in d.trans[s])})
        for w in _words_of_length(d, length, can, pieces):
            words.append(w)
            if len(words) == i:
                return words
        length += 1


def has_at_least(d: Dfa, n: int) -> bool:
    if n <= 0:
        return True
    if is_infinite(d) and not is_empty(d):
        return True
    return enumerate_words(d, n) is not None


def to_dot(d: Dfa) -> str:
    """Graphviz rendering, one edge per interval."""
    lines = ["digraph dfa {", "  rankdir=LR;"]
    for s in range(d.size):
        shape = "doublecircle" if s in d.accept else "circle"
        lines.append(f"  {s} [shape={shape}];")
    for s, row in enumerate(d.trans):
        for lo, hi, t in row:
            label = f"{lo:#x}" if lo == hi else f"{lo:#x}-{hi:#x}"
            lines.append(f'  {s} -> {t} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines)
