"""A small reduced ordered binary decision diagram package.

Nodes are integers; ``0`` and ``1`` are the terminals.  Atoms are arbitrary
hashable keys, ordered by first use.  Because every node is built through
the unique table, two Boolean functions over the same atoms are equal
exactly when their node numbers are equal.
"""

from __future__ import annotations

FALSE = 0
TRUE = 1

_TERMINAL_LEVEL = float("inf")


class Robdd:
    def __init__(self):
        self.level = [_TERMINAL_LEVEL, _TERMINAL_LEVEL]
        self.low = [0, 1]
        self.high = [0, 1]
        self._unique: dict = {}
        self._atoms: dict = {}
        self._neg: dict = {}
        self._and: dict = {}

    def __len__(self):
        return len(self.level)

    @property
    def atom_count(self) -> int:
        return len(self._atoms)

    def _mk(self, level, low: int, high: int) -> int:
        if low == high:
            return low
        key = (level, low, high)
        node = self._unique.get(key)
        if node is None:
            node = len(self.level)
            self.level.append(level)
            self.low.append(low)
            self.high.append(high)
            self._unique[key] = node
        return node

    def atom(self, key) -> int:
        """Node for the positive literal of ``key`` (creating the atom if new)."""
        level = self._atoms.get(key)
        if level is None:
            level = len(self._atoms)
            self._atoms[key] = level
        return self._mk(level, FALSE, TRUE)

    def neg(self, u: int) -> int:
        if u <= 1:
            return 1 - u
        hit = self._neg.get(u)
        if hit is None:
            hit = self._mk(self.level[u], self.neg(self.low[u]), self.neg(self.high[u]))
            self._neg[u] = hit
            self._neg[hit] = u
        return hit

    def conj(self, u: int, v: int) -> int:
        if u == FALSE or v == FALSE:
            return FALSE
        if u == TRUE:
            return v
        if v == TRUE or u == v:
            return u
        if u > v:
            u, v = v, u
        key = (u, v)
        hit = self._and.get(key)
        if hit is not None:
            return hit
        lu, lv = self.level[u], self.level[v]
        top = min(lu, lv)
        u0, u1 = (self.low[u], self.high[u]) if lu == top else (u, u)
        v0, v1 = (self.low[v], self.high[v]) if lv == top else (v, v)
        hit = self._mk(top, self.conj(u0, v0), self.conj(u1, v1))
        self._and[key] = hit
        return hit

    def disj(self, u: int, v: int) -> int:
        return self.neg(self.conj(self.neg(u), self.neg(v)))

    def conj_all(self, nodes) -> int:
        out = TRUE
        for n in nodes:
            out = self.conj(out, n)
            if out == FALSE:
                break
        return out

    def disj_all(self, nodes) -> int:
        out = FALSE
        for n in nodes:
            out = self.disj(out, n)
            if out == TRUE:
                break
        return out

    def evaluate(self, u: int, assignment) -> bool:
        """Truth value under ``assignment`` (a mapping from atom key to bool)."""
        levels = {lvl: key for key, lvl in self._atoms.items()}
        while u > 1:
            u = self.high[u] if assignment[levels[self.level[u]]] else self.low[u]
        return u == TRUE
