"""Pure-Python search kernel for the pass-free domination game.

This is the fallback used when the compiled ``_csearch`` extension is not
available.  Both kernels expose the same :class:`Searcher` interface and
must return identical answers; ``tests/test_kernels.py`` checks this.

A state is a dominated-vertex bitmask plus the player to move.  The table
stores, per state, a proven interval ``lo <= value <= hi``; every boolean
query ``value <= m`` tightens one side.  Children with identical newly
dominated sets are merged, and a child is dropped when another child
dominates a strict superset (for Dominator) or strict subset (for Staller)
of its new vertices.  The latter relies on the continuation principle:
enlarging the dominated set never increases the remaining game length.
"""

from __future__ import annotations

from typing import Sequence


class BudgetExceeded(RuntimeError):
    """Raised when a search expands more nodes than its budget allows."""

    def __init__(self, nodes: int):
        self.nodes = nodes
        super().__init__(f"node budget exhausted after {nodes} expansions")


def _popcount(x: int) -> int:
    return bin(x).count("1")


class Searcher:
    backend = "python"

    def __init__(self, closed: Sequence[int], n: int, budget: int | None = None, prune: bool = True):
        self.closed = tuple(closed)
        self.n = n
        self.full = (1 << n) - 1
        self.budget = budget
        self.prune = prune
        self.nodes = 0
        self.max_depth = -1
        self._table: dict[int, tuple[int, int]] = {}
        self._staller_bit = 1 << n

    def clear(self) -> None:
        self._table.clear()

    @property
    def table_size(self) -> int:
        return len(self._table)

    def bounds(self, dominated: int, dominator: bool) -> tuple[int, int]:
        key = dominated if dominator else dominated | self._staller_bit
        u = _popcount(self.full & ~dominated)
        return self._table.get(key, (min(u, 1), u))

    def children(self, dominated: int, dominator: bool) -> list[tuple[int, int]]:
        """Return (new vertices, representative vertex) per distinct move,
        in search order.  Pruned by dominance when enabled."""
        undom = self.full & ~dominated
        by_new: dict[int, int] = {}
        for v, nb in enumerate(self.closed):
            new = nb & undom
            if new and new not in by_new:
                by_new[new] = v
        items = list(by_new.items())
        if self.prune and len(items) > 1:
            kept = []
            for new, v in items:
                if dominator:
                    beaten = any(o != new and new & o == new for o, _ in items)
                else:
                    beaten = any(o != new and o & new == o for o, _ in items)
                if not beaten:
                    kept.append((new, v))
            items = kept
        if dominator:
            items.sort(key=lambda it: (-_popcount(it[0]), it[1]))
        else:
            items.sort(key=lambda it: (_popcount(it[0]), it[1]))
        return items

    def leq(self, dominated: int, dominator: bool, m: int) -> bool:
        """Decide ``value(dominated, dominator) <= m``."""
        self.max_depth = -1
        return self._leq(dominated, dominator, m, 0)

    def _leq(self, d: int, dom: bool, m: int, depth: int) -> bool:
        if d == self.full:
            return True
        if m <= 0:
            return False
        key = d if dom else d | self._staller_bit
        undom = self.full & ~d
        u = _popcount(undom)
        lo, hi = self._table.get(key, (1, u))
        if hi <= m:
            return True
        if lo > m:
            return False

        best = 0
        for nb in self.closed:
            g = _popcount(nb & undom)
            if g > best:
                best = g
        lb = -(-u // best)
        if lb > lo:
            lo = lb
        if lo > m:
            self._table[key] = (lo, hi)
            return False

        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise BudgetExceeded(self.nodes)
        if depth > self.max_depth:
            self.max_depth = depth

        kids = self.children(d, dom)
        if dom:
            result = False
            for new, _ in kids:
                if self._leq(d | new, False, m - 1, depth + 1):
                    result = True
                    break
        else:
            result = True
            for new, _ in kids:
                if not self._leq(d | new, True, m - 1, depth + 1):
                    result = False
                    break
        if result:
            hi = m
        else:
            lo = m + 1
        self._table[key] = (lo, hi)
        return result

    def value(self, dominated: int, dominator: bool) -> int:
        if dominated == self.full:
            return 0
        lo, hi = self.bounds(dominated, dominator)
        m = max(lo, 1)
        while m < hi and not self.leq(dominated, dominator, m):
            m += 1
        return m
