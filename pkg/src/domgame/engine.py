"""Exact solver for the domination game on partially-dominated graphs.

The value of a position depends only on the dominated set and the player
to move, so the move history is dropped and positions are cached.  The
heavy lifting is done by a kernel searcher (compiled when available, see
:mod:`domgame._kernel`); scripted passes are handled here on top of it.
"""

from __future__ import annotations

import enum
from functools import lru_cache
from typing import Iterable, Sequence, Union

from ._kernel import BudgetExceeded, make_searcher
from .graph import Graph, PartiallyDominatedGraph, VertexSet, iter_bits

__all__ = [
    "BudgetExceeded",
    "GameError",
    "PASS",
    "Player",
    "Solver",
    "decide_leq",
    "gamma_g",
    "gamma_g_prime",
    "game_value",
    "memo_value",
    "optimal_moves",
    "reference_value",
    "value_after_prefix",
]


class GameError(ValueError):
    """Invalid game input: bad pass script, illegal move, terminal state."""


class Player(enum.Enum):
    DOMINATOR = "Dominator"
    STALLER = "Staller"

    @property
    def other(self) -> Player:
        return Player.STALLER if self is Player.DOMINATOR else Player.DOMINATOR

    def __str__(self) -> str:
        return self.value


PASS = None
PassScript = Sequence[tuple[int, Player]]
PrefixMove = Union[int, str, None]


def _mask(pd_or_set) -> int:
    if isinstance(pd_or_set, VertexSet):
        return pd_or_set.mask
    return int(pd_or_set)


def _check_script(to_move: Player, pass_script: PassScript) -> tuple[tuple[int, Player], ...]:
    script = tuple(pass_script)
    last = -1
    for turn, player in script:
        if turn <= last:
            raise GameError("pass script turn indices must be strictly increasing")
        last = turn
        expected = to_move if turn % 2 == 0 else to_move.other
        if player is not expected:
            raise GameError(f"turn {turn} belongs to {expected}, cannot script a pass for {player}")
    return script


class Solver:
    """Solver bound to one graph; reuses its transposition table across
    queries with different dominated sets.

    ``budget`` caps node expansions per solver lifetime (``BudgetExceeded``
    is raised when exceeded).  ``backend`` is ``"cython"`` or ``"python"``;
    by default the compiled kernel is used when built.
    """

    def __init__(self, graph: Graph | PartiallyDominatedGraph, *, budget: int | None = None,
                 backend: str | None = None, prune: bool = True):
        if isinstance(graph, PartiallyDominatedGraph):
            graph = graph.graph
        self.graph = graph
        self.searcher = make_searcher(graph.closed_masks, graph.n, budget, prune, backend)

    @property
    def backend(self) -> str:
        return self.searcher.backend

    @property
    def nodes(self) -> int:
        return self.searcher.nodes

    def value(self, dominated, to_move: Player, pass_script: PassScript = ()) -> int:
        d = _mask(dominated)
        script = _check_script(to_move, pass_script)
        if not script:
            return self.searcher.value(d, to_move is Player.DOMINATOR)
        return self._value_scripted(d, to_move, script)

    def _value_scripted(self, d: int, to_move: Player, script) -> int:
        closed = self.graph.closed_masks
        full = self.graph.full_mask
        memo: dict[tuple[int, bool, int, int], int] = {}

        def rec(d: int, player: Player, turn: int, idx: int) -> int:
            if d == full:
                return 0
            if idx == len(script):
                return self.searcher.value(d, player is Player.DOMINATOR)
            key = (d, player is Player.DOMINATOR, turn, idx)
            if key in memo:
                return memo[key]
            if script[idx][0] == turn:
                val = rec(d, player.other, turn + 1, idx + 1)
            else:
                vals = {rec(d | nb, player.other, turn + 1, idx) for nb in closed if nb & ~d}
                val = 1 + (min(vals) if player is Player.DOMINATOR else max(vals))
            memo[key] = val
            return val

        return rec(d, to_move, 0, 0)

    def leq(self, dominated, to_move: Player, m: int) -> bool:
        if m < 0:
            raise GameError("m must be nonnegative")
        return self.searcher.leq(_mask(dominated), to_move is Player.DOMINATOR, m)

    @property
    def last_max_depth(self) -> int:
        """Deepest node expanded by the most recent :meth:`leq` call (-1: none)."""
        return self.searcher.max_depth

    def is_optimal(self, dominated, to_move: Player, v: int, value: int | None = None) -> bool:
        """Whether playing ``v`` keeps the minimax value."""
        d = _mask(dominated)
        nb = self.graph.closed_masks[v]
        if not nb & ~d:
            raise GameError(f"vertex {self.graph.label(v)} is not a legal move")
        if value is None:
            value = self.value(d, to_move)
        child = d | nb
        if to_move is Player.DOMINATOR:
            return self.searcher.leq(child, False, value - 1)
        # child value is at most value-1 already; optimal iff it is not smaller
        return value < 2 or not self.searcher.leq(child, True, value - 2)

    def optimal_moves(self, dominated, to_move: Player) -> VertexSet:
        d = _mask(dominated)
        legal = [v for v, nb in enumerate(self.graph.closed_masks) if nb & ~d]
        if not legal:
            raise GameError("no legal moves: the position is terminal")
        value = self.value(d, to_move)
        return VertexSet.of(self.graph.n, (v for v in legal if self.is_optimal(d, to_move, v, value)))

    def play_prefix(self, dominated, starter: Player, prefix: Iterable[PrefixMove]) -> tuple[int, Player, int]:
        """Apply ``prefix`` (vertices, labels or ``PASS``); return the
        resulting dominated mask, player to move and vertex-move count."""
        d = _mask(dominated)
        player = starter
        count = 0
        for i, mv in enumerate(prefix):
            if mv is PASS:
                player = player.other
                continue
            try:
                v = self.graph.vertex(mv)
            except ValueError as exc:
                raise GameError(f"prefix move {i}: {exc}") from None
            nb = self.graph.closed_masks[v]
            if not nb & ~d:
                raise GameError(f"prefix move {i} ({self.graph.label(v)}) is illegal: "
                                "its closed neighborhood is already dominated")
            d |= nb
            count += 1
            player = player.other
        return d, player, count

    def value_after_prefix(self, dominated, starter: Player, prefix: Iterable[PrefixMove]) -> int:
        d, player, count = self.play_prefix(dominated, starter, prefix)
        return count + self.searcher.value(d, player is Player.DOMINATOR)


def game_value(pd: PartiallyDominatedGraph, to_move: Player, pass_script: PassScript = (), **kw) -> int:
    """Number of moves left under optimal play; scripted passes are not counted."""
    return Solver(pd, **kw).value(pd.dominated, to_move, pass_script)


def gamma_g(pd: PartiallyDominatedGraph, **kw) -> int:
    """Game domination number: Dominator moves first."""
    return game_value(pd, Player.DOMINATOR, **kw)


def gamma_g_prime(pd: PartiallyDominatedGraph, **kw) -> int:
    """Staller-start game domination number."""
    return game_value(pd, Player.STALLER, **kw)


def optimal_moves(pd: PartiallyDominatedGraph, to_move: Player, **kw) -> VertexSet:
    return Solver(pd, **kw).optimal_moves(pd.dominated, to_move)


def value_after_prefix(pd: PartiallyDominatedGraph, starter: Player, prefix: Iterable[PrefixMove], **kw) -> int:
    """Vertex moves in ``prefix`` plus the optimal continuation value.

    ``PASS`` entries hand the turn over without counting as a move.
    """
    return Solver(pd, **kw).value_after_prefix(pd.dominated, starter, prefix)


def decide_leq(pd: PartiallyDominatedGraph, to_move: Player, m: int, **kw) -> bool:
    """Depth-bounded decision of ``game_value <= m``."""
    return Solver(pd, **kw).leq(pd.dominated, to_move, m)


# -- independent reference solvers ------------------------------------------

def reference_value(pd: PartiallyDominatedGraph, to_move: Player) -> int:
    """Plain minimax over every legal vertex, no cache and no pruning."""
    closed = pd.graph.closed_masks
    full = pd.graph.full_mask

    def rec(d: int, dom: bool) -> int:
        vals = [rec(d | nb, not dom) for nb in closed if nb & ~d]
        if not vals:
            return 0
        return 1 + (min(vals) if dom else max(vals))

    return rec(pd.dominated.mask, to_move is Player.DOMINATOR)


def memo_value(pd: PartiallyDominatedGraph, to_move: Player, pass_script: PassScript = ()) -> int:
    """Exact-value memoized minimax (no bounds, no move pruning), with
    scripted-pass support.  The cache key is (dominated, to_move, passes
    consumed, turn)."""
    script = _check_script(to_move, pass_script)
    closed = pd.graph.closed_masks
    full = pd.graph.full_mask

    @lru_cache(maxsize=None)
    def rec(d: int, dom: bool, turn: int, idx: int) -> int:
        if d == full or not any(nb & ~d for nb in closed):
            return 0
        if idx < len(script) and script[idx][0] == turn:
            return rec(d, not dom, turn + 1, idx + 1)
        vals = [rec(d | nb, not dom, turn + 1, idx) for nb in closed if nb & ~d]
        return 1 + (min(vals) if dom else max(vals))

    return rec(pd.dominated.mask, to_move is Player.DOMINATOR, 0, 0)


def legal_mask(graph: Graph, dominated: int) -> int:
    m = 0
    for v, nb in enumerate(graph.closed_masks):
        if nb & ~dominated:
            m |= 1 << v
    return m


def labels_of(graph: Graph, vs: Iterable[int] | int) -> list[str]:
    if isinstance(vs, int):
        vs = iter_bits(vs)
    return [graph.label(v) for v in vs]
