"""Executable Dominator and Staller strategies for the reduction graphs.

:class:`Lemma1Dominator` keeps every widget at three moves or fewer while
mirroring Player 1's winning POS-CNF strategy through a1 plays, so that the
clause vertices end up dominated and two moves finish Q and P.
:class:`Lemma2Staller` keeps every widget at three moves or more and
mirrors Player 2, so that Dominator is eventually forced to give up a
fourth widget move or a third move in Q and P.

A policy is a pure function of an immutable :class:`PolicyState`, which
makes exhaustive :func:`adversarial_rollout` over the free side possible
with memoization on ``(dominated, to_move, state)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from .engine import GameError, Player, Solver
from .graph import PartiallyDominatedGraph, iter_bits
from .poscnf import AssignmentState, CnfPlayer, poscnf_best_moves, poscnf_winner, winner_from
from .reduction import WIDGET_EDGES, ReductionInstance

__all__ = [
    "Lemma1Dominator",
    "Lemma2Staller",
    "OptimalPolicy",
    "PolicyError",
    "PolicyState",
    "adversarial_rollout",
    "rollout_meets",
    "certify",
    "dominator_policy_lemma1",
    "effective_winner",
    "staller_policy_lemma2",
]

QP = -1
STAR = -2


class PolicyError(GameError):
    """Precondition failure or an illegal move emitted by a policy."""


@dataclass(frozen=True)
class PolicyState:
    """Bookkeeping shared by both policies.

    ``status`` per widget: '' untouched, 'T' set TRUE, 'F' set FALSE,
    'N' neutral (opened by Dominator without a1/a2).  ``owed`` means
    Player 2 is to move in the mirrored POS-CNF game; ``pending`` is the
    TRUE widget that caused it.  ``pair`` holds the open TRUE widgets of
    the postponed double-TRUE case.
    """

    counts: tuple[int, ...]
    opener: tuple[str, ...]
    status: tuple[str, ...]
    a_played: int = 0
    qp_count: int = 0
    star_count: int = 0
    true_mask: int = 0
    false_mask: int = 0
    mode: str = "mimic"
    owed: bool = False
    pending: int = -1
    pair: tuple[int, ...] = ()
    last: int = -1
    moves: int = 0
    instance: ReductionInstance | None = field(default=None, compare=False, hash=False, repr=False)

    def evolve(self, **changes) -> PolicyState:
        """``dataclasses.replace`` without re-running validation."""
        new = object.__new__(PolicyState)
        attrs = dict(self.__dict__)
        attrs.update(changes)
        object.__setattr__(new, "__dict__", attrs)
        return new

    def assignment(self) -> AssignmentState:
        return AssignmentState(frozenset(iter_bits(self.true_mask)), frozenset(iter_bits(self.false_mask)))


def _set(t: tuple, i: int, value) -> tuple:
    return t[:i] + (value,) + t[i + 1:]


def _widget_closed_rel() -> tuple[int, ...]:
    nb = [1 << j for j in range(9)]
    for u, v in WIDGET_EDGES:
        nb[u] |= 1 << v
        nb[v] |= 1 << u
    return tuple(nb)


_WCLOSED = _widget_closed_rel()


@lru_cache(maxsize=None)
def _widget_value(d: int, dominator: bool) -> int:
    """Exact value of the isolated widget game from dominated set ``d``
    (9-bit, relative to a1)."""
    if d == 0x1FF:
        return 0
    vals = {_widget_value(d | nb, not dominator) for nb in _WCLOSED if nb & ~d}
    return 1 + (min(vals) if dominator else max(vals))


def effective_winner(inst: ReductionInstance) -> CnfPlayer:
    """Winner of the POS-CNF game the instance encodes.

    For instances built on F' the artificial X0 is taken as already set
    FALSE with Player 1 to move, which is the game on the padded F.
    """
    if inst.kind == "partial":
        return poscnf_winner(inst.formula)
    return winner_from(inst.formula, AssignmentState(set_false=frozenset({0})), CnfPlayer.ONE)


class _Policy:
    side: Player

    def __init__(self, inst: ReductionInstance):
        self.inst = inst
        g = inst.graph
        self.closed = g.closed_masks
        self.n = g.n
        self.wmask = [w.mask for w in inst.widgets]
        self.qp = inst.qp_mask
        self.star_mask = 0
        if inst.star is not None:
            v, leaves = inst.star
            self.star_mask = (1 << v) | sum(1 << x for x in leaves)
        self.region = []
        for u in range(self.n):
            w = inst.widget_of(u)
            self.region.append(w if w is not None else (QP if self.qp >> u & 1 else STAR))
        self.formula = inst.formula
        self._forced: dict[tuple[int, int], int] = {}

    def initial(self) -> PolicyState:
        k = len(self.inst.widgets)
        return PolicyState((0,) * k, ("",) * k, ("",) * k, instance=self.inst)

    # -- local geometry --------------------------------------------------

    def legal(self, d: int, v: int) -> bool:
        return bool(self.closed[v] & ~d)

    def legal_in(self, d: int, region: int) -> list[int]:
        return [u for u in iter_bits(region) if self.closed[u] & ~d]

    def forced(self, d: int, region: int, cap: int = 4) -> int:
        """Least number of moves inside ``region`` needed to dominate its
        undominated vertices whose closed neighborhood lies in ``region``
        (capped at ``cap``)."""
        key = (region, d & region)
        hit = self._forced.get(key)
        if hit is None:
            hit = self._forced[key] = self._forced_uncached(d & region, region, cap)
        return hit

    def _forced_uncached(self, d: int, region: int, cap: int) -> int:
        need = 0
        for u in iter_bits(region & ~d):
            if self.closed[u] & ~region == 0:
                need |= 1 << u
        if not need:
            return 0
        gains = sorted({self.closed[u] & need for u in iter_bits(region) if self.closed[u] & need})
        for t in range(1, cap):
            for combo in combinations(gains, t):
                acc = 0
                for gmask in combo:
                    acc |= gmask
                if acc == need:
                    return t
        return cap

    def closing_move(self, d: int, region: int, order: Sequence[int] | None = None) -> int | None:
        """First legal move in ``region`` after which nothing in it is
        legal; otherwise the move leaving the fewest forced moves."""
        cands = [u for u in (order or iter_bits(region)) if self.closed[u] & ~d]
        if not cands:
            return None
        for u in cands:
            if not self.legal_in(d | self.closed[u], region):
                return u
        return min(cands, key=lambda u: self.forced(d | self.closed[u], region))

    # -- bookkeeping -----------------------------------------------------

    def record(self, st: PolicyState, v: int, who: str) -> PolicyState:
        r = self.region[v]
        moves = st.moves + 1
        if r >= 0:
            ap = st.a_played
            if v in self.inst.widgets[r].a_vertices:
                ap |= 1 << r
            opener = st.opener if st.counts[r] else _set(st.opener, r, who)
            return st.evolve(counts=_set(st.counts, r, st.counts[r] + 1), opener=opener,
                           a_played=ap, moves=moves)
        if r == QP:
            return st.evolve(qp_count=st.qp_count + 1, moves=moves)
        return st.evolve(star_count=st.star_count + 1, moves=moves)

    def observe(self, st: PolicyState, d: int, v: int) -> PolicyState:
        raise NotImplementedError

    def choose(self, st: PolicyState, d: int) -> tuple[int, PolicyState]:
        raise NotImplementedError


class Lemma1Dominator(_Policy):
    """Dominator's strategy when Player 1 wins the encoded formula."""

    side = Player.DOMINATOR

    def __init__(self, inst: ReductionInstance):
        super().__init__(inst)
        if effective_winner(inst) is not CnfPlayer.ONE:
            raise PolicyError("the Dominator strategy needs a formula won by Player 1")

    def observe(self, st, d, s):
        r = self.region[s]
        st = self.record(st, s, "S")
        if (r >= 0 and st.counts[r] == 1 and st.mode == "mimic"
                and not ((st.true_mask | st.false_mask) >> r & 1)):
            st = st.evolve(false_mask=st.false_mask | 1 << r, status=_set(st.status, r, "F"))
        return st.evolve(last=s)

    def choose(self, st, d):
        v, st = self._decide(st, d)
        return v, self.record(st, v, "D").evolve(last=-1)

    def _decide(self, st: PolicyState, d: int) -> tuple[int, PolicyState]:
        inst = self.inst
        if inst.star is not None and st.moves == 0:
            return inst.star[0], st
        s = st.last
        if s >= 0:
            r = self.region[s]
            if r >= 0 and st.counts[r] >= 2:
                w = self.wmask[r]
                if self.legal_in(d, w):
                    return self._widget_reply(d, r), st
                if st.counts[r] == 2 and st.qp_count == 0:
                    # widget closed in two moves: spend the slack on Q
                    c = next((c for c in inst.clause_vertices if self.legal(d, c)), None)
                    st = st.evolve(mode="local")
                    if c is not None:
                        return c, st
            elif r == QP:
                st = st.evolve(mode="local")
                if self.legal_in(d, self.qp):
                    return self.closing_move(d, self.qp), st
        return self._free(st, d)

    def _a_first(self, i: int) -> list[int]:
        w = self.inst.widgets[i]
        return [w.a1, w.a2] + [u for u in w.vertices if u not in (w.a1, w.a2)]

    def _widget_reply(self, d: int, i: int) -> int:
        """Locally optimal Dominator move in widget ``i``; among equals,
        one that leaves nothing legal in the widget, then a1/a2 first."""
        wl = self.inst.widgets[i]
        base, w = wl.a1, self.wmask[i]
        rel = (d >> base) & 0x1FF
        cands = [u for u in self._a_first(i) if self.closed[u] & w & ~d]
        if not cands:
            return self.closing_move(d, w, self._a_first(i))

        def key(u):
            after = d | self.closed[u]
            return (_widget_value(rel | _WCLOSED[u - base], False), bool(self.legal_in(after, w)))

        return min(cands, key=key)

    def _free(self, st: PolicyState, d: int) -> tuple[int, PolicyState]:
        inst = self.inst
        if st.mode == "mimic":
            a = st.assignment()
            free = [x for x in a.unset(self.formula.k) if st.counts[x] == 0]
            if free and a.mover is CnfPlayer.ONE:
                best = poscnf_best_moves(self.formula, a) if winner_from(self.formula, a) is CnfPlayer.ONE else set()
                best = [x for x in free if x in best] or free
                x = best[0]
                return inst.widgets[x].a1, st.evolve(true_mask=st.true_mask | 1 << x,
                                                   status=_set(st.status, x, "T"))
        p2 = inst.path_vertices[1]
        if st.qp_count == 0 and inst.clause_mask & ~d == 0 and self.legal(d, p2):
            return p2, st
        for i, wl in enumerate(inst.widgets):
            if st.status[i] == "T" and st.counts[i] == 1 and self.legal_in(d, self.wmask[i]):
                return self._widget_reply(d, i), st
        if st.qp_count == 0:
            c = next((c for c in inst.clause_vertices if self.legal(d, c)), None)
            if c is not None:
                return c, st
        if self.legal_in(d, self.qp):
            return self.closing_move(d, self.qp), st
        for i, wl in enumerate(inst.widgets):
            if st.counts[i] == 0 and self.legal(d, wl.a1):
                return wl.a1, st
        for i in range(len(inst.widgets)):
            if self.legal_in(d, self.wmask[i]):
                return self._widget_reply(d, i), st
        legal = self.legal_in(d, (1 << self.n) - 1)
        if not legal:
            raise PolicyError("no legal move: the game is over")
        return legal[0], st


class Lemma2Staller(_Policy):
    """Staller's strategy when Player 2 wins the encoded formula."""

    side = Player.STALLER

    def __init__(self, inst: ReductionInstance):
        super().__init__(inst)
        if effective_winner(inst) is not CnfPlayer.TWO:
            raise PolicyError("the Staller strategy needs a formula won by Player 2")

    def observe(self, st, d, v):
        r = self.region[v]
        before = st.counts[r] if r >= 0 else -1
        had_a = r >= 0 and bool(st.a_played >> r & 1)
        st = self.record(st, v, "D")
        if r >= 0 and st.mode == "mimic":
            is_a = v in self.inst.widgets[r].a_vertices
            unset = not ((st.true_mask | st.false_mask) >> r & 1)
            if before == 0:
                st = st.evolve(status=_set(st.status, r, "T" if is_a else "N"))
                if is_a and unset:
                    st = st.evolve(true_mask=st.true_mask | 1 << r)
                    if st.owed:
                        st = st.evolve(mode="double", pair=(st.pending, r))
                    else:
                        st = st.evolve(owed=True, pending=r)
            elif before == 2 and st.status[r] == "N" and is_a and not had_a and unset:
                st = st.evolve(true_mask=st.true_mask | 1 << r, status=_set(st.status, r, "T"))
                if st.owed:
                    st = st.evolve(mode="double", pair=(st.pending,))
                else:
                    st = st.evolve(owed=True, pending=-1)
        return st.evolve(last=v)

    def choose(self, st, d):
        v, st = self._decide(st, d)
        if not self.legal(d, v):
            raise PolicyError(f"policy chose illegal vertex {self.inst.graph.label(v)}")
        return v, self.record(st, v, "S").evolve(last=-1)

    # -- helpers -----------------------------------------------------------

    def _basic_reply(self, d: int, i: int) -> int | None:
        wl = self.inst.widgets[i]
        w = self.wmask[i]
        for b in (wl.b1, wl.b2):
            if self.legal(d, b) and w & ~(d | self.closed[b]):
                return b
        return None

    def _punish(self, d: int, st: PolicyState, widgets: Iterable[int]) -> int | None:
        """A move in one of ``widgets`` that forces a fourth move there."""
        for i in widgets:
            if i < 0:
                continue
            w = self.wmask[i]
            for u in self.legal_in(d, w):
                if st.counts[i] + 1 + self.forced(d | self.closed[u], w) >= 4:
                    return u
        return None

    def _finish_false(self, d: int, i: int) -> int | None:
        wl = self.inst.widgets[i]
        w = self.wmask[i]
        for u in (wl.b1, wl.b2, wl.z):
            if self.legal(d, u) and w & ~(d | self.closed[u]) == 0:
                return u
        return None

    def _guarantee(self, d: int, st: PolicyState, extra: int = -1) -> int:
        total = 0
        for i in range(len(self.wmask)):
            c = st.counts[i] + (extra == i)
            total += 3 if c == 0 else c + self.forced(d, self.wmask[i])
        q = st.qp_count + (extra == QP)
        total += max(2, q + self.forced(d, self.qp))
        if self.star_mask:
            total += st.star_count + (extra == STAR) + self.forced(d, self.star_mask)
        return total

    def _score_move(self, d: int, st: PolicyState) -> int:
        legal = self.legal_in(d, (1 << self.n) - 1)
        if not legal:
            raise PolicyError("no legal move: the game is over")
        return max(legal, key=lambda u: (self._guarantee(d | self.closed[u], st, self.region[u]), -u))

    def _pay_false(self, st: PolicyState, d: int) -> tuple[int, PolicyState] | None:
        a = st.assignment()
        unset = a.unset(self.formula.k)
        eligible = [x for x in unset
                    if st.counts[x] == 0 or (st.status[x] == "N" and st.counts[x] == 2)]
        if not eligible:
            return None
        best = set()
        if winner_from(self.formula, a, CnfPlayer.TWO) is CnfPlayer.TWO:
            best = poscnf_best_moves(self.formula, a, CnfPlayer.TWO)
        for y in [x for x in eligible if x in best] + [x for x in eligible if x not in best]:
            u = self.inst.widgets[y].b1 if st.counts[y] == 0 else self._finish_false(d, y)
            if u is not None and self.legal(d, u):
                return u, st.evolve(false_mask=st.false_mask | 1 << y,
                                  status=_set(st.status, y, "F"), owed=False, pending=-1)
        return None

    def _free(self, st: PolicyState, d: int) -> tuple[int, PolicyState]:
        if st.mode == "mimic":
            paid = self._pay_false(st, d)
            if paid is not None:
                return paid
        return self._score_move(d, st), st

    # -- decision ----------------------------------------------------------

    def _decide(self, st: PolicyState, d: int) -> tuple[int, PolicyState]:
        inst = self.inst
        x = st.last
        if x < 0:
            return self._score_move(d, st), st
        r = self.region[x]
        if inst.star is not None and st.mode != "won":
            out = self._star_reply(st, d, x)
            if out is not None:
                return out
        if st.mode == "double" and not (r >= 0 and st.counts[r] == 1):
            u = self._punish(d, st, [i for i in st.pair if i != r] + [i for i in st.pair if i == r])
            if u is not None:
                return u, st.evolve(mode="won")
            st = st.evolve(mode="local")
        if r >= 0:
            cnt = st.counts[r]
            w = self.wmask[r]
            is_a = x in inst.widgets[r].a_vertices
            if cnt == 1:
                u = self._basic_reply(d, r)
                if u is not None:
                    return u, st
            elif cnt == 2 and st.opener[r] == "S":
                if is_a:
                    u = self._punish(d, st, [r])
                    if u is not None:
                        return u, st.evolve(mode="won")
                u = self._finish_false(d, r)
                if u is not None:
                    return u, st
            elif cnt >= 3:
                legal = self.legal_in(d, w)
                if cnt == 3 and legal:
                    return legal[0], st.evolve(mode="won")
                if cnt >= 4:
                    st = st.evolve(mode="won")
        elif r == QP and st.qp_count == 1:
            best = None
            for u in sorted(self.legal_in(d, (1 << self.n) - 1), key=lambda u: (self.region[u] != QP, u)):
                q = 1 + (self.region[u] == QP) + self.forced(d | self.closed[u], self.qp)
                if q >= 3:
                    best = u
                    break
            if best is not None:
                return best, st.evolve(mode="won")
        return self._free(st, d)

    def _star_reply(self, st: PolicyState, d: int, x: int) -> tuple[int, PolicyState] | None:
        """Opening play on the full reduction."""
        v, leaves = self.inst.star
        if st.moves == 1 and x == v:
            w0 = self.inst.widgets[0]
            return w0.b1, st.evolve(false_mask=st.false_mask | 1, status=_set(st.status, 0, "F"))
        if st.moves <= 3 and x != v and self.legal(d, v) and st.mode in ("mimic", "leaves"):
            leaf = next((u for u in leaves if not d >> u & 1), None)
            if leaf is not None:
                return leaf, st.evolve(mode="leaves")
        if st.mode == "leaves":
            return self._score_move(d, st), st.evolve(mode="won")
        return None


class OptimalPolicy:
    """Engine player for any graph: the lowest-index optimal move."""

    def __init__(self, pd: PartiallyDominatedGraph, side: Player, **solver_kw):
        self.side = side
        self.solver = Solver(pd, **solver_kw)

    def initial(self) -> None:
        return None

    def observe(self, st, d: int, v: int) -> None:
        return None

    def choose(self, st, d: int) -> tuple[int, None]:
        return next(iter(self.solver.optimal_moves(d, self.side))), None


# -- rollout -----------------------------------------------------------------

def adversarial_rollout(instance: ReductionInstance | PartiallyDominatedGraph, policy, policy_side: Player,
                        starter: Player = Player.DOMINATOR) -> int:
    """Extremal game length with ``policy`` playing ``policy_side`` and the
    other side searched exhaustively: the maximum over Staller's play when
    she is free, the minimum over Dominator's play otherwise."""
    if isinstance(instance, PartiallyDominatedGraph):
        start = instance.dominated.mask
    else:
        start = instance.predominated.mask
    if policy.side is not policy_side:
        raise PolicyError(f"policy plays {policy.side}, not {policy_side}")
    closed = instance.graph.closed_masks
    full = instance.graph.full_mask
    free_is_staller = policy_side is Player.DOMINATOR
    memo: dict = {}

    def reply(d: int, st: PolicyState) -> tuple[int, PolicyState]:
        v, st2 = policy.choose(st, d)
        if not 0 <= v < len(closed) or not closed[v] & ~d:
            raise PolicyError(f"illegal policy move {v} at dominated={d:#x}, state={st}")
        return d | closed[v], st2

    def rec(d: int, st: PolicyState) -> int:
        # free side to move; each branch is merged after the policy's reply
        if d == full:
            return 0
        key = (d, st)
        hit = memo.get(key)
        if hit is not None:
            return hit
        seen = set()
        vals = []
        for v, nb in enumerate(closed):
            if not nb & ~d:
                continue
            d2 = d | nb
            if d2 == full:
                vals.append(1)
                continue
            d3, st3 = reply(d2, policy.observe(st, d, v))
            if (d3, st3) not in seen:
                seen.add((d3, st3))
                vals.append(2 + rec(d3, st3))
        val = max(vals) if free_is_staller else min(vals)
        memo[key] = val
        return val

    d, st = start, policy.initial()
    if d == full:
        return 0
    if starter is policy_side:
        d, st = reply(d, st)
        return 1 + rec(d, st)
    return rec(d, st)


def rollout_meets(instance: ReductionInstance, policy: _Policy, policy_side: Player, target: int,
                  starter: Player = Player.DOMINATOR) -> bool:
    """Decision form of :func:`adversarial_rollout`.

    For a Staller policy, True iff every game against it lasts at least
    ``target`` moves; for a Dominator policy, True iff none lasts longer.
    Branches are cut with a lower bound on the moves still needed: the sum
    of per-region forced counts, valid because one move lies in one region.
    """
    if policy.side is not policy_side:
        raise PolicyError(f"policy plays {policy.side}, not {policy_side}")
    closed = instance.graph.closed_masks
    full = instance.graph.full_mask
    regions = [m for m in policy.wmask + [policy.qp, policy.star_mask] if m]
    staller = policy_side is Player.STALLER
    # per state: (largest budget known to hold, smallest known to fail) for Staller,
    # mirrored for Dominator
    memo: dict = {}

    def lower(d: int) -> int:
        return sum(policy.forced(d, r) for r in regions)

    def reply(d: int, st: PolicyState) -> tuple[int, PolicyState]:
        v, st2 = policy.choose(st, d)
        if not 0 <= v < len(closed) or not closed[v] & ~d:
            raise PolicyError(f"illegal policy move {v} at dominated={d:#x}, state={st}")
        return d | closed[v], st2

    def holds(d: int, st: PolicyState, need: int) -> bool:
        # free side to move; Staller policy: remaining >= need, else remaining <= need
        if staller:
            if need <= 0 or lower(d) >= need:
                return True
        elif lower(d) > need:
            return False
        key = (d, st)
        yes, no = memo.get(key, (None, None))
        if yes is not None and (need <= yes if staller else need >= yes):
            return True
        if no is not None and (need >= no if staller else need <= no):
            return False
        ok = True
        seen = set()
        for v, nb in enumerate(closed):
            if not nb & ~d:
                continue
            d2 = d | nb
            if d2 == full:
                if (1 < need) if staller else (1 > need):
                    ok = False
                    break
                continue
            d3, st3 = reply(d2, policy.observe(st, d, v))
            if (d3, st3) in seen:
                continue
            seen.add((d3, st3))
            if d3 == full:
                if (2 < need) if staller else (2 > need):
                    ok = False
                    break
            elif not holds(d3, st3, need - 2):
                ok = False
                break
        if ok:
            yes = need if yes is None else (max(yes, need) if staller else min(yes, need))
        else:
            no = need if no is None else (min(no, need) if staller else max(no, need))
        memo[key] = (yes, no)
        return ok

    d, st = instance.predominated.mask, policy.initial()
    if d == full:
        return target <= 0 if staller else True
    if starter is policy_side:
        d, st = reply(d, st)
        if d == full:
            return 1 >= target if staller else 1 <= target
        return holds(d, st, target - 1)
    return holds(d, st, target)


def _replay(policy: _Policy, instance: ReductionInstance, history: Sequence[int],
            starter: Player) -> tuple[int, PolicyState]:
    closed = instance.graph.closed_masks
    d = instance.predominated.mask
    st = policy.initial()
    player = starter
    for i, v in enumerate(history):
        v = instance.graph.vertex(v)
        if not closed[v] & ~d:
            raise PolicyError(f"history move {i} ({instance.graph.label(v)}) is illegal")
        if player is policy.side:
            mine, st = policy.choose(st, d)
            if mine != v:
                raise PolicyError(f"history move {i} differs from the policy's choice "
                                  f"{instance.graph.label(mine)}")
        else:
            st = policy.observe(st, d, v)
        d |= closed[v]
        player = player.other
    if player is not policy.side:
        raise PolicyError(f"it is {player}'s turn, not {policy.side}'s")
    if d == instance.graph.full_mask:
        raise PolicyError("the game is over")
    return d, st


def dominator_policy_lemma1(instance: ReductionInstance, history: Sequence[int] = ()) -> int:
    """Dominator's next vertex after the D-game ``history`` (vertex ids or labels)."""
    policy = Lemma1Dominator(instance)
    d, st = _replay(policy, instance, history, Player.DOMINATOR)
    return policy.choose(st, d)[0]


def staller_policy_lemma2(instance: ReductionInstance, history: Sequence[int] = ()) -> int:
    """Staller's next vertex after the D-game ``history``."""
    policy = Lemma2Staller(instance)
    d, st = _replay(policy, instance, history, Player.DOMINATOR)
    return policy.choose(st, d)[0]


def certify(instance: ReductionInstance, winner: CnfPlayer) -> tuple[str, bool]:
    """One-sided certificate of the threshold claim by policy rollout.

    Returns the bound being certified, ``"≤ T"`` for Player 1 and
    ``"≥ T+1"`` for Player 2, and whether the rollout establishes it.
    """
    t = instance.threshold
    if t is None:
        raise PolicyError("instance has no threshold to certify")
    if winner is CnfPlayer.ONE:
        return f"≤ {t}", rollout_meets(instance, Lemma1Dominator(instance), Player.DOMINATOR, t)
    return f"≥ {t + 1}", rollout_meets(instance, Lemma2Staller(instance), Player.STALLER, t + 1)
