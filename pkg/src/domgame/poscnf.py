"""The POS-CNF positional game.

Player 1 sets unset variables TRUE, Player 2 sets them FALSE, Player 1
moves first and the game continues until every variable is set.  Player 1
wins iff every clause contains a TRUE variable.  Variables are 0-based
internally and 1-based (``X1..Xk``) in files and labels.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable


class FormulaError(ValueError):
    pass


class FormulaParseError(FormulaError):
    def __init__(self, message: str, lineno: int = 0):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}" if lineno else message)


class CnfPlayer(enum.IntEnum):
    ONE = 1
    TWO = 2

    @property
    def other(self) -> CnfPlayer:
        return CnfPlayer.TWO if self is CnfPlayer.ONE else CnfPlayer.ONE

    def __str__(self) -> str:
        return f"Player {int(self)}"


@dataclass(frozen=True)
class Formula:
    k: int
    clauses: tuple[frozenset[int], ...]

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(frozenset(c) for c in self.clauses))
        if self.k < 1:
            raise FormulaError("a formula needs at least one variable")
        for i, c in enumerate(self.clauses):
            if not c:
                raise FormulaError(f"clause {i + 1} is empty")
            for x in c:
                if not 0 <= x < self.k:
                    raise FormulaError(f"variable index {x} out of range [0, {self.k})")

    @classmethod
    def from_lists(cls, k: int, clauses: Iterable[Iterable[int]]) -> Formula:
        """Build from 1-based variable lists, e.g. ``[[1], [2, 3]]``."""
        return cls(k, tuple(frozenset(x - 1 for x in c) for c in clauses))

    @property
    def n(self) -> int:
        return len(self.clauses)

    @property
    def clause_masks(self) -> tuple[int, ...]:
        return tuple(sum(1 << x for x in c) for c in self.clauses)

    def variable_name(self, x: int) -> str:
        return f"X{x + 1}"

    def __str__(self) -> str:
        if not self.clauses:
            return "TRUE"
        parts = []
        for c in self.clauses:
            lits = " v ".join(self.variable_name(x) for x in sorted(c))
            parts.append(f"({lits})" if len(c) > 1 else lits)
        return " & ".join(parts)


@dataclass(frozen=True)
class AssignmentState:
    set_true: frozenset[int] = field(default_factory=frozenset)
    set_false: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "set_true", frozenset(self.set_true))
        object.__setattr__(self, "set_false", frozenset(self.set_false))
        if self.set_true & self.set_false:
            raise FormulaError("a variable cannot be both TRUE and FALSE")

    @property
    def assigned(self) -> frozenset[int]:
        return self.set_true | self.set_false

    @property
    def mover(self) -> CnfPlayer:
        return CnfPlayer.ONE if len(self.set_true) <= len(self.set_false) else CnfPlayer.TWO

    def unset(self, k: int) -> list[int]:
        done = self.assigned
        return [x for x in range(k) if x not in done]

    def play(self, x: int, player: CnfPlayer | None = None) -> AssignmentState:
        if x in self.assigned:
            raise FormulaError(f"variable X{x + 1} is already set")
        player = player or self.mover
        if player is CnfPlayer.ONE:
            return AssignmentState(self.set_true | {x}, self.set_false)
        return AssignmentState(self.set_true, self.set_false | {x})


def _mask(xs: Iterable[int]) -> int:
    return sum(1 << x for x in set(xs))


def evaluate(f: Formula, a: AssignmentState) -> bool:
    """True iff every clause meets ``a.set_true``; ``a`` must be complete."""
    if len(a.assigned) != f.k or any(not 0 <= x < f.k for x in a.assigned):
        raise FormulaError("evaluate needs every variable set")
    t = _mask(a.set_true)
    return all(c & t for c in f.clause_masks)


@lru_cache(maxsize=256)
def _solver(k: int, clauses: tuple[int, ...]):
    full = (1 << k) - 1

    @lru_cache(maxsize=None)
    def p1_wins(t: int, fl: int, p1: bool) -> bool:
        if all(c & t for c in clauses):
            return True
        if any(c & ~fl == 0 for c in clauses):
            return False
        x = full & ~(t | fl)
        while x:
            low = x & -x
            x ^= low
            if p1 and p1_wins(t | low, fl, False):
                return True
            if not p1 and not p1_wins(t, fl | low, True):
                return False
        return not p1

    return p1_wins


def winner_from(f: Formula, a: AssignmentState, mover: CnfPlayer | None = None) -> CnfPlayer:
    """Minimax winner from position ``a``; the mover defaults to the one
    implied by the counts of TRUE and FALSE variables."""
    mover = mover or a.mover
    p1_wins = _solver(f.k, f.clause_masks)
    won = p1_wins(_mask(a.set_true), _mask(a.set_false), mover is CnfPlayer.ONE)
    return CnfPlayer.ONE if won else CnfPlayer.TWO


def poscnf_winner(f: Formula) -> CnfPlayer:
    return winner_from(f, AssignmentState())


def poscnf_best_moves(f: Formula, a: AssignmentState, mover: CnfPlayer | None = None) -> set[int]:
    """Unset variables whose selection keeps the mover's minimax outcome."""
    free = a.unset(f.k)
    if not free:
        raise FormulaError("no unset variables: the game is over")
    mover = mover or a.mover
    outcome = winner_from(f, a, mover)
    return {x for x in free if winner_from(f, a.play(x, mover), mover.other) is outcome}


def reference_winner(f: Formula) -> CnfPlayer:
    """Full game tree, played to the end, without caching or cutoffs."""
    clauses = f.clause_masks

    def rec(t: int, fl: int, p1: bool) -> bool:
        free = [x for x in range(f.k) if not (t | fl) >> x & 1]
        if not free:
            return all(c & t for c in clauses)
        if p1:
            return any(rec(t | 1 << x, fl, False) for x in free)
        return all(rec(t, fl | 1 << x, True) for x in free)

    return CnfPlayer.ONE if rec(0, 0, True) else CnfPlayer.TWO


def parse_formula(text: str) -> Formula:
    k = n = None
    clauses: list[frozenset[int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if fields[0] == "p":
            if k is not None:
                raise FormulaParseError("duplicate header", lineno)
            if len(fields) != 4 or fields[1] != "poscnf":
                raise FormulaParseError("malformed header, expected 'p poscnf <k> <n>'", lineno)
            try:
                k, n = int(fields[2]), int(fields[3])
            except ValueError:
                raise FormulaParseError("malformed header counts", lineno) from None
            if k < 1 or n < 0:
                raise FormulaParseError("header needs k >= 1 and n >= 0", lineno)
            continue
        if k is None:
            raise FormulaParseError("clause before header", lineno)
        try:
            lits = [int(tok) for tok in fields]
        except ValueError:
            raise FormulaParseError("non-integer literal", lineno) from None
        if lits[-1] != 0:
            raise FormulaParseError("clause is not terminated by 0", lineno)
        body = lits[:-1]
        if 0 in body:
            raise FormulaParseError("0 inside a clause", lineno)
        if not body:
            raise FormulaParseError("empty clause", lineno)
        for x in body:
            if not 1 <= x <= k:
                raise FormulaParseError(f"variable {x} out of range 1..{k}", lineno)
        clauses.append(frozenset(x - 1 for x in body))
    if k is None:
        raise FormulaParseError("missing header")
    if len(clauses) != n:
        raise FormulaParseError(f"header declares {n} clauses, found {len(clauses)}")
    return Formula(k, tuple(clauses))


def write_formula(f: Formula) -> str:
    lines = [f"p poscnf {f.k} {f.n}"]
    lines.extend(" ".join(str(x + 1) for x in sorted(c)) + " 0" for c in f.clauses)
    return "\n".join(lines) + "\n"
