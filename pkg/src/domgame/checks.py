"""Exhaustive verification of the widget and clause-gadget properties and
of the formula/graph correspondence on small formulas."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement
from typing import Callable, Iterable

from .engine import PASS, BudgetExceeded, Player, Solver, legal_mask
from .graph import iter_bits
from .poscnf import CnfPlayer, Formula, poscnf_winner
from .reduction import (
    build_clause_gadget,
    build_full_reduction,
    build_reduction,
    build_staller_start_instance,
    build_widget,
    pad_even,
)


@dataclass
class ClaimResult:
    claim: str
    scenario: str
    expected: str
    computed: str
    passed: bool
    nodes: int = 0
    elapsed: float = 0.0

    def record(self) -> dict:
        return {"id": self.claim, "expected": self.expected, "computed": self.computed, "pass": self.passed}


@dataclass
class CheckReport:
    results: list[ClaimResult] = field(default_factory=list)

    def add(self, result: ClaimResult) -> None:
        if any(r.claim == result.claim for r in self.results):
            raise ValueError(f"claim {result.claim} registered twice")
        self.results.append(result)

    def extend(self, other: CheckReport) -> CheckReport:
        for r in other.results:
            self.add(r)
        return self

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results)

    def __getitem__(self, claim: str) -> ClaimResult:
        for r in self.results:
            if r.claim == claim:
                return r
        raise KeyError(claim)

    def ids(self) -> list[str]:
        return [r.claim for r in self.results]

    def render_text(self) -> str:
        lines = []
        for r in self.results:
            flag = "PASS" if r.passed else "FAIL"
            lines.append(f"[{flag}] {r.claim:<12} {r.scenario}")
            lines.append(f"       expected {r.expected}; computed {r.computed} "
                         f"({r.nodes} nodes, {r.elapsed:.3f}s)")
        good = sum(r.passed for r in self.results)
        lines.append(f"{good}/{len(self.results)} claims pass")
        return "\n".join(lines)

    def render_records(self) -> str:
        return "\n".join(json.dumps(r.record()) for r in self.results)


def _run(report: CheckReport, claim: str, scenario: str, expected: str,
         body: Callable[[], tuple[str, bool, int]]) -> None:
    t = time.perf_counter()
    computed, passed, nodes = body()
    report.add(ClaimResult(claim, scenario, expected, computed, passed, nodes, time.perf_counter() - t))


# -- widget ------------------------------------------------------------------

def check_observation1(solver_factory: Callable = Solver) -> CheckReport:
    """All six widget claims on W|{a1,a2}."""
    pd, w = build_widget()
    g = pd.graph
    d0 = pd.dominated.mask
    D, S = Player.DOMINATOR, Player.STALLER
    report = CheckReport()

    def i():
        s = solver_factory(pd)
        val = s.value(d0, D)
        opt = s.is_optimal(d0, D, w.a1, val)
        return f"{val}, a1 optimal={opt}", val == 3 and opt, s.nodes

    def ii():
        s = solver_factory(pd)
        val = s.value_after_prefix(d0, D, [w.a1, PASS])
        return str(val), val == 2, s.nodes

    def iii():
        s = solver_factory(pd)
        vals = {g.label(d1): s.value_after_prefix(d0, D, [d1, w.b1, PASS]) for d1 in w.a_vertices}
        return str(vals), all(v == 4 for v in vals.values()), s.nodes

    def iv():
        s = solver_factory(pd)
        val = s.value(d0, S)
        b1_opt = s.is_optimal(d0, S, w.b1, val)
        after_b1 = s.play_prefix(d0, S, [w.b1])[0]
        z_opt = s.is_optimal(after_b1, D, w.z)
        z_total = s.value_after_prefix(d0, S, [w.b1, w.z])
        ok = val == 3 and b1_opt and z_opt and z_total == 3
        return f"{val}, b1 optimal={b1_opt}, z reply optimal={z_opt} (total {z_total})", ok, s.nodes

    def v():
        s = solver_factory(pd)
        enforced = {g.label(d): s.value_after_prefix(d0, S, [w.b1, d]) for d in w.a_vertices}
        named = {"a1->y": s.value_after_prefix(d0, S, [w.b1, w.a1, w.y]),
                 "a2->x": s.value_after_prefix(d0, S, [w.b1, w.a2, w.x])}
        ok = all(x == 4 for x in [*enforced.values(), *named.values()])
        return f"{enforced} named replies {named}", ok, s.nodes

    def vi():
        full = g.full_mask
        closed = g.closed_masks
        a = set(w.a_vertices)
        checked = vacuous = 0
        failures = []
        for s1 in iter_bits(legal_mask(g, d0)):
            d1 = d0 | closed[s1]
            for s2 in iter_bits(legal_mask(g, d1)):
                d2 = d1 | closed[s2]
                if d2 == full:
                    vacuous += 1  # Staller's two moves already ended the game
                    continue
                checked += 1
                finishing = [m for m in iter_bits(legal_mask(g, d2)) if d2 | closed[m] == full]
                if not any(m in a or a & {s1, s2} for m in finishing):
                    failures.append((g.label(s1), g.label(s2)))
        computed = f"{checked} prefixes finished with a1/a2 played, {vacuous} already over"
        if failures:
            computed += f"; failures {failures}"
        return computed, not failures, 0

    _run(report, "Obs1.i", "D-game on W|{a1,a2}", "3, a1 optimal", i)
    _run(report, "Obs1.ii", "d1=a1, Staller passes", "2", ii)
    _run(report, "Obs1.iii", "d1 in {a1,a2}, s1=b1, Dominator passes", "4 for both", iii)
    _run(report, "Obs1.iv", "S-game on W|{a1,a2}", "3, b1 optimal, z optimal reply", iv)
    _run(report, "Obs1.v", "s1'=b1, Dominator replies a1 or a2", "4 (y after a1, x after a2)", v)
    _run(report, "Obs1.vi", "Staller starts, Dominator passes, any s2'",
         "finishing third move with a1 or a2 played", vi)
    return report


# -- clause gadget -------------------------------------------------------------

def _p_undominated_after_reply(pd, first: int) -> bool:
    g = pd.graph
    closed = g.closed_masks
    n = g.n - 4
    p_mask = sum(1 << (n + j) for j in range(4))
    d1 = pd.dominated.mask | closed[first]
    replies = list(iter_bits(legal_mask(g, d1)))
    return any((d1 | closed[s]) & p_mask != p_mask for s in replies)


def check_observation2(n_max: int = 4, solver_factory: Callable = Solver) -> CheckReport:
    """Clause-gadget claims for every n <= n_max and every pre-dominated S."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    report = CheckReport()
    for n in range(1, n_max + 1):
        subsets = [frozenset(c) for r in range(n + 1) for c in combinations(range(n), r)]
        partial = [s for s in subsets if len(s) < n]

        def i(n=n, partial=partial):
            nodes = 0
            bad = []
            for s in partial:
                pd = build_clause_gadget(n, s)
                solver = solver_factory(pd)
                val = solver.value(pd.dominated, Player.DOMINATOR)
                nodes += solver.nodes
                firsts = iter_bits(legal_mask(pd.graph, pd.dominated.mask))
                reply_ok = all(_p_undominated_after_reply(pd, d) for d in firsts)
                if val != 3 or not reply_ok:
                    bad.append((sorted(s), val, reply_ok))
            computed = f"{len(partial) - len(bad)}/{len(partial)} subsets ok"
            if bad:
                computed += f"; failures {bad}"
            return computed, not bad, nodes

        def ii(n=n):
            pd = build_clause_gadget(n, range(n))
            solver = solver_factory(pd)
            val = solver.value(pd.dominated, Player.DOMINATOR)
            return str(val), val == 2, solver.nodes

        def iii(n=n, subsets=subsets):
            nodes = 0
            vals = []
            for s in subsets:
                pd = build_clause_gadget(n, s)
                solver = solver_factory(pd)
                vals.append(solver.value(pd.dominated, Player.STALLER))
                nodes += solver.nodes
            good = sum(v == 2 for v in vals)
            return f"{good}/{len(vals)} subsets give 2 (values {sorted(set(vals))})", good == len(vals), nodes

        _run(report, f"Obs2.i.n{n}", f"n={n}, every S != V(Q)",
             "gamma_g=3 and Staller can leave P undominated", i)
        _run(report, f"Obs2.ii.n{n}", f"n={n}, S = V(Q)", "2", ii)
        _run(report, f"Obs2.iii.n{n}", f"n={n}, every S", "gamma_g'=2", iii)
    return report


def check_gadgets(n_max: int = 4) -> CheckReport:
    return check_observation1().extend(check_observation2(n_max))


# -- formula correspondence ----------------------------------------------------

@dataclass(frozen=True)
class RoundtripResult:
    formula: Formula
    winner: CnfPlayer
    value: int | None
    threshold: int
    consistent: bool
    method: str = "exact"
    v_optimal: bool | None = None
    bound: str = ""
    nodes: int = 0

    def __iter__(self):
        # unpacks as (winner, value, consistent)
        return iter((self.winner, self.value, self.consistent))

    def summary(self) -> str:
        if self.value is not None:
            rel = "≤" if self.value <= self.threshold else "≥"
            shown = f"value {rel} {self.threshold if rel == '≤' else self.threshold + 1}"
        else:
            shown = f"value {self.bound}"
        flag = "CONSISTENT" if self.consistent else "INCONSISTENT"
        return f"{self.winner} | {shown} | {flag}"


def check_corollary(f: Formula, *, budget: int | None = None, backend: str | None = None,
                    fallback: bool = False) -> RoundtripResult:
    """Winner of ``f`` against the D-game value of G_F|A (threshold 3k+2).

    With ``fallback`` a budget overrun is answered by a policy rollout.
    """
    inst = build_reduction(f)
    winner = poscnf_winner(inst.formula)
    solver = Solver(inst.pd, budget=budget, backend=backend)
    try:
        value = solver.value(inst.predominated, Player.DOMINATOR)
    except BudgetExceeded:
        if not fallback:
            raise
        return _certify_by_rollout(inst, winner)
    consistent = (winner is CnfPlayer.ONE) == (value <= inst.threshold)
    return RoundtripResult(f, winner, value, inst.threshold, consistent, nodes=solver.nodes)


def check_theorem_claim(f: Formula, *, budget: int | None = None, backend: str | None = None,
                        fallback: bool = True) -> RoundtripResult:
    """Claim for G'_F plus optimality of the star center as first move.

    When the exact search exceeds ``budget`` and ``fallback`` is set, the
    side of the threshold is certified by a policy rollout instead.
    """
    inst = build_full_reduction(f)
    winner = poscnf_winner(pad_even(f))
    solver = Solver(inst.pd, budget=budget, backend=backend)
    v = inst.star[0]
    try:
        value = solver.value(inst.predominated, Player.DOMINATOR)
        v_opt = solver.is_optimal(inst.predominated, Player.DOMINATOR, v, value)
    except BudgetExceeded:
        if not fallback:
            raise
        return _certify_by_rollout(inst, winner)
    consistent = (winner is CnfPlayer.ONE) == (value <= inst.threshold)
    if winner is CnfPlayer.ONE:
        consistent = consistent and v_opt
    return RoundtripResult(f, winner, value, inst.threshold, consistent, v_optimal=v_opt, nodes=solver.nodes)


def _certify_by_rollout(inst, winner: CnfPlayer) -> RoundtripResult:
    from .strategies import certify

    bound, ok = certify(inst, winner)
    return RoundtripResult(inst.source, winner, None, inst.threshold, ok, method="rollout", bound=bound)


def k2_corpus() -> list[Formula]:
    """Every multiset of 1-3 clauses over the nonempty subsets of {X1, X2}."""
    atoms = [frozenset({0}), frozenset({1}), frozenset({0, 1})]
    out = []
    for size in (1, 2, 3):
        for combo in combinations_with_replacement(range(3), size):
            out.append(Formula(2, tuple(atoms[i] for i in combo)))
    return out


FIG2_FORMULA = Formula.from_lists(4, [[1], [2, 3], [3, 4]])


@dataclass(frozen=True)
class SweepResult:
    values: tuple[tuple[Formula, CnfPlayer, int], ...]
    thresholds: tuple[int, ...]

    @property
    def consistent(self) -> bool:
        return bool(self.thresholds)


def staller_start_sweep(formulas: Iterable[Formula], *, budget: int | None = None) -> SweepResult:
    """S-game values on the Staller-start instances, and every threshold t
    with (Player 1 wins) <=> (value <= t) across the corpus."""
    rows = []
    for f in formulas:
        inst = build_staller_start_instance(f)
        solver = Solver(inst.pd, budget=budget)
        rows.append((f, poscnf_winner(pad_even(f)), solver.value(inst.predominated, Player.STALLER)))
    top = max(r[2] for r in rows) + 1
    good = tuple(t for t in range(top + 1)
                 if all((w is CnfPlayer.ONE) == (val <= t) for _, w, val in rows))
    return SweepResult(tuple(rows), good)
