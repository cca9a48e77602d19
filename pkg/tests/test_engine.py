import random

import pytest
from hypothesis import given, settings

from domgame.engine import (
    PASS,
    BudgetExceeded,
    GameError,
    Player,
    Solver,
    decide_leq,
    game_value,
    gamma_g,
    gamma_g_prime,
    memo_value,
    optimal_moves,
    reference_value,
    value_after_prefix,
)
from domgame.graph import Graph, PartiallyDominatedGraph, VertexSet

from helpers import partial_graphs, random_partial

D, S = Player.DOMINATOR, Player.STALLER


def full(g):
    return PartiallyDominatedGraph(g, VertexSet.of(g.n, ()))


def path(n):
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n):
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def star(leaves):
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def known_path_value(n):
    # published closed form for paths and cycles: ceil(n/2), minus one when n = 3 mod 4
    return -(-n // 2) - (1 if n % 4 == 3 else 0)


@pytest.mark.parametrize("n", range(1, 16))
def test_path_closed_form(n):
    assert gamma_g(full(path(n))) == known_path_value(n)


@pytest.mark.parametrize("n", range(3, 16))
def test_cycle_closed_form(n):
    assert gamma_g(full(cycle(n))) == known_path_value(n)


@pytest.mark.parametrize("n", range(1, 11))
def test_paths_match_reference(n):
    pd = full(path(n))
    assert gamma_g(pd) == reference_value(pd, D)
    assert gamma_g_prime(pd) == reference_value(pd, S)


@pytest.mark.parametrize("n", range(3, 11))
def test_cycles_match_reference(n):
    pd = full(cycle(n))
    assert gamma_g(pd) == reference_value(pd, D)


def test_small_closed_forms():
    assert gamma_g(full(star(5))) == 1
    assert gamma_g_prime(full(star(5))) == 2
    assert gamma_g(full(Graph(1, []))) == 1
    assert gamma_g(full(Graph(4, []))) == 4


def test_dominated_graph_has_value_zero():
    g = path(3)
    pd = PartiallyDominatedGraph(g, VertexSet.full(3))
    assert gamma_g(pd) == 0 and gamma_g_prime(pd) == 0
    with pytest.raises(GameError):
        optimal_moves(pd, D)


def test_pass_script_validation():
    pd = full(path(4))
    with pytest.raises(GameError):
        game_value(pd, D, [(1, D)])
    with pytest.raises(GameError):
        game_value(pd, D, [(2, D), (2, D)])
    # a Dominator pass at turn 0 turns the D-game into the S-game
    assert game_value(pd, D, [(0, D)]) == gamma_g_prime(pd)


def test_prefix_with_pass_and_illegal_move():
    pd = full(path(3))
    assert value_after_prefix(pd, D, [1]) == 1
    assert value_after_prefix(pd, D, [PASS]) == gamma_g_prime(pd)
    with pytest.raises(GameError):
        value_after_prefix(pd, D, [1, 0])


def test_budget_is_enforced():
    pd = full(cycle(14))
    with pytest.raises(BudgetExceeded) as exc:
        gamma_g(pd, budget=5)
    assert exc.value.nodes > 5


def test_leq_rejects_negative_bound():
    with pytest.raises(GameError):
        decide_leq(full(path(3)), D, -1)


def test_optimal_moves_are_value_preserving():
    pd = full(path(7))
    s = Solver(pd)
    v = s.value(pd.dominated, D)
    best = s.optimal_moves(pd.dominated, D)
    assert best
    for u in range(7):
        after = 1 + s.value(pd.dominated.mask | pd.graph.closed_masks[u], S)
        assert (u in best) == (after == v)


@settings(max_examples=80, deadline=None)
@given(partial_graphs(max_n=8))
def test_solver_matches_reference(pd):
    for p in (D, S):
        assert game_value(pd, p) == reference_value(pd, p)


@settings(max_examples=60, deadline=None)
@given(partial_graphs(max_n=7))
def test_unpruned_search_agrees(pd):
    for p in (D, S):
        assert game_value(pd, p, prune=False) == game_value(pd, p)


@settings(max_examples=60, deadline=None)
@given(partial_graphs(max_n=7))
def test_scripted_pass_matches_memo_oracle(pd):
    script = [(1, S)]
    assert game_value(pd, D, script) == memo_value(pd, D, script)


def test_value_bounded_by_undominated_count():
    rng = random.Random(7)
    for _ in range(40):
        pd = random_partial(rng, 10)
        undominated = pd.graph.n - len(pd.dominated)
        assert gamma_g(pd) <= undominated
