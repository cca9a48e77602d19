import random

import pytest

from domgame.checks import k2_corpus
from domgame.engine import Player
from domgame.poscnf import AssignmentState, CnfPlayer, Formula, poscnf_best_moves
from domgame.reduction import build_full_reduction, build_reduction, build_widget
from domgame.strategies import (
    Lemma1Dominator,
    Lemma2Staller,
    OptimalPolicy,
    PolicyError,
    adversarial_rollout,
    certify,
    dominator_policy_lemma1,
    effective_winner,
    rollout_meets,
    staller_policy_lemma2,
)

D, S = Player.DOMINATOR, Player.STALLER
OR = Formula.from_lists(2, [[1, 2]])
AND = Formula.from_lists(2, [[1], [2]])


def test_widget_sanity_rollouts():
    pd, _ = build_widget()
    assert adversarial_rollout(pd, OptimalPolicy(pd, D), D) == 3
    assert adversarial_rollout(pd, OptimalPolicy(pd, S), S) == 3
    assert adversarial_rollout(pd, OptimalPolicy(pd, D), D, starter=S) == 3


def test_dominator_opening_is_player_one_opener():
    inst = build_reduction(OR)
    v = dominator_policy_lemma1(inst)
    openers = poscnf_best_moves(inst.formula, AssignmentState())
    assert v in {inst.widgets[x].a1 for x in openers}


def test_staller_first_widget_move_marked_false():
    inst = build_reduction(OR)
    w1, w2 = inst.widgets
    pol = Lemma1Dominator(inst)
    d = inst.predominated.mask
    st = pol.initial()
    v, st = pol.choose(st, d)
    assert v == w1.a1
    d |= inst.graph.closed_masks[v]
    st = pol.observe(st, d, w2.b1)
    assert st.false_mask == 0b10 and st.status[1] == "F"
    # every variable is set and Q is dominated: Dominator enters the path at p2
    assert dominator_policy_lemma1(inst, [w1.a1, w2.b1]) == inst.path_vertices[1]


def test_dominator_plays_next_true_variable():
    f = Formula.from_lists(4, [[1, 2], [3, 4]])
    inst = build_reduction(f)
    first = dominator_policy_lemma1(inst)
    x = inst.widget_of(first)
    # Staller answers by opening another widget (a FALSE setting)
    other = next(i for i in range(4) if i != x)
    nxt = dominator_policy_lemma1(inst, [first, inst.widgets[other].b1])
    y = inst.widget_of(nxt)
    assert nxt == inst.widgets[y].a1 and y not in (x, other)


def test_staller_basic_reply_keeps_widget_open():
    inst = build_reduction(AND)
    w1 = inst.widgets[0]
    for d1 in (w1.a1, w1.a2, w1.x, w1.z):
        s = staller_policy_lemma2(inst, [d1])
        assert s in (w1.b1, w1.b2)
        dom = inst.predominated.mask | inst.graph.closed_masks[d1] | inst.graph.closed_masks[s]
        assert w1.mask & ~dom


def test_staller_qp_reply_leaves_p_undominated():
    inst = build_reduction(AND)
    for d1 in inst.clause_vertices + inst.path_vertices:
        s = staller_policy_lemma2(inst, [d1])
        dom = inst.predominated.mask | inst.graph.closed_masks[d1] | inst.graph.closed_masks[s]
        assert inst.path_mask & ~dom


def test_staller_mirrors_and_punishes():
    inst = build_reduction(AND)
    w1, w2 = inst.widgets
    hist = [w1.a1]
    hist.append(staller_policy_lemma2(inst, hist))
    assert hist[-1] == w1.b1
    # Dominator closes W_X1 on the third move: Staller sets X2 FALSE by opening W_X2
    hist.append(w1.a2)
    hist.append(staller_policy_lemma2(inst, hist))
    assert hist[-1] == w2.b1
    # a1 as the second move of a FALSE widget is answered by y, forcing a fourth move
    hist.append(w2.a1)
    assert staller_policy_lemma2(inst, hist) == w2.y


def test_preconditions():
    with pytest.raises(PolicyError):
        Lemma1Dominator(build_reduction(AND))
    with pytest.raises(PolicyError):
        Lemma2Staller(build_reduction(OR))
    with pytest.raises(PolicyError):
        dominator_policy_lemma1(build_reduction(OR), [0])  # Staller to move


def test_history_must_follow_policy():
    inst = build_reduction(OR)
    with pytest.raises(PolicyError):
        dominator_policy_lemma1(inst, [inst.widgets[1].z, inst.widgets[0].b1])


def test_effective_winner_on_full_instances():
    assert effective_winner(build_full_reduction(OR)) is CnfPlayer.ONE
    assert effective_winner(build_full_reduction(AND)) is CnfPlayer.TWO


def test_rollout_examples():
    inst = build_reduction(OR)
    assert adversarial_rollout(inst, Lemma1Dominator(inst), D) <= 8
    inst = build_reduction(AND)
    assert adversarial_rollout(inst, Lemma2Staller(inst), S) >= 9


def test_policy_side_mismatch():
    inst = build_reduction(OR)
    with pytest.raises(PolicyError):
        adversarial_rollout(inst, Lemma1Dominator(inst), S)


def test_certify_full_player_one():
    inst = build_full_reduction(OR)
    bound, ok = certify(inst, CnfPlayer.ONE)
    assert ok and bound.startswith("≤")


def _random_games(inst, policy, rng, games):
    closed = inst.graph.closed_masks
    for _ in range(games):
        d = inst.predominated.mask
        st = policy.initial()
        player = D
        while d != inst.graph.full_mask:
            if player is policy.side:
                v, st = policy.choose(st, d)
                assert closed[v] & ~d, "policy emitted an illegal move"
            else:
                v = rng.choice([u for u, nb in enumerate(closed) if nb & ~d])
                st = policy.observe(st, d, v)
            d |= closed[v]
            player = player.other
            assert st.true_mask & st.false_mask == 0
            yield st


@pytest.mark.parametrize("f", [f for f in k2_corpus()][:8], ids=str)
def test_random_playouts_keep_invariants(f):
    inst = build_reduction(f)
    policy = Lemma1Dominator(inst) if effective_winner(inst) is CnfPlayer.ONE else Lemma2Staller(inst)
    rng = random.Random(str(f))
    for st in _random_games(inst, policy, rng, 40):
        if policy.side is D:
            # the Dominator strategy keeps every widget at three moves or fewer
            assert all(c <= 3 for c in st.counts)
        assert all(0 <= c <= 9 for c in st.counts)


@pytest.mark.parametrize("f", k2_corpus(), ids=str)
def test_rollout_meets_matches_exact_rollout(f):
    inst = build_reduction(f)
    if effective_winner(inst) is CnfPlayer.ONE:
        b = adversarial_rollout(inst, Lemma1Dominator(inst), D)
        assert rollout_meets(inst, Lemma1Dominator(inst), D, b)
        assert not rollout_meets(inst, Lemma1Dominator(inst), D, b - 1)
    else:
        b = adversarial_rollout(inst, Lemma2Staller(inst), S)
        assert rollout_meets(inst, Lemma2Staller(inst), S, b)
        assert not rollout_meets(inst, Lemma2Staller(inst), S, b + 1)


def test_certify_full_player_two():
    bound, ok = certify(build_full_reduction(AND), CnfPlayer.TWO)
    assert ok and bound == "≥ 13"
