import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from domgame.poscnf import (
    AssignmentState,
    CnfPlayer,
    Formula,
    FormulaError,
    FormulaParseError,
    evaluate,
    parse_formula,
    poscnf_best_moves,
    poscnf_winner,
    reference_winner,
    winner_from,
    write_formula,
)

ONE, TWO = CnfPlayer.ONE, CnfPlayer.TWO


@st.composite
def formulas(draw, k_max=5, n_max=4):
    k = draw(st.integers(1, k_max))
    clause = st.frozensets(st.integers(0, k - 1), min_size=1)
    return Formula(k, tuple(draw(st.lists(clause, min_size=1, max_size=n_max))))


def test_small_winners():
    assert poscnf_winner(Formula.from_lists(2, [[1, 2]])) is ONE
    assert poscnf_winner(Formula.from_lists(2, [[1], [2]])) is TWO
    assert poscnf_winner(Formula.from_lists(1, [[1]])) is ONE
    assert poscnf_winner(Formula.from_lists(4, [[1], [2, 3], [3, 4]])) is TWO


def test_best_moves():
    f = Formula.from_lists(2, [[1, 2]])
    assert poscnf_best_moves(f, AssignmentState()) == {0, 1}
    f = Formula.from_lists(3, [[1], [2, 3]])
    assert poscnf_best_moves(f, AssignmentState()) == {0}
    with pytest.raises(FormulaError):
        poscnf_best_moves(Formula.from_lists(1, [[1]]), AssignmentState({0}))


def test_explicit_mover():
    f = Formula.from_lists(2, [[1], [2]])
    # Player 2 to move can always cut one of the unit clauses
    assert winner_from(f, AssignmentState(), TWO) is TWO
    assert winner_from(Formula.from_lists(2, [[1, 2]]), AssignmentState(), TWO) is ONE


def test_evaluate_needs_complete_assignment():
    f = Formula.from_lists(2, [[1], [2]])
    assert evaluate(f, AssignmentState({0, 1}, ()))
    assert not evaluate(f, AssignmentState({0}, {1}))
    with pytest.raises(FormulaError):
        evaluate(f, AssignmentState({0}, ()))


def test_assignment_state():
    a = AssignmentState()
    assert a.mover is ONE
    a = a.play(1)
    assert a.mover is TWO and a.set_true == {1}
    with pytest.raises(FormulaError):
        a.play(1)
    with pytest.raises(FormulaError):
        AssignmentState({0}, {0})


def test_formula_validation():
    with pytest.raises(FormulaError):
        Formula(2, (frozenset(),))
    with pytest.raises(FormulaError):
        Formula(2, (frozenset({2}),))
    with pytest.raises(FormulaError):
        Formula(0, ())


def test_str_and_names():
    f = Formula.from_lists(3, [[1], [2, 3]])
    assert str(f) == "X1 & (X2 v X3)"
    assert str(ONE) == "Player 1"


@pytest.mark.parametrize("text,line", [
    ("1 0\n", 1),
    ("p poscnf 2 1\n1 3 0\n", 2),
    ("p poscnf 2 1\n1 2\n", 2),
    ("p poscnf 2 1\n0\n", 2),
    ("p poscnf 2 1\np poscnf 2 1\n", 2),
    ("p cnf 2 1\n1 0\n", 1),
])
def test_parse_errors_carry_line(text, line):
    with pytest.raises(FormulaParseError) as exc:
        parse_formula(text)
    assert exc.value.lineno == line


def test_parse_count_mismatch():
    with pytest.raises(FormulaParseError):
        parse_formula("p poscnf 2 2\n1 0\n")


@settings(max_examples=80, deadline=None)
@given(formulas())
def test_roundtrip_file_format(f):
    assert parse_formula(write_formula(f)) == f


@settings(max_examples=150, deadline=None)
@given(formulas())
def test_cached_solver_matches_full_tree(f):
    assert poscnf_winner(f) is reference_winner(f)


@settings(max_examples=80, deadline=None)
@given(formulas())
def test_best_moves_preserve_outcome(f):
    a = AssignmentState()
    w = poscnf_winner(f)
    for x in poscnf_best_moves(f, a):
        assert winner_from(f, a.play(x)) is w


@settings(max_examples=80, deadline=None)
@given(formulas())
def test_adding_a_clause_never_helps_player_one(f):
    extra = Formula(f.k, f.clauses + (frozenset({0}),))
    if poscnf_winner(extra) is ONE:
        assert poscnf_winner(f) is ONE
