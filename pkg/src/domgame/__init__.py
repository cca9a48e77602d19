"""Exact solver for the domination game and verifiers for the POS-CNF
reduction gadgets."""

from ._kernel import BACKEND
from .engine import (
    PASS,
    BudgetExceeded,
    GameError,
    Player,
    Solver,
    decide_leq,
    game_value,
    gamma_g,
    gamma_g_prime,
    optimal_moves,
    value_after_prefix,
)
from .graph import (
    Graph,
    PartiallyDominatedGraph,
    VertexSet,
    closed_neighborhood,
    is_dominating,
    legal_moves,
    parse_graph,
    write_graph,
)
from .poscnf import CnfPlayer, Formula, parse_formula, poscnf_winner, write_formula

__version__ = "0.1.0"
