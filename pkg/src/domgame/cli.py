"""Command-line front end.

Exit codes: 0 success, 1 failed check or inconsistent roundtrip, 2 usage
or parse error, 3 node budget exceeded.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Callable, TextIO

from .checks import check_corollary, check_observation1, check_observation2, check_theorem_claim
from .engine import BudgetExceeded, GameError, Player, Solver
from .graph import GraphError, PartiallyDominatedGraph, iter_bits, parse_graph, write_graph
from .poscnf import FormulaError, parse_formula
from .reduction import build_full_reduction, build_reduction, build_staller_start_instance

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

# roundtrips on more padded variables than this need --slow
SLOW_K = 2


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load_graph(path: str) -> PartiallyDominatedGraph:
    try:
        return parse_graph(_read(path))
    except GraphError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _load_formula(path: str):
    try:
        return parse_formula(_read(path))
    except FormulaError as exc:
        raise UsageError(f"{path}: {exc}") from None


def cmd_solve(args, out: TextIO) -> int:
    pd = _load_graph(args.file)
    to_move = Player.STALLER if args.staller_start else Player.DOMINATOR
    solver = Solver(pd, budget=args.budget)
    if args.leq is not None:
        if args.leq < 0:
            raise UsageError("--leq needs a nonnegative bound")
        print("true" if solver.leq(pd.dominated, to_move, args.leq) else "false", file=out)
    else:
        print(solver.value(pd.dominated, to_move), file=out)
    if args.show_optimal:
        if pd.dominated.mask == pd.graph.full_mask:
            print("optimal first moves: none (already dominated)", file=out)
        else:
            best = solver.optimal_moves(pd.dominated, to_move)
            print("optimal first moves: " + " ".join(pd.graph.label(v) for v in best), file=out)
    return EXIT_OK


def cmd_reduce(args, out: TextIO) -> int:
    f = _load_formula(args.formula)
    if args.full and args.staller_start:
        raise UsageError("--full and --staller-start are mutually exclusive")
    build = build_full_reduction if args.full else (
        build_staller_start_instance if args.staller_start else build_reduction)
    try:
        inst = build(f)
    except (FormulaError, GraphError) as exc:
        raise UsageError(str(exc)) from None
    text = write_graph(inst.pd, comments=inst.header_comments())
    if args.output == "-":
        out.write(text)
    else:
        Path(args.output).write_text(text)
    threshold = inst.threshold if inst.threshold is not None else "empirical"
    print(f"{inst.graph.n} vertices, threshold {threshold} ({inst.graph.m} edges)",
          file=sys.stderr if args.output == "-" else out)
    return EXIT_OK


def cmd_check_gadgets(args, out: TextIO) -> int:
    if args.n_max < 1:
        raise UsageError("--n-max must be at least 1")
    report = check_observation1().extend(check_observation2(args.n_max))
    print(report.render_records() if args.records else report.render_text(), file=out)
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_roundtrip(args, out: TextIO) -> int:
    f = _load_formula(args.formula)
    k = f.k + f.k % 2
    if k > SLOW_K and not args.slow:
        raise UsageError(f"k={k} after padding; pass --slow to run instances this large")
    check = check_theorem_claim if args.full else check_corollary
    try:
        result = check(f, budget=args.budget, fallback=True)
    except FormulaError as exc:
        raise UsageError(str(exc)) from None
    print(result.summary(), file=out)
    return EXIT_OK if result.consistent else EXIT_FAIL


# -- interactive play ----------------------------------------------------------

def _board(pd: PartiallyDominatedGraph, d: int) -> str:
    g = pd.graph
    dom = [g.label(v) for v in iter_bits(d)]
    return f"dominated ({len(dom)}/{g.n}): " + (" ".join(dom) if dom else "-")


def cmd_play(args, out: TextIO, read_line: Callable[[str], str | None] | None = None) -> int:
    pd = _load_graph(args.file)
    g = pd.graph
    human = Player.DOMINATOR if args.as_ == "dominator" else Player.STALLER
    player = Player.STALLER if args.staller_start else Player.DOMINATOR
    solver = Solver(pd, budget=args.budget)
    if read_line is None:
        def read_line(prompt):
            try:
                return input(prompt)
            except EOFError:
                return None
    d = pd.dominated.mask
    moves = 0
    while d != g.full_mask:
        print(_board(pd, d), file=out)
        if player is human:
            line = read_line(f"{player} move> ")
            if line is None:
                print("input closed, game abandoned", file=out)
                return EXIT_USAGE
            name = line.strip()
            if not name:
                continue
            try:
                v = g.vertex(name)
            except (GraphError, ValueError):
                print(f"no vertex named {name!r}", file=out)
                continue
            if not g.closed_masks[v] & ~d:
                print(f"illegal: every vertex of N[{g.label(v)}] is already dominated", file=out)
                continue
        else:
            v = next(iter(solver.optimal_moves(d, player)))
            print(f"{player} plays {g.label(v)}", file=out)
        d |= g.closed_masks[v]
        moves += 1
        player = player.other
    print(f"game over: {moves} moves", file=out)
    return EXIT_OK


# -- entry point -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="domgame", description="Domination game solver and reduction tools.")
    p.add_argument("--budget", type=int, default=None, metavar="N",
                   help="abort (exit 3) after N search-node expansions")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="game value of a graph file")
    s.add_argument("file")
    s.add_argument("--staller-start", action="store_true")
    s.add_argument("--leq", type=int, metavar="M", help="only decide whether the value is at most M")
    s.add_argument("--show-optimal", action="store_true", help="list the optimal first moves")
    s.set_defaults(func=cmd_solve)

    r = sub.add_parser("reduce", help="build the reduction graph of a formula")
    r.add_argument("formula")
    r.add_argument("--full", action="store_true", help="variant without pre-dominated vertices")
    r.add_argument("--staller-start", action="store_true", help="variant for the Staller-start game")
    r.add_argument("-o", "--output", required=True, help="output graph file, '-' for stdout")
    r.set_defaults(func=cmd_reduce)

    c = sub.add_parser("check-gadgets", help="verify the widget and clause-gadget claims")
    c.add_argument("--n-max", type=int, default=4)
    c.add_argument("--records", action="store_true", help="JSON lines instead of text")
    c.set_defaults(func=cmd_check_gadgets)

    t = sub.add_parser("roundtrip", help="compare the formula winner with the game value")
    t.add_argument("formula")
    t.add_argument("--full", action="store_true")
    t.add_argument("--slow", action="store_true", help="allow instances with more than two variables")
    t.set_defaults(func=cmd_roundtrip)

    y = sub.add_parser("play", help="play against the engine")
    y.add_argument("file")
    y.add_argument("--as", dest="as_", choices=("dominator", "staller"), required=True)
    y.add_argument("--staller-start", action="store_true")
    y.set_defaults(func=cmd_play)
    return p


def main(argv: list[str] | None = None, out: TextIO | None = None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"domgame: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"domgame: node budget exceeded after {exc.nodes} expansions", file=sys.stderr)
        return EXIT_BUDGET
    except GameError as exc:
        print(f"domgame: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
