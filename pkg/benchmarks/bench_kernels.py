"""Compare the compiled and pure-Python search kernels.

    python benchmarks/bench_kernels.py [--quick]

Each case is solved from a fresh searcher by both backends; the values
must agree and the timings are printed side by side.
"""

from __future__ import annotations

import argparse
import random
import time

from domgame import _kernel
from domgame.checks import FIG2_FORMULA
from domgame.graph import Graph, PartiallyDominatedGraph, VertexSet
from domgame.poscnf import Formula
from domgame.reduction import build_full_reduction, build_reduction, build_widget


def cases(quick: bool):
    yield "widget", build_widget()[0]
    rng = random.Random(3)
    for n in (12, 16):
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.25]
        g = Graph(n, edges)
        yield f"G(n={n}, p=.25)", PartiallyDominatedGraph(g, VertexSet.of(n, ()))
    yield "G_F|A, X1 & X2", build_reduction(Formula.from_lists(2, [[1], [2]])).pd
    yield "G_F|A, (X1 v X2)", build_reduction(Formula.from_lists(2, [[1, 2]])).pd
    if not quick:
        yield "G'_F, (X1 v X2)", build_full_reduction(Formula.from_lists(2, [[1, 2]])).pd
        yield "G_F|A, k=4 (C only)", build_reduction(FIG2_FORMULA).pd


def solve(backend: str, pd):
    g = pd.graph
    cls = _kernel.CSearcher if backend == "cython" else _kernel.PySearcher
    s = cls(g.closed_masks, g.n)
    t = time.perf_counter()
    value = s.value(pd.dominated.mask, True)
    return value, time.perf_counter() - t, s.nodes


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--quick", action="store_true", help="skip the 36- and 43-vertex cases")
    args = ap.parse_args()
    if _kernel.CSearcher is None:
        raise SystemExit("compiled kernel not built; run pip install -e . first")
    print(f"{'case':<24} {'n':>3} {'value':>5} {'cython s':>9} {'python s':>9} {'speedup':>8} {'nodes':>9}")
    for name, pd in cases(args.quick):
        cv, ct, nodes = solve("cython", pd)
        if "C only" in name:
            print(f"{name:<24} {pd.graph.n:>3} {cv:>5} {ct:>9.3f} {'-':>9} {'-':>8} {nodes:>9}")
            continue
        pv, pt, _ = solve("python", pd)
        assert cv == pv, f"{name}: backends disagree ({cv} vs {pv})"
        print(f"{name:<24} {pd.graph.n:>3} {cv:>5} {ct:>9.3f} {pt:>9.3f} {pt / max(ct, 1e-9):>7.0f}x {nodes:>9}")


if __name__ == "__main__":
    main()
