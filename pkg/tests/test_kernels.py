import random

import pytest

from domgame import _kernel
from domgame._search import Searcher as PySearcher
from domgame.reduction import build_reduction
from domgame.poscnf import Formula

from helpers import random_partial

cython = pytest.mark.skipif(_kernel.CSearcher is None, reason="compiled kernel not built")


def searchers(pd, **kw):
    g = pd.graph
    return PySearcher(g.closed_masks, g.n, **kw), _kernel.CSearcher(g.closed_masks, g.n, **kw)


@cython
def test_backends_agree_on_random_graphs():
    rng = random.Random(11)
    for _ in range(150):
        pd = random_partial(rng, 12)
        py, c = searchers(pd)
        d = pd.dominated.mask
        for dom in (True, False):
            assert py.value(d, dom) == c.value(d, dom)


@cython
def test_backends_agree_on_leq_and_depth():
    rng = random.Random(12)
    for _ in range(40):
        pd = random_partial(rng, 10)
        d = pd.dominated.mask
        for m in range(pd.graph.n + 1):
            py, c = searchers(pd)
            assert py.leq(d, True, m) == c.leq(d, True, m)
            assert c.max_depth <= m - 1 and py.max_depth <= m - 1


@cython
def test_backends_agree_beyond_64_vertices():
    inst = build_reduction(Formula.from_lists(2, [[1, 2]]))
    g = inst.graph
    py, c = searchers(inst.pd)
    assert py.value(inst.predominated.mask, True) == c.value(inst.predominated.mask, True) == 8
    # pad with dominated isolated vertices so the instance straddles both 64-bit words
    n = 70
    shift = n - g.n
    closed = [0] * shift + [m << shift for m in g.closed_masks]
    closed = [(1 << v) if v < shift else closed[v] for v in range(n)]
    pre = ((1 << shift) - 1) | (inst.predominated.mask << shift)
    c2 = _kernel.CSearcher(closed, n)
    assert c2.value(pre, True) == 8


@cython
def test_compiled_budget_and_children():
    pd = build_reduction(Formula.from_lists(2, [[1], [2]])).pd
    py, c = searchers(pd)
    d = pd.dominated.mask
    assert sorted(py.children(d, True)) == sorted(c.children(d, True))
    from domgame._search import BudgetExceeded
    small = _kernel.CSearcher(pd.graph.closed_masks, pd.graph.n, budget=3)
    with pytest.raises(BudgetExceeded):
        small.value(d, True)


def test_make_searcher_falls_back_for_large_graphs():
    closed = [1 << v for v in range(130)]
    s = _kernel.make_searcher(closed, 130)
    assert s.backend == "python"
    assert s.value((1 << 130) - 2, True) == 1
