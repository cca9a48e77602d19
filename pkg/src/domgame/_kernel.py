"""Select the search kernel at import time.

The compiled ``_csearch`` extension is used when it imports and the graph
fits its 128-bit state words; otherwise the pure-Python kernel is used.
Set ``DOMGAME_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _search
from ._search import BudgetExceeded

PySearcher = _search.Searcher

CSearcher = None
if not os.environ.get("DOMGAME_PURE_PYTHON"):
    try:
        from ._csearch import Searcher as CSearcher  # type: ignore[no-redef]
    except ImportError:  # extension not built
        CSearcher = None

BACKEND = "cython" if CSearcher is not None else "python"
C_MAX_VERTICES = 128


def make_searcher(closed, n: int, budget: int | None = None, prune: bool = True, backend: str | None = None):
    backend = backend or BACKEND
    if backend == "cython":
        if CSearcher is None:
            raise RuntimeError("compiled kernel requested but _csearch is not built")
        if n <= C_MAX_VERTICES:
            return CSearcher(closed, n, budget, prune)
        backend = "python"
    if backend != "python":
        raise ValueError(f"unknown backend {backend!r}")
    return PySearcher(closed, n, budget, prune)


__all__ = ["BACKEND", "BudgetExceeded", "CSearcher", "PySearcher", "make_searcher"]
