"""Graph constructions for the POS-CNF reduction.

Vertex ids are laid out deterministically: nine ids per variable widget
in the order a1, a2, b1, b2, x, x', y, y', z; then the clause vertices
c1..cn; then the path p1..p4; then, for the full reduction, the star
center v and its leaves.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .graph import Graph, GraphError, PartiallyDominatedGraph, VertexSet
from .poscnf import Formula, FormulaError

WIDGET_NAMES = ("a1", "a2", "b1", "b2", "x", "x'", "y", "y'", "z")


def _widget_edges() -> list[tuple[int, int]]:
    a1, a2, b1, b2, x, xp, y, yp, z = range(9)
    cocktail = [a2, x, xp, y, yp, z]
    missing = {frozenset((a2, z)), frozenset((x, xp)), frozenset((y, yp))}
    edges = [(u, v) for u, v in combinations(cocktail, 2) if frozenset((u, v)) not in missing]
    edges += [(b1, a1), (a1, b2)]
    edges += [(b1, x), (b1, xp), (b2, y), (b2, yp), (a1, z)]
    return edges


WIDGET_EDGES = tuple(_widget_edges())


@dataclass(frozen=True)
class WidgetLayout:
    a1: int
    a2: int
    b1: int
    b2: int
    x: int
    xp: int
    y: int
    yp: int
    z: int

    @classmethod
    def at(cls, offset: int) -> WidgetLayout:
        return cls(*range(offset, offset + 9))

    @property
    def vertices(self) -> tuple[int, ...]:
        return (self.a1, self.a2, self.b1, self.b2, self.x, self.xp, self.y, self.yp, self.z)

    @property
    def mask(self) -> int:
        return sum(1 << v for v in self.vertices)

    @property
    def a_vertices(self) -> tuple[int, int]:
        return (self.a1, self.a2)

    def name_of(self, v: int) -> str:
        return WIDGET_NAMES[self.vertices.index(v)]

    def __getitem__(self, name: str) -> int:
        return self.vertices[WIDGET_NAMES.index(name)]


@dataclass(frozen=True)
class ReductionInstance:
    graph: Graph
    predominated: VertexSet
    formula: Formula
    variable_names: tuple[str, ...]
    widgets: tuple[WidgetLayout, ...]
    clause_vertices: tuple[int, ...]
    path_vertices: tuple[int, int, int, int]
    star: tuple[int, tuple[int, int, int]] | None
    threshold: int | None
    kind: str = "partial"
    source: Formula | None = None

    @property
    def pd(self) -> PartiallyDominatedGraph:
        return PartiallyDominatedGraph(self.graph, self.predominated)

    @property
    def k(self) -> int:
        """Variable count the threshold refers to (padded, without X0)."""
        return self.formula.k - (1 if self.kind in ("full", "staller-start") else 0)

    @property
    def a_mask(self) -> int:
        return sum((1 << w.a1) | (1 << w.a2) for w in self.widgets)

    @property
    def clause_mask(self) -> int:
        return sum(1 << c for c in self.clause_vertices)

    @property
    def path_mask(self) -> int:
        return sum(1 << p for p in self.path_vertices)

    @property
    def qp_mask(self) -> int:
        return self.clause_mask | self.path_mask

    def widget_of(self, v: int) -> int | None:
        """Index of the widget containing ``v``, or None."""
        if v < 9 * len(self.widgets):
            return v // 9
        return None

    def header_comments(self) -> list[str]:
        lines = [f"{self.kind} reduction of {self.source or self.formula}",
                 f"k={self.k} n={self.formula.n} vertices={self.graph.n} edges={self.graph.m}"]
        lines.append(f"threshold={self.threshold}" if self.threshold is not None else "threshold=empirical")
        return lines


def build_widget() -> tuple[PartiallyDominatedGraph, WidgetLayout]:
    """The 9-vertex variable widget with a1, a2 pre-dominated."""
    g = Graph(9, WIDGET_EDGES, WIDGET_NAMES)
    layout = WidgetLayout.at(0)
    return PartiallyDominatedGraph(g, VertexSet.of(9, layout.a_vertices)), layout


def clause_gadget_graph(n: int) -> Graph:
    """Clique c1..cn plus the path p1p2p3p4, p1 and p4 joined to every ci."""
    if n < 1:
        raise GraphError("clause gadget needs n >= 1")
    c = list(range(n))
    p1, p2, p3, p4 = range(n, n + 4)
    edges = list(combinations(c, 2)) + [(p1, p2), (p2, p3), (p3, p4)]
    edges += [(p1, ci) for ci in c] + [(p4, ci) for ci in c]
    labels = [f"c{i + 1}" for i in c] + ["p1", "p2", "p3", "p4"]
    return Graph(n + 4, edges, labels)


def build_clause_gadget(n: int, dominated: Iterable[int | str] = ()) -> PartiallyDominatedGraph:
    """Clause gadget with the given clause vertices (ids ``0..n-1`` or labels
    ``c1..cn``) pre-dominated."""
    g = clause_gadget_graph(n)
    s = g.vertex_set(dominated)
    if s.mask >> n:
        raise GraphError("only clause vertices may be pre-dominated in the clause gadget")
    return PartiallyDominatedGraph(g, s)


def pad_even(f: Formula) -> Formula:
    """Append an unused variable when ``k`` is odd."""
    if f.k % 2 == 0:
        return f
    return Formula(f.k + 1, f.clauses)


def _build(f: Formula, names: list[str], *, dominate_a: bool, star: bool) -> tuple:
    if f.n == 0:
        raise FormulaError("the reduction needs at least one clause")
    k, n = f.k, f.n
    widgets = tuple(WidgetLayout.at(9 * i) for i in range(k))
    clause_vs = tuple(range(9 * k, 9 * k + n))
    path_vs = tuple(range(9 * k + n, 9 * k + n + 4))
    labels = [f"{w}.{names[i]}" for i in range(k) for w in WIDGET_NAMES]
    labels += [f"c{i + 1}" for i in range(n)] + ["p1", "p2", "p3", "p4"]

    edges = []
    for wl in widgets:
        base = wl.a1
        edges += [(base + u, base + v) for u, v in WIDGET_EDGES]
    for ci, clause in zip(clause_vs, f.clauses):
        for x in sorted(clause):
            edges += [(ci, widgets[x].a1), (ci, widgets[x].a2)]
    edges += list(combinations(clause_vs, 2))
    p1, p2, p3, p4 = path_vs
    edges += [(p1, p2), (p2, p3), (p3, p4)]
    edges += [(p1, ci) for ci in clause_vs] + [(p4, ci) for ci in clause_vs]

    nv = 9 * k + n + 4
    star_info = None
    if star:
        v = nv
        leaves = (nv + 1, nv + 2, nv + 3)
        labels += ["v", "leaf1", "leaf2", "leaf3"]
        edges += [(v, leaf) for leaf in leaves]
        for wl in widgets:
            edges += [(v, wl.a1), (v, wl.a2)]
        star_info = (v, leaves)
        nv += 4

    g = Graph(nv, edges, labels)
    a = [u for wl in widgets for u in wl.a_vertices]
    pre = VertexSet.of(nv, a if dominate_a else ())
    return g, pre, widgets, clause_vs, path_vs, star_info


def build_reduction(f: Formula) -> ReductionInstance:
    """The partially-dominated graph G_F|A with threshold 3k+2 (k padded)."""
    fp = pad_even(f)
    names = [fp.variable_name(x) for x in range(fp.k)]
    g, pre, widgets, cs, ps, _ = _build(fp, names, dominate_a=True, star=False)
    return ReductionInstance(g, pre, fp, tuple(names), widgets, cs, ps, None,
                             3 * fp.k + 2, "partial", f)


def add_x0(f: Formula) -> Formula:
    """Prepend a fresh variable (index 0) to every clause; others shift by one."""
    return Formula(f.k + 1, tuple(frozenset({0} | {x + 1 for x in c}) for c in f.clauses))


def build_full_reduction(f: Formula) -> ReductionInstance:
    """G'_F: no pre-dominated vertices, threshold 3k+6.

    The formula is padded to even k first, then X0 is added to every clause;
    A is left undominated and a star K_{1,3} whose center sees all of A is
    attached.
    """
    fp = pad_even(f)
    f0 = add_x0(fp)
    names = ["X0"] + [fp.variable_name(x) for x in range(fp.k)]
    g, pre, widgets, cs, ps, star = _build(f0, names, dominate_a=False, star=True)
    return ReductionInstance(g, pre, f0, tuple(names), widgets, cs, ps, star,
                             3 * fp.k + 6, "full", f)


def build_staller_start_instance(f: Formula) -> ReductionInstance:
    """G_{F'}|A for the Staller-start game; its threshold is not fixed here
    (see :func:`domgame.checks.staller_start_sweep`)."""
    fp = pad_even(f)
    f0 = add_x0(fp)
    names = ["X0"] + [fp.variable_name(x) for x in range(fp.k)]
    g, pre, widgets, cs, ps, _ = _build(f0, names, dominate_a=True, star=False)
    return ReductionInstance(g, pre, f0, tuple(names), widgets, cs, ps, None,
                             None, "staller-start", f)
