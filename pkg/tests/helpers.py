"""Random graph generators shared by the test modules."""

import random

from hypothesis import strategies as st

from domgame.graph import Graph, PartiallyDominatedGraph


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph(n, edges)


def random_partial(rng: random.Random, n_max: int) -> PartiallyDominatedGraph:
    n = rng.randint(1, n_max)
    g = random_graph(rng, n, rng.uniform(0.1, 0.7))
    dom = [v for v in range(n) if rng.random() < 0.3]
    return PartiallyDominatedGraph(g, g.vertex_set(dom))


@st.composite
def partial_graphs(draw, min_n=1, max_n=8):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    g = Graph(n, edges)
    dom = draw(st.lists(st.integers(0, n - 1), unique=True))
    return PartiallyDominatedGraph(g, g.vertex_set(dom))
