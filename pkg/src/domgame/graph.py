"""Graphs with precomputed closed neighborhoods, partially-dominated graphs
and the line-oriented ``p dg`` file format.

Vertices are dense 0-based indices.  Vertex sets are stored as integer
bitmasks (bit ``v`` set iff ``v`` is a member), which gives constant-time
membership and cheap union/subset tests for any capacity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence


class GraphError(ValueError):
    """Invalid graph construction or vertex reference."""


class GraphParseError(GraphError):
    """Malformed graph file; ``lineno`` is 1-based (0 when not line-specific)."""

    def __init__(self, message: str, lineno: int = 0):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}" if lineno else message)


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class VertexSet:
    """Immutable set of vertex indices in ``[0, capacity)``."""

    __slots__ = ("capacity", "mask")

    def __init__(self, capacity: int, mask: int = 0):
        if capacity < 0:
            raise GraphError("capacity must be nonnegative")
        if mask < 0 or mask >> capacity:
            raise GraphError(f"vertex set {mask:#x} exceeds capacity {capacity}")
        self.capacity = capacity
        self.mask = mask

    @classmethod
    def of(cls, capacity: int, vertices: Iterable[int] = ()) -> VertexSet:
        m = 0
        for v in vertices:
            if not 0 <= v < capacity:
                raise GraphError(f"vertex {v} out of range [0, {capacity})")
            m |= 1 << v
        return cls(capacity, m)

    @classmethod
    def full(cls, capacity: int) -> VertexSet:
        return cls(capacity, (1 << capacity) - 1)

    def _coerce(self, other: VertexSet) -> int:
        if not isinstance(other, VertexSet):
            return NotImplemented
        if other.capacity != self.capacity:
            raise GraphError("vertex sets have different capacities")
        return other.mask

    def __contains__(self, v: object) -> bool:
        return isinstance(v, int) and 0 <= v < self.capacity and bool(self.mask >> v & 1)

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.mask)

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __bool__(self) -> bool:
        return self.mask != 0

    def __or__(self, other: VertexSet) -> VertexSet:
        return VertexSet(self.capacity, self.mask | self._coerce(other))

    def __and__(self, other: VertexSet) -> VertexSet:
        return VertexSet(self.capacity, self.mask & self._coerce(other))

    def __sub__(self, other: VertexSet) -> VertexSet:
        return VertexSet(self.capacity, self.mask & ~self._coerce(other))

    def __le__(self, other: VertexSet) -> bool:
        return self.mask & ~self._coerce(other) == 0

    def __lt__(self, other: VertexSet) -> bool:
        return self <= other and self.mask != other.mask

    def __ge__(self, other: VertexSet) -> bool:
        return other <= self

    def __gt__(self, other: VertexSet) -> bool:
        return other < self

    def __eq__(self, other: object) -> bool:
        if isinstance(other, VertexSet):
            return self.capacity == other.capacity and self.mask == other.mask
        if isinstance(other, (set, frozenset)):
            return set(self) == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.capacity, self.mask))

    def issubset(self, other: VertexSet) -> bool:
        return self <= other

    def add(self, v: int) -> VertexSet:
        return VertexSet.of(self.capacity, [v]) | self

    def complement(self) -> VertexSet:
        return VertexSet(self.capacity, ((1 << self.capacity) - 1) & ~self.mask)

    def __repr__(self) -> str:
        return f"VertexSet({self.capacity}, {sorted(self)})"


class Graph:
    """Simple undirected graph on vertices ``0..n-1``; immutable.

    ``labels`` is optional metadata; when given it must name every vertex
    uniquely.
    """

    __slots__ = ("n", "_adj", "_closed", "labels", "_index", "_edges")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]], labels: Sequence[str] | None = None):
        if n < 0:
            raise GraphError("vertex count must be nonnegative")
        adj = [0] * n
        edge_list = []
        for u, v in edges:
            for w in (u, v):
                if not 0 <= w < n:
                    raise GraphError(f"vertex {w} out of range [0, {n})")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if adj[u] >> v & 1:
                raise GraphError(f"duplicate edge {u}-{v}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
            edge_list.append((min(u, v), max(u, v)))
        self.n = n
        self._adj = tuple(adj)
        self._closed = tuple(adj[v] | 1 << v for v in range(n))
        self._edges = tuple(sorted(edge_list))
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != n:
                raise GraphError(f"expected {n} labels, got {len(labels)}")
            for name in labels:
                if not isinstance(name, str) or not name or any(ch.isspace() for ch in name):
                    raise GraphError(f"invalid label {name!r}")
            index = {name: i for i, name in enumerate(labels)}
            if len(index) != n:
                raise GraphError("labels are not unique")
            self._index = index
        else:
            self._index = None
        self.labels = labels

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return self._edges

    @property
    def m(self) -> int:
        return len(self._edges)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def closed_masks(self) -> tuple[int, ...]:
        """Closed neighborhoods as bitmasks, indexed by vertex."""
        return self._closed

    def _check(self, v: int) -> None:
        if not isinstance(v, int) or not 0 <= v < self.n:
            raise GraphError(f"vertex {v!r} out of range [0, {self.n})")

    def neighbors(self, v: int) -> VertexSet:
        self._check(v)
        return VertexSet(self.n, self._adj[v])

    def degree(self, v: int) -> int:
        self._check(v)
        return bin(self._adj[v]).count("1")

    def adjacent(self, u: int, v: int) -> bool:
        self._check(u)
        self._check(v)
        return bool(self._adj[u] >> v & 1)

    def label(self, v: int) -> str:
        self._check(v)
        return self.labels[v] if self.labels is not None else str(v)

    def vertex(self, name: str | int) -> int:
        """Resolve a label (or a plain integer / decimal string) to an index."""
        if isinstance(name, int):
            self._check(name)
            return name
        if self._index is not None and name in self._index:
            return self._index[name]
        try:
            v = int(name)
        except ValueError:
            raise GraphError(f"unknown vertex {name!r}") from None
        self._check(v)
        return v

    def vertex_set(self, vertices: Iterable[int | str] = ()) -> VertexSet:
        return VertexSet.of(self.n, (self.vertex(v) for v in vertices))

    def induced(self, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
        """Induced subgraph; returns it with the list mapping new -> old ids."""
        old = sorted(set(vertices))
        new_of = {v: i for i, v in enumerate(old)}
        edges = [(new_of[u], new_of[v]) for u, v in self._edges if u in new_of and v in new_of]
        labels = [self.label(v) for v in old] if self.labels is not None else None
        return Graph(len(old), edges, labels), old

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self._edges == other._edges and self.labels == other.labels

    def __hash__(self) -> int:
        return hash((self.n, self._edges, self.labels))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class PartiallyDominatedGraph:
    """A graph together with a set ``dominated`` of vertices that count as
    already dominated.  The set is arbitrary, not necessarily a union of
    closed neighborhoods."""

    graph: Graph
    dominated: VertexSet = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        if self.dominated is None:
            object.__setattr__(self, "dominated", VertexSet(self.graph.n))
        elif self.dominated.capacity != self.graph.n:
            raise GraphError("dominated set capacity does not match the graph")

    @property
    def n(self) -> int:
        return self.graph.n

    def with_dominated(self, dominated: Iterable[int | str] | VertexSet) -> PartiallyDominatedGraph:
        if not isinstance(dominated, VertexSet):
            dominated = self.graph.vertex_set(dominated)
        return PartiallyDominatedGraph(self.graph, dominated)


def closed_neighborhood(g: Graph, v: int) -> VertexSet:
    g._check(v)
    return VertexSet(g.n, g.closed_masks[v])


def closed_neighborhood_of_set(g: Graph, d: Iterable[int]) -> VertexSet:
    m = 0
    for v in d:
        g._check(v)
        m |= g.closed_masks[v]
    return VertexSet(g.n, m)


def is_dominating(g: Graph, d: VertexSet | Iterable[int]) -> bool:
    """True iff the closed neighborhoods of ``d`` cover every vertex."""
    return closed_neighborhood_of_set(g, d).mask == g.full_mask


def legal_moves(g: Graph, dominated: VertexSet) -> VertexSet:
    """Vertices whose closed neighborhood contains an undominated vertex."""
    if dominated.capacity != g.n:
        raise GraphError("dominated set capacity does not match the graph")
    d = dominated.mask
    m = 0
    for v, nb in enumerate(g.closed_masks):
        if nb & ~d:
            m |= 1 << v
    return VertexSet(g.n, m)


# -- file format -----------------------------------------------------------

def parse_graph(text: str) -> PartiallyDominatedGraph:
    """Parse the ``p dg <n> <m>`` format (see README)."""
    n = m = None
    labels: dict[int, str] = {}
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    dominated: list[int] = []

    def vertex(tok: str, lineno: int) -> int:
        try:
            v = int(tok)
        except ValueError:
            raise GraphParseError(f"bad vertex index {tok!r}", lineno) from None
        if not 0 <= v < n:
            raise GraphParseError(f"vertex {v} out of range [0, {n})", lineno)
        return v

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        kind = fields[0]
        if kind == "p":
            if n is not None:
                raise GraphParseError("duplicate header", lineno)
            if len(fields) != 4 or fields[1] != "dg":
                raise GraphParseError("malformed header, expected 'p dg <n> <m>'", lineno)
            try:
                n, m = int(fields[2]), int(fields[3])
            except ValueError:
                raise GraphParseError("malformed header counts", lineno) from None
            if n < 0 or m < 0:
                raise GraphParseError("negative header counts", lineno)
            continue
        if n is None:
            raise GraphParseError("record before header", lineno)
        if kind == "e":
            if len(fields) != 3:
                raise GraphParseError("edge line needs two endpoints", lineno)
            u, v = vertex(fields[1], lineno), vertex(fields[2], lineno)
            if u == v:
                raise GraphParseError(f"self-loop at vertex {u}", lineno)
            key = (min(u, v), max(u, v))
            if key in seen:
                raise GraphParseError(f"duplicate edge {u}-{v}", lineno)
            seen.add(key)
            edges.append((u, v))
        elif kind == "l":
            if len(fields) != 3:
                raise GraphParseError("label line needs an index and a name", lineno)
            v = vertex(fields[1], lineno)
            if v in labels:
                raise GraphParseError(f"vertex {v} labelled twice", lineno)
            labels[v] = fields[2]
        elif kind == "d":
            if len(fields) != 2:
                raise GraphParseError("dominated line needs one vertex", lineno)
            dominated.append(vertex(fields[1], lineno))
        else:
            raise GraphParseError(f"unknown record type {kind!r}", lineno)

    if n is None:
        raise GraphParseError("missing header")
    if len(edges) != m:
        raise GraphParseError(f"header declares {m} edges, found {len(edges)}")
    label_seq = None
    if labels:
        if len(labels) != n:
            raise GraphParseError(f"labels given for {len(labels)} of {n} vertices")
        label_seq = [labels[i] for i in range(n)]
        if len(set(label_seq)) != n:
            raise GraphParseError("labels are not unique")
    g = Graph(n, edges, label_seq)
    return PartiallyDominatedGraph(g, VertexSet.of(n, dominated))


def write_graph(pd: PartiallyDominatedGraph, comments: Iterable[str] = ()) -> str:
    g = pd.graph
    lines = [f"# {c}" for c in comments]
    lines.append(f"p dg {g.n} {g.m}")
    if g.labels is not None:
        lines.extend(f"l {i} {name}" for i, name in enumerate(g.labels))
    lines.extend(f"e {u} {v}" for u, v in g.edges)
    lines.extend(f"d {v}" for v in pd.dominated)
    return "\n".join(lines) + "\n"
