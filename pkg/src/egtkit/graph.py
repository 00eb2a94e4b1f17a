"""Simple undirected graphs on at most 64 vertices, stored as bit-vector rows.

Vertex sets and edge sets are plain Python ints used as bit vectors. An
``EdgeSet`` ties such an int to the ``EdgeIndex`` of the graph it addresses.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, NamedTuple

MAX_VERTICES = 64


class CapacityError(ValueError):
    """A graph or derived object would exceed a configured size limit."""


def bits(mask: int) -> Iterator[int]:
    """Yield the positions of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def vertex_set(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


class Triangle(NamedTuple):
    a: int
    b: int
    c: int


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.n <= MAX_VERTICES:
            raise CapacityError(f"vertex count {self.n} outside 0..{MAX_VERTICES}")
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match n")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"vertex {v} has a neighbor >= n")
            if row >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            for u in bits(row):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {v} and {u}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        if not 0 <= n <= MAX_VERTICES:
            raise CapacityError(f"vertex count {n} outside 0..{MAX_VERTICES}")
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @cached_property
    def edge_index(self) -> EdgeIndex:
        return EdgeIndex(self)

    @property
    def m(self) -> int:
        return len(self.edge_index)

    @property
    def vertices(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def min_degree(self) -> int:
        return min((row.bit_count() for row in self.adj), default=0)

    def edges(self) -> list[tuple[int, int]]:
        return list(self.edge_index.edges)

    def remove_edges(self, edges: EdgeSet) -> Graph:
        adj = list(self.adj)
        for u, v in edges.pairs():
            adj[u] &= ~(1 << v)
            adj[v] &= ~(1 << u)
        return Graph(self.n, tuple(adj))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


class EdgeIndex:
    """Lexicographic numbering of the edges of one graph."""

    def __init__(self, g: Graph):
        self.graph = g
        self.edges: tuple[tuple[int, int], ...] = tuple(
            (u, v) for u in range(g.n) for v in bits(g.adj[u] >> (u + 1) << (u + 1))
        )
        self._ids = {e: i for i, e in enumerate(self.edges)}

    def __len__(self):
        return len(self.edges)

    def id(self, u: int, v: int) -> int:
        if u > v:
            u, v = v, u
        try:
            return self._ids[(u, v)]
        except KeyError:
            raise KeyError(f"({u}, {v}) is not an edge") from None

    def pair(self, eid: int) -> tuple[int, int]:
        return self.edges[eid]

    def edge_set(self, pairs: Iterable[tuple[int, int]] = ()) -> EdgeSet:
        mask = 0
        for u, v in pairs:
            mask |= 1 << self.id(u, v)
        return EdgeSet(self, mask)

    def full(self) -> EdgeSet:
        return EdgeSet(self, (1 << len(self.edges)) - 1)

    @cached_property
    def incident(self) -> tuple[int, ...]:
        """Per-vertex bit vector of incident edge ids."""
        inc = [0] * self.graph.n
        for i, (u, v) in enumerate(self.edges):
            inc[u] |= 1 << i
            inc[v] |= 1 << i
        return tuple(inc)


class EdgeSet:
    __slots__ = ("index", "bits")

    def __init__(self, index: EdgeIndex, mask: int = 0):
        if mask >> len(index):
            raise ValueError("edge id beyond the owning index")
        self.index = index
        self.bits = mask

    def _check(self, other: EdgeSet) -> None:
        if other.index is not self.index:
            raise ValueError("edge sets belong to different graphs")

    def __or__(self, other: EdgeSet) -> EdgeSet:
        self._check(other)
        return EdgeSet(self.index, self.bits | other.bits)

    def __and__(self, other: EdgeSet) -> EdgeSet:
        self._check(other)
        return EdgeSet(self.index, self.bits & other.bits)

    def __sub__(self, other: EdgeSet) -> EdgeSet:
        self._check(other)
        return EdgeSet(self.index, self.bits & ~other.bits)

    def __eq__(self, other):
        if not isinstance(other, EdgeSet):
            return NotImplemented
        return self.index is other.index and self.bits == other.bits

    def __hash__(self):
        return hash((id(self.index), self.bits))

    def __len__(self):
        return self.bits.bit_count()

    def __iter__(self) -> Iterator[int]:
        return bits(self.bits)

    def __contains__(self, eid: int) -> bool:
        return bool(self.bits >> eid & 1)

    def pairs(self) -> list[tuple[int, int]]:
        return [self.index.edges[i] for i in bits(self.bits)]

    def __repr__(self):
        return f"EdgeSet({self.pairs()})"


def triangles(g: Graph) -> list[Triangle]:
    out = []
    for a in range(g.n):
        higher = g.adj[a] >> (a + 1) << (a + 1)
        for b in bits(higher):
            for c in bits(higher & g.adj[b] >> (b + 1) << (b + 1)):
                out.append(Triangle(a, b, c))
    return out


def triangle_edge_masks(g: Graph) -> list[int]:
    """Edge-id masks of the triangles, in the order of ``triangles(g)``."""
    idx = g.edge_index
    return [
        (1 << idx.id(a, b)) | (1 << idx.id(a, c)) | (1 << idx.id(b, c))
        for a, b, c in triangles(g)
    ]


def cut_edges(g: Graph, s: int) -> EdgeSet:
    s &= g.vertices
    rest = g.vertices & ~s
    idx = g.edge_index
    mask = 0
    for u in bits(s):
        for v in bits(g.adj[u] & rest):
            mask |= 1 << idx.id(u, v)
    return EdgeSet(idx, mask)


def edges_within(g: Graph, s: int) -> EdgeSet:
    idx = g.edge_index
    mask = 0
    for u in bits(s):
        for v in bits(g.adj[u] & s & ~((2 << u) - 1)):
            mask |= 1 << idx.id(u, v)
    return EdgeSet(idx, mask)


def induced_subgraph(g: Graph, s: int) -> tuple[Graph, list[int]]:
    """Return ``G[S]`` relabeled 0..|S|-1 and the list mapping new labels to old."""
    keep = list(bits(s & g.vertices))
    pos = {v: i for i, v in enumerate(keep)}
    adj = []
    for v in keep:
        row = 0
        for u in bits(g.adj[v] & s):
            row |= 1 << pos[u]
        adj.append(row)
    return Graph(len(keep), tuple(adj)), keep


def lift_edges(sub: EdgeSet, mapping: list[int], g: Graph) -> EdgeSet:
    """Translate an edge set of an induced subgraph into ``g``'s edge index."""
    return g.edge_index.edge_set((mapping[u], mapping[v]) for u, v in sub.pairs())


def join(g1: Graph, g2: Graph) -> Graph:
    n = g1.n + g2.n
    if n > MAX_VERTICES:
        raise CapacityError(f"join would have {n} vertices")
    low = (1 << g1.n) - 1
    high = ((1 << g2.n) - 1) << g1.n
    adj = [row | high for row in g1.adj] + [(row << g1.n) | low for row in g2.adj]
    return Graph(n, tuple(adj))


def empty(n: int) -> Graph:
    return Graph.from_edges(n, ())


def complete(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(n), 2))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, ((u, a + v) for u in range(a) for v in range(b)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def path(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def k4_minus() -> Graph:
    return Graph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])


def sharpness_family(rs: Iterable[int]) -> Graph:
    """Iterated join of complete bipartite blocks ``K_{r,r}``."""
    rs = list(rs)
    if any(r < 1 for r in rs):
        raise ValueError("block sizes must be positive")
    if 2 * sum(rs) > MAX_VERTICES:
        raise CapacityError(f"family graph would have {2 * sum(rs)} vertices")
    g = empty(0)
    for r in rs:
        g = join(g, complete_bipartite(r, r))
    return g
