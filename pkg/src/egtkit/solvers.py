"""Exact solvers for the three edge invariants.

* ``alpha1_exact``: largest edge set with at most one edge per triangle,
  solved as a maximum independent set of the conflict graph.
* ``tau_exact``: fewest edges whose removal leaves no triangle (hitting set
  of the triangle hypergraph).
* ``taub_exact``: fewest edges whose removal leaves a bipartite graph,
  i.e. ``m - maxcut``, by Gray-code enumeration of bipartitions.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Optional

from .graph import CapacityError, EdgeSet, Graph, bits, triangle_edge_masks
from .mis import max_independent_set

DEFAULT_MAXCUT_LIMIT = 28


@dataclass(frozen=True)
class SolveResult:
    value: int
    witness: EdgeSet
    nodes_explored: int
    solver_kind: str  # "branch-and-bound", "gray-code" or "brute-force"
    bipartition: Optional[int] = None  # side-1 vertex mask, taub only


def conflict_graph(g: Graph) -> list[int]:
    """Adjacency rows over edge ids: two edges conflict iff they share a triangle."""
    rows = [0] * g.m
    for t in triangle_edge_masks(g):
        for e in bits(t):
            rows[e] |= t & ~(1 << e)
    return rows


def _vertex_caps(g: Graph) -> list[int]:
    """Per vertex, the independence number of its neighborhood.

    A triangle-independent set uses at most that many edges at the vertex,
    since its neighbors along the set must be pairwise non-adjacent.
    """
    caps = []
    for v in range(g.n):
        nbrs = g.adj[v]
        mask, _ = max_independent_set(g.adj, nbrs)
        caps.append(mask.bit_count())
    return caps


def alpha1_exact(g: Graph) -> SolveResult:
    idx = g.edge_index
    conflict = conflict_graph(g)
    incident = idx.incident
    caps = _vertex_caps(g)

    def degree_bound(R: int, chosen: int) -> int:
        total = 0
        for v in range(g.n):
            free = (R & incident[v]).bit_count()
            if free:
                total += min(free, caps[v] - (chosen & incident[v]).bit_count())
        return total // 2

    mask, nodes = max_independent_set(conflict, extra_bound=degree_bound)
    return SolveResult(mask.bit_count(), EdgeSet(idx, mask), nodes, "branch-and-bound")


def local_maxcut(g: Graph) -> int:
    """Side-1 mask of a 1-flip local optimum, started from a greedy split."""
    side = 0
    for v in range(g.n):
        # put v opposite the majority of its already placed neighbors
        placed = g.adj[v] & ((1 << v) - 1)
        if (placed & side).bit_count() * 2 < placed.bit_count():
            side |= 1 << v
    improved = True
    while improved:
        improved = False
        for v in range(g.n):
            same = g.adj[v] & (side if side >> v & 1 else ~side)
            if 2 * same.bit_count() > g.adj[v].bit_count():
                side ^= 1 << v
                improved = True
    return side


def bipartition_deletion(g: Graph, side: int) -> EdgeSet:
    """Edges with both endpoints on the same side of ``side``."""
    mask = 0
    for i, (u, v) in enumerate(g.edge_index.edges):
        if (side >> u & 1) == (side >> v & 1):
            mask |= 1 << i
    return EdgeSet(g.edge_index, mask)


def _greedy_cover(tris: list[int]) -> int:
    deleted = 0
    open_tris = list(tris)
    while open_tris:
        counts: dict[int, int] = {}
        for t in open_tris:
            for e in bits(t):
                counts[e] = counts.get(e, 0) + 1
        e = min(counts, key=lambda k: (-counts[k], k))
        deleted |= 1 << e
        open_tris = [t for t in open_tris if not t >> e & 1]
    return deleted


class _CoverSearch:
    def __init__(self, tris: list[int], floor: int, best: int):
        self.tris = tris
        self.floor = floor  # global lower bound on the cover size
        self.best = best
        self.best_size = best.bit_count()
        self.nodes = 0

    def run(self, deleted: int, kept: int) -> None:
        self.nodes += 1
        # forced deletions: an open triangle with one deletable edge left
        while True:
            forced = 0
            open_tris = []
            for t in self.tris:
                if t & deleted:
                    continue
                free = t & ~kept
                if not free:
                    return
                if free & (free - 1) == 0:
                    forced |= free
                else:
                    open_tris.append(t)
            if not forced:
                break
            deleted |= forced
        size = deleted.bit_count()
        if not open_tris:
            if size < self.best_size:
                self.best, self.best_size = deleted, size
            return
        if max(self.floor, size + 1) >= self.best_size:
            return

        edge_deg: dict[int, int] = {}
        for t in open_tris:
            for e in bits(t & ~kept):
                edge_deg[e] = edge_deg.get(e, 0) + 1
        keyed = []
        for pos, t in enumerate(open_tris):
            free = t & ~kept
            keyed.append((free.bit_count(), sum(edge_deg[e] for e in bits(free)), pos))
        keyed.sort()

        used = 0
        packing = 0
        for _, _, pos in keyed:
            free = open_tris[pos] & ~kept
            if not free & used:
                used |= free
                packing += 1
        if max(self.floor, size + packing) >= self.best_size:
            return

        chosen = open_tris[keyed[0][2]] & ~kept
        keep = 0
        for e in bits(chosen):
            bit = 1 << e
            self.run(deleted | bit, kept | keep)
            keep |= bit


def tau_exact(g: Graph) -> SolveResult:
    idx = g.edge_index
    tris = triangle_edge_masks(g)
    if not tris:
        return SolveResult(0, EdgeSet(idx), 1, "branch-and-bound")
    greedy = _greedy_cover(tris)
    cut_based = bipartition_deletion(g, local_maxcut(g)).bits
    start = cut_based if cut_based.bit_count() < greedy.bit_count() else greedy
    # a triangle-free graph on n vertices has at most floor(n^2/4) edges
    floor = max(0, g.m - g.n * g.n // 4)
    search = _CoverSearch(tris, floor, start)
    if search.best_size > floor:
        limit = sys.getrecursionlimit()
        if g.m + 100 > limit:
            sys.setrecursionlimit(g.m + 100)
        try:
            search.run(0, 0)
        finally:
            sys.setrecursionlimit(limit)
    return SolveResult(search.best_size, EdgeSet(idx, search.best), search.nodes, "branch-and-bound")


def maxcut_exact(g: Graph, limit: int = DEFAULT_MAXCUT_LIMIT) -> tuple[int, int]:
    """Return ``(cut_size, side_mask)`` maximizing the cut; vertex 0 stays on side 0.

    Visits all 2^(n-1) bipartitions in Gray-code order, updating the cut size
    incrementally. The first maximum met in that order is kept.
    """
    n = g.n
    if n > limit:
        raise CapacityError(f"exact max-cut limited to {limit} vertices, got {n}")
    if n <= 1:
        return 0, 0
    adj = g.adj
    deg = [row.bit_count() for row in adj]
    side = 0
    cut = 0
    best, best_side = 0, 0
    for i in range(1, 1 << (n - 1)):
        v = (i & -i).bit_length()  # vertex 1 + trailing zeros of i
        row = adj[v]
        if side >> v & 1:
            same = (row & side).bit_count()
        else:
            same = (row & ~side).bit_count()
        cut += 2 * same - deg[v]
        side ^= 1 << v
        if cut > best:
            best, best_side = cut, side
    return best, best_side


def taub_exact(g: Graph, limit: int = DEFAULT_MAXCUT_LIMIT) -> SolveResult:
    cut, side = maxcut_exact(g, limit)
    witness = bipartition_deletion(g, side)
    assert len(witness) == g.m - cut
    return SolveResult(g.m - cut, witness, max(1, 1 << max(g.n - 1, 0)), "gray-code", side)


def solve(g: Graph, which: str, **kwargs) -> SolveResult:
    if which == "alpha1":
        return alpha1_exact(g)
    if which == "tau":
        return tau_exact(g)
    if which == "taub":
        return taub_exact(g, **kwargs)
    raise ValueError(f"unknown invariant {which!r}")
