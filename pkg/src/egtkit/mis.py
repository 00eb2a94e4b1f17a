"""Exact maximum independent set by branch and bound over bit-vector rows."""

from __future__ import annotations

import sys
from typing import Callable, Optional, Sequence

from .graph import bits

# bound(candidates, chosen) -> upper bound on how many more vertices fit
ExtraBound = Callable[[int, int], int]


def greedy_independent_set(adj: Sequence[int], candidates: int) -> int:
    """Min-degree greedy; ties go to the lowest vertex."""
    chosen = 0
    R = candidates
    while R:
        best_v, best_d = -1, None
        for v in bits(R):
            d = (adj[v] & R).bit_count()
            if best_d is None or d < best_d:
                best_v, best_d = v, d
                if d == 0:
                    break
        chosen |= 1 << best_v
        R &= ~(adj[best_v] | (1 << best_v))
    return chosen


def clique_cover_bound(adj: Sequence[int], R: int) -> int:
    """Number of cliques in a greedy clique cover of ``R``; bounds the MIS of ``R``."""
    count = 0
    while R:
        low = R & -R
        R ^= low
        cand = adj[low.bit_length() - 1] & R
        while cand:
            u = cand & -cand
            R ^= u
            cand &= adj[u.bit_length() - 1]
        count += 1
    return count


class _Search:
    def __init__(self, adj: Sequence[int], extra_bound: Optional[ExtraBound]):
        self.adj = adj
        self.extra_bound = extra_bound
        self.best_mask = 0
        self.best_size = 0
        self.nodes = 0

    def run(self, R: int, chosen: int) -> None:
        self.nodes += 1
        adj = self.adj
        # degree-0 and degree-1 vertices belong to some optimum
        changed = True
        while changed and R:
            changed = False
            for v in bits(R):
                if not R >> v & 1:
                    continue
                d = (adj[v] & R).bit_count()
                if d <= 1:
                    chosen |= 1 << v
                    R &= ~(adj[v] | (1 << v))
                    changed = True
        size = chosen.bit_count()
        if not R:
            if size > self.best_size:
                self.best_size, self.best_mask = size, chosen
            return
        room = clique_cover_bound(adj, R)
        if size + room <= self.best_size:
            return
        if self.extra_bound is not None:
            room = min(room, self.extra_bound(R, chosen))
            if size + room <= self.best_size:
                return

        pivot, pivot_deg = -1, -1
        for v in bits(R):
            d = (adj[v] & R).bit_count()
            if d > pivot_deg:
                pivot, pivot_deg = v, d
        bit = 1 << pivot
        self.run(R & ~(adj[pivot] | bit), chosen | bit)
        self.run(R & ~bit, chosen)


def max_independent_set(
    adj: Sequence[int],
    candidates: Optional[int] = None,
    extra_bound: Optional[ExtraBound] = None,
) -> tuple[int, int]:
    """Return ``(mask, nodes_explored)`` for a maximum independent set.

    ``extra_bound`` may tighten the clique-cover bound with problem-specific
    knowledge; it must never underestimate.
    """
    if candidates is None:
        candidates = (1 << len(adj)) - 1
    search = _Search(adj, extra_bound)
    search.best_mask = greedy_independent_set(adj, candidates)
    search.best_size = search.best_mask.bit_count()
    limit = sys.getrecursionlimit()
    if len(adj) + 100 > limit:
        sys.setrecursionlimit(len(adj) + 100)
    try:
        search.run(candidates, 0)
    finally:
        sys.setrecursionlimit(limit)
    return search.best_mask, search.nodes
