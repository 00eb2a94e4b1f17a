from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Any

from .graph import EdgeSet, Graph, bits, triangles


@dataclass(frozen=True)
class WitnessCheck:
    ok: bool
    detail: Any = None

    def __bool__(self):
        return self.ok


def _triangle_check(g: Graph, witness: EdgeSet) -> WitnessCheck:
    idx = g.edge_index
    for t in triangles(g):
        a, b, c = t
        hits = sum(idx.id(u, v) in witness for u, v in ((a, b), (a, c), (b, c)))
        if hits >= 2:
            return WitnessCheck(False, t)
    return WitnessCheck(True)


def _neighbourhood_check(g: Graph, witness: EdgeSet) -> WitnessCheck:
    along = [0] * g.n
    for u, v in witness.pairs():
        along[u] |= 1 << v
        along[v] |= 1 << u
    for v in range(g.n):
        for w in bits(along[v]):
            clash = g.adj[w] & along[v]
            if clash:
                x = (clash & -clash).bit_length() - 1
                return WitnessCheck(False, tuple(sorted((v, w, x))))
    return WitnessCheck(True)


def find_odd_cycle(g: Graph) -> list[int] | None:
    """Vertices of an odd cycle, or None when ``g`` is bipartite."""
    colour = [-1] * g.n
    parent = [-1] * g.n
    for root in range(g.n):
        if colour[root] >= 0:
            continue
        colour[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in bits(g.adj[u]):
                if colour[w] < 0:
                    colour[w] = 1 - colour[u]
                    parent[w] = u
                    queue.append(w)
                elif colour[w] == colour[u]:
                    return _close_cycle(parent, u, w)
    return None


def _close_cycle(parent: list[int], u: int, w: int) -> list[int]:
    up = [u]
    while parent[up[-1]] >= 0:
        up.append(parent[up[-1]])
    wp = [w]
    while parent[wp[-1]] >= 0:
        wp.append(parent[wp[-1]])
    # drop the shared tail above the lowest common ancestor
    while len(up) > 1 and len(wp) > 1 and up[-2] == wp[-2]:
        up.pop()
        wp.pop()
    return up + wp[-2::-1]


def validate_witness(g: Graph, which: str, witness: EdgeSet) -> WitnessCheck:
    if witness.index is not g.edge_index:
        raise ValueError("witness is not over this graph's edge index")
    if which == "alpha1":
        by_triangle = _triangle_check(g, witness)
        by_neighbourhood = _neighbourhood_check(g, witness)
        if bool(by_triangle) != bool(by_neighbourhood):
            raise AssertionError("triangle and neighbourhood checks disagree")
        return by_triangle
    if which == "tau":
        rest = triangles(g.remove_edges(witness))
        return WitnessCheck(not rest, rest[0] if rest else None)
    if which == "taub":
        odd = find_odd_cycle(g.remove_edges(witness))
        return WitnessCheck(odd is None, odd)
    raise ValueError(f"unknown invariant {which!r}")
