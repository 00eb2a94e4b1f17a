"""Exhaustive oracles for the three invariants.

These share nothing with the branch-and-bound code beyond the graph type and
its edge numbering: triangles come from a plain triple loop and every edge
subset (or every 2-colouring) is scored.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .graph import CapacityError, EdgeSet, Graph
from .solvers import SolveResult

MAX_BRUTE_EDGES = 20
MAX_BRUTE_VERTICES = 16
_CHUNK = 1 << 18


def _naive_triangle_masks(g: Graph) -> list[int]:
    idx = g.edge_index
    out = []
    for a, b, c in combinations(range(g.n), 3):
        if g.has_edge(a, b) and g.has_edge(a, c) and g.has_edge(b, c):
            out.append((1 << idx.id(a, b)) | (1 << idx.id(a, c)) | (1 << idx.id(b, c)))
    return out


def _best_subset(m: int, tris: list[int], which: str) -> tuple[int, int]:
    """Scan all 2^m edge subsets; return (value, smallest optimal mask)."""
    best_val = -1 if which == "alpha1" else m + 1
    best_mask = 0
    tri_arr = [np.int64(t) for t in tris]
    for start in range(0, 1 << m, _CHUNK):
        masks = np.arange(start, min(start + _CHUNK, 1 << m), dtype=np.int64)
        ok = np.ones(masks.shape, dtype=bool)
        for t in tri_arr:
            hits = np.bitwise_count(masks & t)
            ok &= (hits <= 1) if which == "alpha1" else (hits >= 1)
        if not ok.any():
            continue
        sizes = np.bitwise_count(masks).astype(np.int64)
        if which == "alpha1":
            sizes = np.where(ok, sizes, -1)
            pos = int(np.argmax(sizes))
            if sizes[pos] > best_val:
                best_val, best_mask = int(sizes[pos]), int(masks[pos])
        else:
            sizes = np.where(ok, sizes, m + 1)
            pos = int(np.argmin(sizes))
            if sizes[pos] < best_val:
                best_val, best_mask = int(sizes[pos]), int(masks[pos])
    return best_val, best_mask


def _best_colouring(g: Graph) -> tuple[int, int]:
    edges = g.edges()
    best_cut, best_side = -1, 0
    for side in range(1 << g.n):
        cut = sum(1 for u, v in edges if (side >> u & 1) != (side >> v & 1))
        if cut > best_cut:
            best_cut, best_side = cut, side
    return best_cut, best_side


def brute_force(g: Graph, which: str) -> SolveResult:
    idx = g.edge_index
    if which in ("alpha1", "tau"):
        if g.m > MAX_BRUTE_EDGES:
            raise CapacityError(f"brute force limited to {MAX_BRUTE_EDGES} edges, got {g.m}")
        value, mask = _best_subset(g.m, _naive_triangle_masks(g), which)
        return SolveResult(value, EdgeSet(idx, mask), 1 << g.m, "brute-force")
    if which == "taub":
        if g.n > MAX_BRUTE_VERTICES:
            raise CapacityError(f"brute force limited to {MAX_BRUTE_VERTICES} vertices, got {g.n}")
        cut, side = _best_colouring(g)
        mask = 0
        for i, (u, v) in enumerate(idx.edges):
            if (side >> u & 1) == (side >> v & 1):
                mask |= 1 << i
        return SolveResult(g.m - cut, EdgeSet(idx, mask), 1 << g.n, "brute-force", side)
    raise ValueError(f"unknown invariant {which!r}")
