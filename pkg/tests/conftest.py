import random
from itertools import combinations
from pathlib import Path

import pytest

from egtkit.graph import Graph
from egtkit.graph6 import stream_graphs
from egtkit.solvers import alpha1_exact, conflict_graph, tau_exact, taub_exact

DATA = Path(__file__).parent / "data"
CATALOG = DATA / "graphs_le8.g6"


def random_graph(rng: random.Random, n: int, p: float = 0.5) -> Graph:
    return Graph.from_edges(n, [e for e in combinations(range(n), 2) if rng.random() < p])


def labeled_graphs(n: int):
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph.from_edges(n, [pairs[i] for i in range(len(pairs)) if mask >> i & 1])


def catalog_graphs(max_n: int = 8):
    with open(CATALOG, "rb") as fh:
        for p in stream_graphs(fh):
            if p.graph.n <= max_n:
                yield p.graph


class InvariantCache:
    """Exact (alpha1, tau, taub) per labeled graph, plus the alpha1 witness bits."""

    def __init__(self):
        self.table = {}

    def get(self, g: Graph):
        key = (g.n, g.adj)
        hit = self.table.get(key)
        if hit is None:
            a = alpha1_exact(g)
            hit = (a.value, tau_exact(g).value, taub_exact(g).value, a.witness.bits)
            self.table[key] = hit
        return hit


@pytest.fixture(scope="session")
def invariant_cache():
    return InvariantCache()


@pytest.fixture(scope="session")
def catalog_available():
    if not CATALOG.exists():
        pytest.skip("graph6 catalog not generated; run scripts/make_catalog.py")
    return CATALOG


_acceptance_lines = []


@pytest.fixture(scope="session")
def acceptance_log():
    return _acceptance_lines


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)


def relabel(g: Graph, perm: list[int]) -> Graph:
    """Vertex v of ``g`` becomes ``perm[v]``."""
    return Graph.from_edges(g.n, [(perm[u], perm[v]) for u, v in g.edges()])


def random_maximum_triangle_independent(g: Graph, rng: random.Random):
    """A maximum triangle-independent set of ``g``, drawn by solving a randomly
    relabeled copy; different labelings reach different optima."""
    perm = list(range(g.n))
    rng.shuffle(perm)
    h = relabel(g, perm)
    pairs = [(perm.index(u), perm.index(v)) for u, v in alpha1_exact(h).witness.pairs()]
    return g.edge_index.edge_set(pairs)


def random_triangle_independent(g: Graph, rng: random.Random):
    """Greedy triangle-independent set over a shuffled edge order; usually not maximum."""
    rows = conflict_graph(g)
    order = list(range(g.m))
    rng.shuffle(order)
    chosen = 0
    for e in order:
        if not rows[e] & chosen and rng.random() < 0.7:
            chosen |= 1 << e
    return g.edge_index.edge_set([g.edge_index.pair(e) for e in range(g.m) if chosen >> e & 1])
