"""Write every non-isomorphic graph on at most N vertices (N <= 8) as graph6.

n <= 7 comes from the networkx graph atlas. Each n = 8 graph is a 7-vertex
graph plus one vertex, so all one-vertex extensions of the atlas graphs are
generated and deduplicated with a Weisfeiler-Lehman hash followed by an
exact isomorphism test inside each hash bucket.

    python scripts/make_catalog.py 8 > tests/data/graphs_le8.g6
"""

import sys
from collections import defaultdict

import networkx as nx

KNOWN_COUNTS = [1, 1, 2, 4, 11, 34, 156, 1044, 12346]


def atlas_by_order():
    out = defaultdict(list)
    for g in nx.graph_atlas_g():
        out[g.number_of_nodes()].append(g)
    return out


def extend(graphs, n):
    buckets = defaultdict(list)
    for h in graphs:
        for mask in range(1 << (n - 1)):
            g = nx.Graph(h)
            g.add_node(n - 1)
            g.add_edges_from((v, n - 1) for v in range(n - 1) if mask >> v & 1)
            key = (tuple(sorted(d for _, d in g.degree())), nx.weisfeiler_lehman_graph_hash(g, iterations=3))
            reps = buckets[key]
            if not any(nx.is_isomorphic(g, r) for r in reps):
                reps.append(g)
    return [g for reps in buckets.values() for g in reps]


def main(max_n):
    by_order = atlas_by_order()
    if max_n == 8:
        by_order[8] = extend(by_order[7], 8)
    for n in range(max_n + 1):
        graphs = by_order[n]
        if len(graphs) != KNOWN_COUNTS[n]:
            raise SystemExit(f"n={n}: generated {len(graphs)}, expected {KNOWN_COUNTS[n]}")
        lines = sorted(nx.to_graph6_bytes(g, header=False).decode().strip() for g in graphs)
        sys.stdout.write("".join(line + "\n" for line in lines))


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 8)
