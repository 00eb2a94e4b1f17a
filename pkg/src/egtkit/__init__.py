"""Exact alpha1 / tau / taub solvers and a verification harness for the
Erdos-Gallai-Tuza bound and its bipartite variant."""

from .graph import (
    CapacityError,
    EdgeIndex,
    EdgeSet,
    Graph,
    Triangle,
    complete,
    complete_bipartite,
    cut_edges,
    cycle,
    empty,
    induced_subgraph,
    join,
    sharpness_family,
    triangles,
)
from .graph6 import Graph6Error, encode_graph6, parse_graph6, stream_graphs
from .solvers import SolveResult, alpha1_exact, conflict_graph, tau_exact, taub_exact
from .witness import validate_witness

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "EdgeIndex",
    "EdgeSet",
    "Graph",
    "Graph6Error",
    "SolveResult",
    "Triangle",
    "alpha1_exact",
    "complete",
    "complete_bipartite",
    "conflict_graph",
    "cut_edges",
    "cycle",
    "empty",
    "encode_graph6",
    "induced_subgraph",
    "join",
    "parse_graph6",
    "sharpness_family",
    "stream_graphs",
    "tau_exact",
    "taub_exact",
    "triangles",
    "validate_witness",
]
