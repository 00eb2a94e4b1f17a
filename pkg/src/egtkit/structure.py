"""Structural predicates and cut inequalities for minimal counterexamples.

Two sums are tracked throughout: ``alpha1 + tau`` (the original
Erdos-Gallai-Tuza quantity) and ``alpha1 + taub`` (the bipartite variant).
Every inequality is evaluated in integers, scaled by 2 or 4 where the
bound has a fractional coefficient.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .graph import (
    CapacityError,
    EdgeSet,
    Graph,
    bits,
    cut_edges,
    induced_subgraph,
    lift_edges,
    triangles,
)
from .mis import max_independent_set
from .solvers import alpha1_exact, tau_exact, taub_exact
from .witness import validate_witness

MAX_EXHAUSTIVE_CUT_VERTICES = 20
MAX_INDEPENDENCE_VERTICES = 40


@dataclass(frozen=True)
class InequalityCheck:
    """``lhs <= rhs`` in scaled integers; ``slack = rhs - lhs``."""

    lhs: int
    rhs: int
    scale: int = 1

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs

    @property
    def slack(self) -> int:
        return self.rhs - self.lhs

    def __bool__(self):
        return self.holds


@dataclass(frozen=True)
class CutReport:
    s: int
    cut_size: int
    n: int

    @property
    def lhs(self) -> int:
        return 2 * self.cut_size

    @property
    def rhs(self) -> int:
        k = self.s.bit_count()
        return k * (self.n - k)

    @property
    def sparse(self) -> bool:
        """True when ``2|[S,S']| <= |S|(n-|S|)``: the cut is not dense."""
        return self.lhs <= self.rhs


@dataclass(frozen=True)
class DenseCutResult:
    status: str  # verified_all | refuted | skipped_too_large
    report: Optional[CutReport] = None
    checked: int = 0


def is_triangular(g: Graph) -> bool:
    for u in range(g.n):
        for v in bits(g.adj[u] >> (u + 1) << (u + 1)):
            if not g.adj[u] & g.adj[v]:
                return False
    return True


def mindeg_filter(g: Graph) -> bool:
    """True iff ``2 * delta(G) > n``; graphs failing this are not minimal
    counterexamples to the original conjecture."""
    return 2 * g.min_degree() > g.n


def cut_report(g: Graph, s: int) -> CutReport:
    return CutReport(s, len(cut_edges(g, s)), g.n)


def _all_cut_sizes(g: Graph) -> list[int]:
    """Cut sizes for every S containing vertex 0, indexed by ``S >> 1``."""
    n = g.n
    sizes = [g.degree(0)]
    for k in range(1, n):
        row = g.adj[k]
        deg = row.bit_count()
        half = len(sizes)
        for low in range(half):
            s = (low << 1) | 1
            sizes.append(sizes[low] + deg - 2 * (row & s).bit_count())
    return sizes


def sampled_cut_sets(g: Graph) -> list[int]:
    """Singletons, open neighbourhoods and maximal cliques, proper and nonempty."""
    full = g.vertices
    seen = set()
    out = []
    candidates = [1 << v for v in range(g.n)] + list(g.adj) + maximal_cliques(g)
    for s in candidates:
        if s and s != full and s not in seen:
            seen.add(s)
            out.append(s)
    return out


def dense_cut_audit(g: Graph, mode: str = "exhaustive") -> DenseCutResult:
    """Look for a proper nonempty S with ``2|[S,S']| <= |S|(n-|S|)``.

    Such an S certifies that ``g`` is not a minimal counterexample to the
    original conjecture. Exhaustive mode scans every S containing vertex 0
    (the condition is symmetric under complement) in increasing bit order.
    """
    n = g.n
    if n < 2:
        return DenseCutResult("verified_all", None, 0)
    if mode == "exhaustive":
        if n > MAX_EXHAUSTIVE_CUT_VERTICES:
            raise CapacityError(f"exhaustive cut audit limited to {MAX_EXHAUSTIVE_CUT_VERTICES} vertices")
        sizes = _all_cut_sizes(g)
        for low in range(len(sizes) - 1):  # last entry is S = V
            s = (low << 1) | 1
            k = s.bit_count()
            if 2 * sizes[low] <= k * (n - k):
                return DenseCutResult("refuted", CutReport(s, sizes[low], n), low + 1)
        return DenseCutResult("verified_all", None, len(sizes) - 1)
    if mode == "sampled":
        candidates = sampled_cut_sets(g)
        for i, s in enumerate(candidates):
            rep = cut_report(g, s)
            if rep.sparse:
                return DenseCutResult("refuted", rep, i + 1)
        return DenseCutResult("verified_all", None, len(candidates))
    raise ValueError(f"unknown audit mode {mode!r}")


def _check_proper(g: Graph, s: int) -> None:
    if not s or s & ~g.vertices or s == g.vertices:
        raise ValueError("S must be a nonempty proper vertex subset")


def _parts(g: Graph, s: int) -> tuple[Graph, Graph]:
    return induced_subgraph(g, s)[0], induced_subgraph(g, g.vertices & ~s)[0]


def check_peel(g: Graph, s: int, values: Optional[Sequence[tuple[int, int]]] = None) -> InequalityCheck:
    """``psi(G) <= psi(G[S]) + psi(G[S']) + |[S,S']|`` with psi = alpha1 + tau.

    ``values`` holds ``(alpha1, tau)`` for G, G[S] and G[S'] in that order;
    computed exactly when omitted.
    """
    _check_proper(g, s)
    if values is None:
        values = [(alpha1_exact(h).value, tau_exact(h).value) for h in (g, *_parts(g, s))]
    (a, t), (a1, t1), (a2, t2) = values
    return InequalityCheck(a + t, a1 + t1 + a2 + t2 + len(cut_edges(g, s)))


def merge_cover(x1: EdgeSet, x2: EdgeSet, cut: EdgeSet, a: EdgeSet, g: Optional[Graph] = None) -> EdgeSet:
    """``X1 | X2 | (cut - A)``: a triangle edge cover of G assembled from covers
    of the two sides and a triangle-independent A.

    With ``g`` given, A and the result are both validated.
    """
    if g is not None and not validate_witness(g, "alpha1", a):
        raise ValueError("A is not triangle-independent")
    cover = x1 | x2 | (cut - (cut & a))
    if g is not None:
        check = validate_witness(g, "tau", cover)
        if not check:
            raise ValueError(f"merged set misses triangle {check.detail}; side covers are invalid")
    return cover


def peel_cover(g: Graph, s: int, a: EdgeSet) -> EdgeSet:
    """Build the merged cover from optimal covers of G[S] and G[S']."""
    _check_proper(g, s)
    lifted = []
    for side in (s, g.vertices & ~s):
        h, mapping = induced_subgraph(g, side)
        lifted.append(lift_edges(tau_exact(h).witness, mapping, g))
    return merge_cover(lifted[0], lifted[1], cut_edges(g, s), a, g)


def taub_cut_bound(g: Graph, s: int, values: Optional[Sequence[int]] = None) -> InequalityCheck:
    """``2 taub(G) <= 2 taub(G[S]) + 2 taub(G[S']) + |[S,S']|``.

    Of the two ways to glue bipartitions of the sides, one keeps at least
    half of the cut. ``values`` holds taub of G, G[S], G[S'].
    """
    _check_proper(g, s)
    if values is None:
        values = [taub_exact(h).value for h in (g, *_parts(g, s))]
    b0, b1, b2 = values
    return InequalityCheck(2 * b0, 2 * (b1 + b2) + len(cut_edges(g, s)), scale=2)


def independence_number(g: Graph, limit: int = MAX_INDEPENDENCE_VERTICES) -> int:
    if g.n > limit:
        raise CapacityError(f"independence number limited to {limit} vertices")
    mask, _ = max_independent_set(g.adj)
    return mask.bit_count()


@dataclass(frozen=True)
class DenseMinCheck:
    cut_size: int
    threshold: int  # (|S| - 2t)(n - |S|)
    t: int

    @property
    def fires(self) -> bool:
        """True when the cut is too sparse for a minimal counterexample to
        the bipartite variant."""
        return self.cut_size <= self.threshold


def check_densemin(g: Graph, s: int, t: Optional[int] = None) -> DenseMinCheck:
    _check_proper(g, s)
    if t is None:
        t = independence_number(induced_subgraph(g, s)[0])
    k = s.bit_count()
    return DenseMinCheck(len(cut_edges(g, s)), (k - 2 * t) * (g.n - k), t)


def check_denseboth(
    g: Graph,
    s: int,
    a: EdgeSet,
    values: Optional[Sequence[tuple[int, int]]] = None,
) -> InequalityCheck:
    """``2 psiB(G) <= 2 psiB(G[S]) + 2 psiB(G[S']) + |cut| + 2|cut & A|``,
    psiB = alpha1 + taub. ``values`` as in :func:`check_peel` with taub.

    A must be a maximum triangle-independent set: for smaller A the bound
    fails (K_{3,3} split into its sides with A empty gives 18 > 9).
    """
    _check_proper(g, s)
    if not validate_witness(g, "alpha1", a):
        raise ValueError("A is not triangle-independent")
    if values is None:
        values = [(alpha1_exact(h).value, taub_exact(h).value) for h in (g, *_parts(g, s))]
    (a0, b0), (a1, b1), (a2, b2) = values
    if len(a) != a0:
        raise ValueError(f"A has {len(a)} edges but alpha1(G) = {a0}; A must be maximum")
    cut = cut_edges(g, s)
    return InequalityCheck(2 * (a0 + b0), 2 * (a1 + b1 + a2 + b2) + len(cut) + 2 * len(cut & a), scale=2)


def has_induced_k4_minus(g: Graph) -> Optional[tuple[int, int, int, int]]:
    """Sorted vertex quadruple inducing exactly five edges, or None."""
    for u in range(g.n):
        for v in bits(g.adj[u] >> (u + 1) << (u + 1)):
            common = g.adj[u] & g.adj[v]
            for x in bits(common):
                far = common & ~g.adj[x] & ~(1 << x) & ~((2 << x) - 1)
                if far:
                    y = (far & -far).bit_length() - 1
                    return tuple(sorted((u, v, x, y)))
    return None


def maximal_cliques(g: Graph) -> list[int]:
    """All maximal cliques as vertex masks, sorted ascending."""
    out: list[int] = []
    if g.n == 0:
        return out
    adj = g.adj

    def expand(r: int, p: int, x: int) -> None:
        if not p and not x:
            out.append(r)
            return
        # pivot: vertex of P | X with most neighbours in P
        pivot = max(bits(p | x), key=lambda u: ((adj[u] & p).bit_count(), -u))
        for v in bits(p & ~adj[pivot]):
            bit = 1 << v
            expand(r | bit, p & adj[v], x & adj[v])
            p &= ~bit
            x |= bit

    expand(0, g.vertices, 0)
    return sorted(out)


def is_clique(g: Graph, s: int) -> bool:
    return all((g.adj[v] | (1 << v)) & s == s for v in bits(s))


def is_maximal_clique(g: Graph, s: int) -> bool:
    if not s or not is_clique(g, s):
        return False
    common = g.vertices & ~s
    for v in bits(s):
        common &= g.adj[v]
    return not common


@dataclass(frozen=True)
class ExtensionResult:
    extends: bool
    vertices: tuple[int, ...]  # outside vertices adjacent to all but one of S
    counts: dict = field(default_factory=dict, compare=False)


def clique_extension_check(g: Graph, s: int) -> ExtensionResult:
    """Does some v outside the maximal clique S see |S| - 1 of its vertices?

    By maximality such a v misses exactly one vertex of S, so S + v induces
    a complete graph on |S| + 1 vertices minus one edge.
    """
    if s == g.vertices:
        raise ValueError("S must not be the whole vertex set")
    if not is_maximal_clique(g, s):
        raise ValueError("S is not a maximal clique")
    k = s.bit_count()
    counts = {v: (g.adj[v] & s).bit_count() for v in bits(g.vertices & ~s)}
    hits = tuple(v for v, c in counts.items() if c >= k - 1)
    return ExtensionResult(bool(hits), hits, counts)


def efps_check(g: Graph, taub_value: Optional[int] = None) -> InequalityCheck:
    """Triangle-free bound ``taub <= m - 4 m^2 / n^2``, multiplied by n^2."""
    if g.n < 1:
        raise ValueError("needs at least one vertex")
    tri = triangles(g)
    if tri:
        raise ValueError(f"graph has triangle {tri[0]}")
    if taub_value is None:
        taub_value = taub_exact(g).value
    n2 = g.n * g.n
    return InequalityCheck(taub_value * n2, g.m * n2 - 4 * g.m * g.m, scale=g.n * g.n)


@dataclass
class StructureProfile:
    is_triangular: bool
    min_degree: int
    has_induced_k4_minus: bool
    k4_minus_witness: Optional[tuple[int, int, int, int]]
    passes_mindeg_filter: bool
    dense_cut: DenseCutResult
    clique_extension: list[tuple[int, Optional[ExtensionResult]]]


def structure_profile(g: Graph, cut_mode: Optional[str] = None) -> StructureProfile:
    """Collect every predicate; the cut audit is exhaustive when n allows it."""
    if cut_mode is None:
        cut_mode = "exhaustive" if g.n <= MAX_EXHAUSTIVE_CUT_VERTICES else "sampled"
    try:
        dense = dense_cut_audit(g, cut_mode)
    except CapacityError:
        dense = DenseCutResult("skipped_too_large")
    quad = has_induced_k4_minus(g)
    ext = []
    for s in maximal_cliques(g):
        ext.append((s, None if s == g.vertices else clique_extension_check(g, s)))
    return StructureProfile(
        is_triangular=is_triangular(g),
        min_degree=g.min_degree(),
        has_induced_k4_minus=quad is not None,
        k4_minus_witness=quad,
        passes_mindeg_filter=mindeg_filter(g),
        dense_cut=dense,
        clique_extension=ext,
    )
