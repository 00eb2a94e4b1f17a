"""Batch verification of both conjectured bounds over streams of graphs."""

from __future__ import annotations

import json
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import combinations, islice
from typing import Callable, Iterable, Iterator, Optional, Sequence

from .brute import MAX_BRUTE_EDGES, MAX_BRUTE_VERTICES, brute_force
from .graph import CapacityError, Graph, induced_subgraph, sharpness_family
from .graph6 import encode_graph6, stream_graphs
from .report import SCHEMA_VERSION, VerificationRecord
from .solvers import DEFAULT_MAXCUT_LIMIT, alpha1_exact, tau_exact, taub_exact
from .structure import (
    check_denseboth,
    check_densemin,
    check_peel,
    clique_extension_check,
    dense_cut_audit,
    has_induced_k4_minus,
    is_triangular,
    maximal_cliques,
    mindeg_filter,
    sampled_cut_sets,
    structure_profile,
)

log = logging.getLogger(__name__)

WORKERS_ENV = "EGTKIT_WORKERS"
MAX_LABELED_N = 7
BATCH = 256
VARIANTS = ("egt", "bip", "both")

# cheapest first; the order is recorded in every manifest
FILTER_ORDER = ("mindeg", "triangular", "k4minus", "clique-extension", "dense-cut")
VARIANT_FILTERS = {
    "egt": ("mindeg", "triangular", "dense-cut"),
    "bip": ("k4minus", "clique-extension", "dense-cut"),
}
SAMPLED_CUT_NOTE = "dense-cut filter samples singletons, neighbourhoods and maximal cliques (heuristic)"


def default_workers() -> int:
    value = os.environ.get(WORKERS_ENV)
    return max(1, int(value)) if value else 1


@dataclass
class RunManifest:
    source: str
    variant: str = "both"
    filters: list = field(default_factory=list)
    filter_order: list = field(default_factory=lambda: list(FILTER_ORDER))
    notes: list = field(default_factory=list)
    processed: int = 0
    skipped: int = 0
    skip_reasons: dict = field(default_factory=dict)
    violations: int = 0
    sharp_egt: int = 0
    sharp_bip: int = 0
    wall_time: float = 0.0
    cursor: int = 0
    report_offset: int = 0  # report bytes covered by the cursor
    complete: bool = False
    schema_version: int = SCHEMA_VERSION

    def skip(self, reason: str, count: int = 1) -> None:
        if count:
            self.skipped += count
            self.skip_reasons[reason] = self.skip_reasons.get(reason, 0) + count

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> RunManifest:
        data = json.loads(text)
        if data.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"manifest schema {data.get('schema_version')} != {SCHEMA_VERSION}")
        return cls(**data)

    def save(self, path: str) -> None:
        tmp = path + ".tmp"
        with open(tmp, "w") as fh:
            fh.write(self.to_json())
        os.replace(tmp, path)

    @classmethod
    def load(cls, path: str) -> RunManifest:
        with open(path) as fh:
            return cls.from_json(fh.read())


class OracleMismatch(RuntimeError):
    """The exhaustive oracle disagrees with a branch-and-bound value."""


def evaluate(g: Graph, graph6: Optional[str] = None, variant: str = "both",
             maxcut_limit: int = DEFAULT_MAXCUT_LIMIT) -> VerificationRecord:
    """Solve the needed invariants for one graph and set all record flags.

    Raises CapacityError when an exact solver would exceed its limit.
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    if graph6 is None:
        graph6 = encode_graph6(g)
    alpha1 = alpha1_exact(g).value
    tau = tau_exact(g).value if variant in ("egt", "both") else None
    taub = taub_exact(g, maxcut_limit).value if variant in ("bip", "both") else None
    rec = VerificationRecord(graph6, g.n, g.m, alpha1, tau, taub)
    flags = set()
    if is_triangular(g):
        flags.add("triangular")
    if mindeg_filter(g):
        flags.add("mindeg_pass")
    if has_induced_k4_minus(g) is None:
        flags.add("k4minus_free")
    for name, slack in (("egt", rec.slack_egt), ("bip", rec.slack_bip)):
        if slack is None:
            continue
        if slack < 0:
            flags.add(f"{name}_violation")
        elif slack == 0:
            flags.add(f"sharp_{name}")
        elif slack <= 3:
            flags.add(f"near_sharp_{name}")
    rec.flags = frozenset(flags)
    if rec.violation:
        rec = _confirm_violation(g, rec)
    return rec


def _confirm_violation(g: Graph, rec: VerificationRecord) -> VerificationRecord:
    """Second stage for a flagged graph: recompute with the exhaustive oracle."""
    log.warning("bound violated by %s; re-checking with the oracle", rec.graph6)
    checks = [("alpha1", rec.alpha1), ("tau", rec.tau), ("taub", rec.taub)]
    for which, value in checks:
        if value is None:
            continue
        if which == "taub" and g.n > MAX_BRUTE_VERTICES:
            return rec
        if which != "taub" and g.m > MAX_BRUTE_EDGES:
            return rec
        oracle = brute_force(g, which).value
        if oracle != value:
            raise OracleMismatch(f"{rec.graph6}: {which} solver {value} != oracle {oracle}")
    rec.flags = rec.flags | {"oracle_confirmed"}
    log.warning("violation confirmed by oracle:\n%s", format_audit(audit(g, rec.graph6)))
    return rec


def _evaluate_item(item: tuple[str, Graph, str, int]):
    text, g, variant, limit = item
    try:
        return evaluate(g, text, variant, limit)
    except CapacityError as exc:
        return exc


class _LineCounter:
    def __init__(self, source: Iterable):
        self.source = source
        self.count = 0

    def __iter__(self):
        for line in self.source:
            self.count += 1
            yield line


def _batches(it: Iterator, size: int) -> Iterator[list]:
    while True:
        chunk = list(islice(it, size))
        if not chunk:
            return
        yield chunk


def verify(
    source: Iterable,
    manifest: Optional[RunManifest] = None,
    variant: str = "both",
    strict: bool = True,
    workers: Optional[int] = None,
    maxcut_limit: int = DEFAULT_MAXCUT_LIMIT,
    max_graphs: Optional[int] = None,
    on_batch: Optional[Callable[[RunManifest], None]] = None,
) -> Iterator[VerificationRecord]:
    """Stream records for every graph in a graph6 ``source``, in input order.

    ``manifest`` carries the counters; if its cursor is nonzero the lines up
    to the cursor are skipped without being counted again (resume). When
    ``max_graphs`` graph lines have been handled the run stops early and the
    manifest stays incomplete. ``on_batch`` runs after each batch of records
    has been yielded, which is when the cursor is safe to persist.
    """
    if manifest is None:
        manifest = RunManifest(source="<stream>")
    manifest.variant = variant
    manifest.complete = False
    workers = default_workers() if workers is None else max(1, workers)
    start = time.monotonic()
    resume_at = manifest.cursor
    counter = _LineCounter(source)
    parsed = (p for p in stream_graphs(counter, strict=strict) if p.lineno > resume_at)
    if max_graphs is not None:
        parsed = islice(parsed, max_graphs)

    handled = 0
    pool = ProcessPoolExecutor(workers) if workers > 1 else None
    try:
        for batch in _batches(parsed, BATCH):
            good = [p for p in batch if p.graph is not None]
            items = [(p.text, p.graph, variant, maxcut_limit) for p in good]
            if pool is not None:
                results = iter(pool.map(_evaluate_item, items, chunksize=max(1, len(items) // (4 * workers))))
            else:
                results = map(_evaluate_item, items)
            for p in batch:
                handled += 1
                _count_gap(manifest, p.lineno)
                if p.graph is None:
                    log.error("%s", p.error)
                    manifest.skip(f"parse:{p.error.kind}")
                    manifest.cursor = p.lineno
                    continue
                out = next(results)
                manifest.cursor = p.lineno
                if isinstance(out, CapacityError):
                    log.warning("line %d skipped: %s", p.lineno, out)
                    manifest.skip("capacity")
                    continue
                manifest.processed += 1
                manifest.violations += out.violation
                manifest.sharp_egt += "sharp_egt" in out.flags
                manifest.sharp_bip += "sharp_bip" in out.flags
                yield out
            manifest.wall_time += time.monotonic() - start
            start = time.monotonic()
            if on_batch is not None:
                on_batch(manifest)
    finally:
        if pool is not None:
            pool.shutdown()
    if max_graphs is None or handled < max_graphs:
        # trailing blank or banner lines
        _count_gap(manifest, counter.count + 1)
        manifest.cursor = max(manifest.cursor, counter.count)
        manifest.complete = True
    manifest.wall_time += time.monotonic() - start
    if on_batch is not None:
        on_batch(manifest)


def _count_gap(manifest: RunManifest, lineno: int) -> None:
    manifest.skip("blank", lineno - manifest.cursor - 1)
    manifest.cursor = max(manifest.cursor, lineno - 1)


def labeled_enumeration(n: int) -> Iterator[Graph]:
    """Every labeled graph on n vertices; bit i of the mask is the i-th pair
    in lexicographic order."""
    if n > MAX_LABELED_N:
        raise CapacityError(f"labeled enumeration limited to n <= {MAX_LABELED_N}")
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph.from_edges(n, (pairs[i] for i in range(len(pairs)) if mask >> i & 1))


def _passes(g: Graph, name: str, variant: str) -> bool:
    if name == "mindeg":
        return mindeg_filter(g)
    if name == "triangular":
        return is_triangular(g)
    if name == "k4minus":
        # induced-K4^- free graphs satisfy the bipartite variant
        return has_induced_k4_minus(g) is not None
    if name == "clique-extension":
        cliques = maximal_cliques(g)
        if cliques == [g.vertices]:
            return False  # complete graphs satisfy both bounds
        return all(clique_extension_check(g, s).extends for s in cliques)
    if name == "dense-cut":
        if variant == "egt":
            return dense_cut_audit(g, "sampled").status == "verified_all"
        return not any(check_densemin(g, s).fires for s in sampled_cut_sets(g))
    raise ValueError(f"unknown filter {name!r}")


def resolve_filters(filters: Optional[Sequence[str]], variant: str) -> list[str]:
    if variant not in VARIANT_FILTERS:
        raise ValueError("hunt variant must be 'egt' or 'bip'")
    allowed = VARIANT_FILTERS[variant]
    if filters is None:
        filters = allowed
    bad = [f for f in filters if f not in allowed]
    if bad:
        raise ValueError(f"filters {bad} do not apply to the {variant} variant (allowed: {list(allowed)})")
    return [f for f in FILTER_ORDER if f in filters]


@dataclass
class HuntSummary:
    examined: int = 0
    eliminated: dict = field(default_factory=dict)
    survivors: int = 0


def hunt(
    graphs: Iterable[tuple[Optional[str], Graph]],
    variant: str = "egt",
    filters: Optional[Sequence[str]] = None,
    summary: Optional[HuntSummary] = None,
    maxcut_limit: int = DEFAULT_MAXCUT_LIMIT,
) -> Iterator[VerificationRecord]:
    """Yield verification records for graphs passing every enabled
    minimal-counterexample prerequisite; solvers run only on survivors."""
    order = resolve_filters(filters, variant)
    if summary is None:
        summary = HuntSummary()
    for name in order:
        summary.eliminated.setdefault(name, 0)
    for text, g in graphs:
        summary.examined += 1
        failed = next((name for name in order if not _passes(g, name, variant)), None)
        if failed is not None:
            summary.eliminated[failed] += 1
            continue
        summary.survivors += 1
        yield evaluate(g, text, variant, maxcut_limit)


def partitions_up_to(total: int) -> Iterator[tuple[int, ...]]:
    """Non-increasing positive tuples with sum between 1 and ``total``."""

    def rec(remaining: int, largest: int, prefix: tuple[int, ...]):
        if prefix:
            yield prefix
        for r in range(min(remaining, largest), 0, -1):
            yield from rec(remaining - r, r, prefix + (r,))

    yield from rec(total, total, ())


def family_sweep(max_n: int) -> Iterator[tuple[tuple[int, ...], VerificationRecord]]:
    """Sharpness-family graphs ordered by n, larger blocks first."""
    for rs in sorted(partitions_up_to(max_n // 2), key=lambda rs: (sum(rs), [-r for r in rs])):
        yield rs, evaluate(sharpness_family(rs), variant="both")


def graph_source(path: Optional[str], n: Optional[int], strict: bool = True) -> Iterator[tuple[Optional[str], Graph]]:
    """Graphs from a graph6 file (optionally only those on n vertices) or,
    without a file, the labeled enumeration on n vertices."""
    if path is None:
        if n is None:
            raise ValueError("need an input file or a vertex count")
        for g in labeled_enumeration(n):
            yield None, g
        return
    with open(path, "rb") as fh:
        for p in stream_graphs(fh, strict=strict):
            if p.graph is None:
                log.error("%s", p.error)
                continue
            if n is None or p.graph.n == n:
                yield p.text, p.graph


def audit(g: Graph, graph6: Optional[str] = None, maxcut_limit: int = DEFAULT_MAXCUT_LIMIT) -> dict:
    """Everything known about one graph, as a plain dict."""
    a = alpha1_exact(g)
    t = tau_exact(g)
    b = taub_exact(g, maxcut_limit)
    n2 = g.n * g.n
    prof = structure_profile(g)
    dense = prof.dense_cut
    singletons = []
    if g.n >= 2:
        for v in range(g.n):
            s = 1 << v
            rest = induced_subgraph(g, g.vertices & ~s)[0]
            ra = alpha1_exact(rest).value
            peel = check_peel(g, s, [(a.value, t.value), (0, 0), (ra, tau_exact(rest).value)])
            both = check_denseboth(g, s, a.witness, [(a.value, b.value), (0, 0), (ra, taub_exact(rest, maxcut_limit).value)])
            singletons.append({"vertex": v, "peel_slack": peel.slack, "denseboth_slack_x2": both.slack})
    return {
        "graph6": graph6 if graph6 is not None else encode_graph6(g),
        "n": g.n,
        "m": g.m,
        "alpha1": a.value,
        "alpha1_witness": a.witness.pairs(),
        "tau": t.value,
        "tau_witness": t.witness.pairs(),
        "taub": b.value,
        "taub_witness": b.witness.pairs(),
        "bipartition_side": [v for v in range(g.n) if (b.bipartition or 0) >> v & 1],
        "slack_egt": n2 - 4 * (a.value + t.value),
        "slack_bip": n2 - 4 * (a.value + b.value),
        "triangular": prof.is_triangular,
        "min_degree": prof.min_degree,
        "mindeg_pass": prof.passes_mindeg_filter,
        "has_induced_k4_minus": prof.has_induced_k4_minus,
        "k4minus_free": not prof.has_induced_k4_minus,
        "k4_minus_witness": list(prof.k4_minus_witness) if prof.k4_minus_witness else None,
        "dense_cut": {
            "status": dense.status,
            "checked": dense.checked,
            "s": _vertices(dense.report.s) if dense.report else None,
            "cut_size": dense.report.cut_size if dense.report else None,
        },
        "maximal_cliques": [
            {
                "clique": _vertices(s),
                "extension": None if ext is None else ("extends" if ext.extends else "fails"),
                "extenders": None if ext is None else list(ext.vertices),
            }
            for s, ext in prof.clique_extension
        ],
        "singletons": singletons,
    }


def _vertices(mask: int) -> list[int]:
    return [v for v in range(mask.bit_length()) if mask >> v & 1]


def format_audit(info: dict) -> str:
    lines = []
    for key, value in info.items():
        if key in ("maximal_cliques", "singletons"):
            lines.append(f"{key}:")
            lines.extend(f"  {json.dumps(item)}" for item in value)
        else:
            lines.append(f"{key}: {json.dumps(value)}")
    return "\n".join(lines) + "\n"
