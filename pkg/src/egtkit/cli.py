"""Command line entry point.

Exit codes: 0 clean, 1 violation found, 2 input error, 3 capacity error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from contextlib import ExitStack

from .graph import CapacityError
from .graph6 import Graph6Error, parse_graph6
from .harness import (
    SAMPLED_CUT_NOTE,
    HuntSummary,
    RunManifest,
    audit,
    family_sweep,
    format_audit,
    graph_source,
    hunt,
    resolve_filters,
    verify,
)
from .report import format_csv_header, format_record
from .solvers import DEFAULT_MAXCUT_LIMIT, alpha1_exact, tau_exact, taub_exact

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_CAPACITY = 0, 1, 2, 3

log = logging.getLogger("egtkit")


def _open_output(stack: ExitStack, path: str | None, append: bool = False):
    if path is None or path == "-":
        return sys.stdout
    return stack.enter_context(open(path, "a" if append else "w", newline=""))


def cmd_invariants(args) -> int:
    g = parse_graph6(args.graph6)
    a, t, b = alpha1_exact(g), tau_exact(g), taub_exact(g, args.maxcut_limit)
    n2 = g.n * g.n
    out = {
        "graph6": args.graph6,
        "n": g.n,
        "m": g.m,
        "alpha1": a.value,
        "tau": t.value,
        "taub": b.value,
        "slack_egt": n2 - 4 * (a.value + t.value),
        "slack_bip": n2 - 4 * (a.value + b.value),
        "alpha1_witness": a.witness.pairs(),
        "tau_witness": t.witness.pairs(),
        "taub_witness": b.witness.pairs(),
    }
    if args.json:
        print(json.dumps(out))
    else:
        for key, value in out.items():
            print(f"{key}: {value}")
    violated = out["slack_egt"] < 0 or out["slack_bip"] < 0
    return EXIT_VIOLATION if violated else EXIT_OK


def cmd_verify(args) -> int:
    manifest_path = args.manifest
    if manifest_path is None and args.output not in (None, "-"):
        manifest_path = args.output + ".manifest.json"
    if args.resume and (manifest_path is None or args.output in (None, "-")):
        log.error("--resume needs --output FILE")
        return EXIT_INPUT

    if args.resume and os.path.exists(manifest_path):
        manifest = RunManifest.load(manifest_path)
        if manifest.variant != args.variant:
            log.error("manifest was written for variant %s", manifest.variant)
            return EXIT_INPUT
        with open(args.output, "r+b") as fh:
            fh.truncate(manifest.report_offset)
        fresh = False
    else:
        manifest = RunManifest(source=args.input, notes=[])
        fresh = True

    with ExitStack() as stack:
        src = sys.stdin.buffer if args.input == "-" else stack.enter_context(open(args.input, "rb"))
        sink = _open_output(stack, args.output, append=not fresh)
        if fresh and args.format == "csv":
            sink.write(format_csv_header())

        def checkpoint(m: RunManifest) -> None:
            sink.flush()
            if manifest_path is not None:
                if sink is not sys.stdout:
                    m.report_offset = sink.tell()
                m.save(manifest_path)

        records = verify(
            src,
            manifest,
            variant=args.variant,
            strict=args.strict,
            workers=args.workers,
            maxcut_limit=args.maxcut_limit,
            max_graphs=args.max_graphs,
            on_batch=checkpoint,
        )
        for rec in records:
            sink.write(format_record(rec, args.format))

    log.info("processed %d, skipped %d, violations %d", manifest.processed, manifest.skipped, manifest.violations)
    if manifest.violations:
        return EXIT_VIOLATION
    if any(k.startswith("parse:") for k in manifest.skip_reasons):
        return EXIT_INPUT
    if manifest.skip_reasons.get("capacity"):
        return EXIT_CAPACITY
    return EXIT_OK


def cmd_hunt(args) -> int:
    filters = args.filters.split(",") if args.filters else None
    try:
        resolve_filters(filters, args.variant)
    except ValueError as exc:
        log.error("%s", exc)
        return EXIT_INPUT
    summary = HuntSummary()
    violations = 0
    with ExitStack() as stack:
        sink = _open_output(stack, args.output)
        if args.format == "csv":
            sink.write(format_csv_header())
        for rec in hunt(graph_source(args.input, args.n, args.strict), args.variant, filters, summary,
                        args.maxcut_limit):
            violations += rec.violation
            sink.write(format_record(rec, args.format))
    info = {
        "variant": args.variant,
        "filters": resolve_filters(filters, args.variant),
        "examined": summary.examined,
        "eliminated": summary.eliminated,
        "survivors": summary.survivors,
        "notes": [SAMPLED_CUT_NOTE],
    }
    print(json.dumps(info), file=sys.stderr)
    return EXIT_VIOLATION if violations else EXIT_OK


def cmd_families(args) -> int:
    bad = 0
    with ExitStack() as stack:
        sink = _open_output(stack, args.output)
        if args.format == "csv":
            sink.write(format_csv_header())
        for rs, rec in family_sweep(args.max_n):
            if rec.slack_egt != 0:
                bad += 1
                log.error("family %s is not sharp: slack %d", list(rs), rec.slack_egt)
            sink.write(format_record(rec, args.format))
    return EXIT_VIOLATION if bad else EXIT_OK


def cmd_audit(args) -> int:
    g = parse_graph6(args.graph6)
    info = audit(g, args.graph6, args.maxcut_limit)
    if args.json:
        print(json.dumps(info))
    else:
        sys.stdout.write(format_audit(info))
    return EXIT_VIOLATION if info["slack_egt"] < 0 or info["slack_bip"] < 0 else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="egtkit", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats=True):
        p.add_argument("--maxcut-limit", type=int, default=DEFAULT_MAXCUT_LIMIT,
                       help="largest n for exact max-cut (default %(default)s)")
        if formats:
            p.add_argument("--format", choices=("csv", "text"), default="csv")
            p.add_argument("--output", "-o", default=None)

    def strictness(p):
        group = p.add_mutually_exclusive_group()
        group.add_argument("--strict", dest="strict", action="store_true", default=True)
        group.add_argument("--lenient", dest="strict", action="store_false")

    p = sub.add_parser("invariants", help="alpha1, tau and taub of one graph6 string")
    p.add_argument("graph6")
    p.add_argument("--json", action="store_true")
    common(p, formats=False)
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("verify", help="check both bounds on every graph of a graph6 file")
    p.add_argument("--input", required=True, help="graph6 file, or - for stdin")
    p.add_argument("--variant", choices=("egt", "bip", "both"), default="both")
    p.add_argument("--workers", type=int, default=None, help="worker processes (env EGTKIT_WORKERS)")
    p.add_argument("--manifest", default=None, help="manifest path (default: OUTPUT.manifest.json)")
    p.add_argument("--resume", action="store_true", help="continue from the manifest cursor")
    p.add_argument("--max-graphs", type=int, default=None, help="stop after this many graph lines")
    common(p)
    strictness(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("hunt", help="filter for minimal-counterexample candidates, then verify survivors")
    p.add_argument("--n", type=int, default=None, help="vertex count (labeled enumeration if no --input)")
    p.add_argument("--input", default=None)
    p.add_argument("--variant", choices=("egt", "bip"), default="egt")
    p.add_argument("--filters", default=None, help="comma separated subset of the variant's filters")
    common(p)
    strictness(p)
    p.set_defaults(func=cmd_hunt)

    p = sub.add_parser("families", help="sweep the sharpness family up to max n")
    p.add_argument("--max-n", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_families)

    p = sub.add_parser("audit", help="full structural dump for one graph")
    p.add_argument("graph6")
    p.add_argument("--json", action="store_true")
    common(p, formats=False)
    p.set_defaults(func=cmd_audit)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except Graph6Error as exc:
        log.error("%s", exc)
        return EXIT_CAPACITY if exc.kind == "capacity" else EXIT_INPUT
    except CapacityError as exc:
        log.error("%s", exc)
        return EXIT_CAPACITY
    except (OSError, ValueError) as exc:
        log.error("%s", exc)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
