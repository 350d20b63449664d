"""Command-line front end.

Exit codes: 0 success, 1 validation error, 2 audit or theorem failure,
3 capacity breach.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .autgroup import automorphism_group
from .errors import AuditFailure, CapacityError, ValidationError
from .graph import ConnectionSet, Graph, circulant
from .perm import cycles
from .sweep import SweepConfig, analyze_one, parse_order_range, summary_path, sweep, verify_main_theorem

EXIT_OK, EXIT_INVALID, EXIT_AUDIT, EXIT_CAPACITY = 0, 1, 2, 3


def _parse_set(order: int, text: str) -> ConnectionSet:
    try:
        elems = [int(s) % order for s in text.split(",") if s.strip()]
    except ValueError as exc:
        raise ValidationError(f"bad connection set {text!r}") from exc
    return ConnectionSet(order, tuple(elems))


def _fmt_perm(p) -> str:
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles(p)) or "()"


def _print_group(group, as_json: bool) -> None:
    if as_json:
        print(json.dumps(group.to_json()))
        return
    print(f"order: {group.order()}")
    print(f"generators ({len(group.gens)}):")
    for g in group.gens:
        print("  " + _fmt_perm(g))


def cmd_analyze(args) -> int:
    rec = analyze_one(_parse_set(args.order, args.set))
    if args.json:
        print(rec.dumps())
    else:
        print(f"circulant Z{rec.n} {rec.set}")
        print(f"  connected={rec.connected} bipartite={rec.bipartite} irreducible={rec.irreducible}")
        if rec.verdict:
            v = rec.verdict
            print(f"  verdict: {v['status']} ({v['reason']}), |Aut X|={v['autX']}, |Aut B(X)|={v['autBX']}")
        print(f"  arc_transitive={rec.arc_transitive} normal={rec.normal}")
        for name, ok in sorted(rec.lemma_audits.items()):
            print(f"  audit {name}: {'pass' if ok else 'FAIL' if ok is False else 'skipped'}")
        for name, msg in sorted(rec.errors.items()):
            print(f"  error {name}: {msg}")
    if rec.audit_failures:
        return EXIT_AUDIT
    if rec.errors:
        return EXIT_CAPACITY
    return EXIT_OK


def cmd_sweep(args) -> int:
    lo, hi = parse_order_range(args.orders)
    config = SweepConfig(lo, hi, parity=args.parity, dedup=not args.no_dedup, jobs=args.jobs, out=Path(args.out))
    report = sweep(config)
    sys.stdout.write(report.csv())
    print(f"wrote {len(report.records)} records to {args.out} and {summary_path(Path(args.out))}")
    if report.audit_failures:
        return EXIT_AUDIT
    if report.capacity_errors:
        return EXIT_CAPACITY
    return EXIT_OK


def cmd_verify(args) -> int:
    report = verify_main_theorem(args.max_order, cap=args.cap)
    if args.json:
        print(json.dumps(report.to_json(), sort_keys=True))
    else:
        for n, k in sorted(report.per_order.items()):
            print(f"order {n}: {k} connected irreducible instances")
        print(f"total {report.instances}, counterexamples {len(report.counterexamples)}")
        for c in report.counterexamples:
            print(f"  COUNTEREXAMPLE {c}")
        if not report.complete:
            print(f"INCOMPLETE: {report.note}")
    if not report.complete:
        return EXIT_CAPACITY
    return EXIT_OK if report.ok else EXIT_AUDIT


def cmd_aut(args) -> int:
    _print_group(automorphism_group(circulant(_parse_set(args.order, args.set))), args.json)
    return EXIT_OK


def cmd_aut_graph(args) -> int:
    try:
        data = json.loads(Path(args.edges).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ValidationError(f"cannot read graph file: {exc}") from exc
    _print_group(automorphism_group(Graph.from_json(data)), args.json)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="circstab", description="Stability of circulants under the canonical double cover.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="classify one circulant and run every applicable audit")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--set", required=True, help="comma-separated residues, e.g. 1,4")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("sweep", help="classify every circulant in an order range")
    p.add_argument("--orders", required=True, help="inclusive range A..B")
    p.add_argument("--parity", choices=["odd", "even", "all"], default="all")
    p.add_argument("--no-dedup", action="store_true", help="keep multiplier-equivalent sets")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", required=True, help="JSON-lines output path")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify-theorem", help="check stability of all connected irreducible odd-order circulants")
    p.add_argument("--max-order", type=int, required=True)
    p.add_argument("--cap", type=int, default=15)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("aut", help="automorphism group of a circulant")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--set", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_aut)

    p = sub.add_parser("aut-graph", help="automorphism group of a graph given as JSON {n, edges}")
    p.add_argument("--edges", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_aut_graph)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors; 2 is reserved for audit failures
        return EXIT_INVALID if exc.code else EXIT_OK
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except CapacityError as exc:
        print(f"capacity: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except AuditFailure as exc:
        print(f"audit failure: {exc}", file=sys.stderr)
        return EXIT_AUDIT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
