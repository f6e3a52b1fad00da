"""Command line entry point: ``chibound colour|audit|bench|oracle``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .bounds import bound_audit
from .degen import to_proper, verify_kd
from .errors import DoubleStarFound, GraphError, InvariantViolation, OracleSizeError
from .graph import read_graph
from .harness import load_config, run_experiment
from .oracles import (
    chromatic_number_exact,
    clique_number,
    find_biclique_subgraph,
    find_induced_double_star,
)
from .pipeline import colour_graph
from .profiles import resolve_profile

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_HFREE = 2
EXIT_INVARIANT = 3


def _dump(obj, path: str | None) -> None:
    text = json.dumps(obj, indent=1, sort_keys=True)
    if path is None or path == "-":
        print(text)
    else:
        Path(path).write_text(text + "\n", encoding="utf-8")


def cmd_colour(args: argparse.Namespace) -> int:
    g = read_graph(args.graph)
    profile = resolve_profile(args.profile, args.profiles)
    try:
        col, trace = colour_graph(g, profile, attest_hfree=args.attest_hfree)
    except DoubleStarFound as exc:
        print(f"input is not H_{profile.s}-free", file=sys.stderr)
        _dump({"error": "hfree-violation", "witness": exc.witness.to_dict()}, args.out)
        return EXIT_HFREE
    except InvariantViolation as exc:
        print(f"internal invariant failed: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    if not verify_kd(g, col):
        print("final colouring failed verification", file=sys.stderr)
        return EXIT_INVARIANT
    proper = to_proper(g, col)
    out = trace.to_dict()
    out["proper_colouring"] = {str(v): c for v, c in proper.items()}
    out["colours"] = len(set(proper.values()))
    _dump(out, args.out)
    print(f"n={g.n} omega={trace.omega} k={col.k} d={col.d} colours={out['colours']}", file=sys.stderr)
    return EXIT_OK


def cmd_audit(args: argparse.Namespace) -> int:
    audit = bound_audit(args.s, args.c, args.omega, args.d)
    if args.json:
        _dump(audit.to_dict(), "-")
    else:
        print(audit.table())
        print(f"all inequalities hold: {audit.all_hold}")
    return EXIT_USAGE if args.strict and not audit.all_hold else EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    if args.trace:
        config["trace"] = True
    if args.workers is not None:
        config["workers"] = args.workers
    report = run_experiment(config, args.out_dir, base_dir=Path(args.config).parent)
    print(f"{len(report.rows)} rows written to {args.out_dir}", file=sys.stderr)
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> int:
    g = read_graph(args.graph)
    if args.query == "omega":
        size, clique = clique_number(g)
        result = {"value": size, "witness": sorted(clique)}
    elif args.query == "chi":
        try:
            k, colours = chromatic_number_exact(g, limit=args.limit)
        except OracleSizeError as exc:
            print(str(exc), file=sys.stderr)
            return EXIT_USAGE
        result = {"value": k, "witness": colours}
    elif args.query == "hfree":
        w = find_induced_double_star(g, args.s)
        result = {"value": w is None, "witness": None if w is None else w.to_dict()}
    else:
        hit = find_biclique_subgraph(g, args.t)
        result = {"value": hit is not None, "witness": None if hit is None else [sorted(hit[0]), sorted(hit[1])]}
    _dump(result, "-")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="chibound", description="Certified degenerate colourings of double-star-free graphs.")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("colour", help="colour a graph file and write the peeling trace")
    c.add_argument("--graph", required=True)
    c.add_argument("--profile", default="DESK1")
    c.add_argument("--profiles", help="JSON file with extra threshold profiles")
    c.add_argument("--attest-hfree", action="store_true", help="skip the H_s-free check")
    c.add_argument("--out", default="-")
    c.set_defaults(func=cmd_colour)

    a = sub.add_parser("audit", help="evaluate the bound inequalities exactly")
    a.add_argument("--s", type=int, required=True)
    a.add_argument("--c", type=int, required=True)
    a.add_argument("--omega", type=int, required=True)
    a.add_argument("--d", type=int, default=None)
    a.add_argument("--json", action="store_true")
    a.add_argument("--strict", action="store_true", help="exit 1 when any inequality fails")
    a.set_defaults(func=cmd_audit)

    b = sub.add_parser("bench", help="run an experiment config")
    b.add_argument("--config", required=True)
    b.add_argument("--out-dir", required=True)
    b.add_argument("--trace", action="store_true")
    b.add_argument("--workers", type=int)
    b.set_defaults(func=cmd_bench)

    o = sub.add_parser("oracle", help="run one exact oracle")
    o.add_argument("query", choices=("omega", "chi", "hfree", "biclique"))
    o.add_argument("--graph", required=True)
    o.add_argument("--s", type=int, default=1)
    o.add_argument("--t", type=int, default=2)
    o.add_argument("--limit", type=int, default=18)
    o.set_defaults(func=cmd_oracle)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GraphError, KeyError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
