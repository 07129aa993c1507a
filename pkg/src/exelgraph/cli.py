"""``exelgraph analyze|verify|corpus|validate``.

Exit codes: 0 success, 1 invalid input, 2 property violation, 3 enumeration
bound exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import report
from .corpus import exhaustive, random_corpus
from .dynamics import PropertyViolation
from .graph import GraphSyntaxError, parse_graph, validate
from .lattice import EnumerationBoundError

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_VIOLATION = 2
EXIT_BOUND = 3


class InputError(Exception):
    pass


def _load(path: str):
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except UnicodeDecodeError as exc:
        raise InputError(f"{path} is not UTF-8") from exc
    try:
        return parse_graph(text)
    except GraphSyntaxError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        sys.stdout.write(report.to_json(payload))
    else:
        sys.stdout.write(text)


def cmd_validate(args) -> int:
    g = _load(args.file)
    v = validate(g)
    lines = [f"{k}: {str(val).lower()}" for k, val in v.as_dict().items() if k != "witnesses"]
    for k, ws in v.as_dict()["witnesses"].items():
        lines.append(f"  {k} fails at: {', '.join(ws)}")
    _emit(args, v.as_dict(), "\n".join(lines) + "\n")
    return EXIT_OK if v.ok else EXIT_INPUT


def cmd_analyze(args) -> int:
    g = _load(args.file)
    v = validate(g)
    if not v.no_sources:
        raise InputError("graph has sources (vertices receiving no edge): "
                         + ", ".join(v.witnesses["no_sources"]))
    if not v.shift_total:
        print("warning: graph is not shift-total (vertices emitting no edge: "
              + ", ".join(v.witnesses["shift_total"]) + "); verification suites skipped",
              file=sys.stderr)
    rep = report.structure_report(g, depth=args.depth, orbit_depth=args.orbit_depth,
                                  orbit_bound=args.orbit_bound, seed=args.seed)
    _emit(args, rep, report.to_text(rep))
    ver = rep["verification"]
    return EXIT_VIOLATION if ver["passed"] is False else EXIT_OK


def cmd_verify(args) -> int:
    g = _load(args.file)
    v = validate(g)
    if not v.ok:
        bad = "; ".join(f"{k} fails at {', '.join(w)}" for k, w in v.witnesses.items())
        raise InputError(f"graph is not valid for verification: {bad}")
    ver = report.run_suites(g, depth=args.depth, orbit_depth=args.orbit_depth,
                            orbit_bound=args.orbit_bound, seed=args.seed)
    _emit(args, ver, "\n".join(report.suite_lines(ver)) + "\n")
    return EXIT_OK if ver["passed"] else EXIT_VIOLATION


def cmd_corpus(args) -> int:
    graphs = list(exhaustive(args.max_vertices, args.max_edges))
    if args.random:
        graphs += random_corpus(args.random, args.seed)
    failures = []
    for g in graphs:
        problems = report.equivalence_violations(g, args.orbit_depth)
        if problems:
            failures.append(report.counterexample_text(g, problems))
    failures.sort()
    if args.format == "json":
        payload = {"graphs": len(graphs), "violations": len(failures), "counterexamples": failures}
        sys.stdout.write(report.to_json(payload))
    else:
        for text in failures:
            sys.stdout.write(text + "\n")
        print(f"{len(graphs)} graphs checked, {len(failures)} violations")
    return EXIT_VIOLATION if failures else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="exelgraph", description="Structure analyzer for finite directed graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--orbit-depth", type=int, default=8,
                        help="depth up to which cluster points are confirmed by search")

    for name in ("analyze", "verify"):
        sp = sub.add_parser(name)
        sp.add_argument("file", help="graph file, or - for stdin")
        common(sp)
        sp.add_argument("--depth", type=int, default=2 if name == "analyze" else 3,
                        help="cylinder depth for the identity checks")
        sp.add_argument("--orbit-bound", type=int, default=None,
                        help="longest path tried in the cluster-point search")

    sp = sub.add_parser("validate")
    sp.add_argument("file")
    sp.add_argument("--format", choices=("text", "json"), default="text")

    sp = sub.add_parser("corpus")
    common(sp)
    sp.add_argument("--max-vertices", type=int, default=4)
    sp.add_argument("--max-edges", type=int, default=6)
    sp.add_argument("--random", type=int, default=200, help="number of seeded random graphs")
    return p


COMMANDS = {"analyze": cmd_analyze, "verify": cmd_verify, "corpus": cmd_corpus, "validate": cmd_validate}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except EnumerationBoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except PropertyViolation as exc:
        print(f"property violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
