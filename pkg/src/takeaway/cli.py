"""Command-line front door: solve, reduce, verify and serve.

Exit codes: 0 success, 1 failed verification check, 2 parse/usage
error, 3 capacity error, 4 bind failure.  Timing always goes on its
own output line so reports can be compared with timing stripped.
"""

from __future__ import annotations

import argparse
import json
import os
import socket
import sys
from pathlib import Path

from . import verify as vf
from .complexes import Complex, from_json, from_text
from .errors import (
    CacheFormatError,
    CapacityError,
    ParseError,
    TakeawayError,
    UnknownPresetError,
)
from .reductions import reduce_fully
from .solver import Solver, TranspositionTable

CACHE_ENV = "TAKEAWAY_CACHE"

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_CAPACITY = 3
EXIT_BIND = 4


def _load_input(args: argparse.Namespace) -> Complex:
    if args.preset:
        return vf.preset(args.preset).complex
    text = Path(args.file).read_text()
    stripped = text.lstrip()
    if args.file.endswith(".json") or stripped.startswith("{"):
        return from_json(text)
    return from_text(text)


def _add_input_args(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("file", nargs="?", help="facet file (text or JSON)")
    group.add_argument("--preset", metavar="TOKEN",
                       help="catalog position, e.g. boundary:5 or counterexample-disk")


def cmd_solve(args: argparse.Namespace) -> int:
    position = _load_input(args)
    solver = Solver(threads=args.threads)
    report = solver.solve_with_stats(position, use_reduction=not args.no_reduce)
    if report.value.value == "WIN":
        print("WIN (first player wins)")
    else:
        print("LOSS (second player wins)")
    for step in report.reduction:
        print(f"reduction: removed pair ({step.pair[0]}, {step.pair[1]}); "
              f"facets {step.facets_before} -> {step.facets_after}")
    if args.grundy:
        print(f"grundy: {report.grundy}")
    if args.moves:
        if report.winning_moves:
            for move in report.winning_moves:
                print(f"winning move: {' '.join(move)}")
        else:
            print("winning moves: none")
    if args.stats:
        print(f"states: {report.states_explored}  table: {report.table_entries}  "
              f"hits: {solver.table.hits}  misses: {solver.table.misses}")
    print(f"time: {report.elapsed_ms:.1f} ms")
    return EXIT_OK


def cmd_reduce(args: argparse.Namespace) -> int:
    position = _load_input(args)
    print("input:")
    print(position.to_text() or "(empty complex)")
    reduced, steps = reduce_fully(position)
    if not steps:
        print("steps: none (no binary star found)")
    else:
        for i, step in enumerate(steps, start=1):
            print(f"step {i}: removed pair ({step.pair[0]}, {step.pair[1]}); "
                  f"facets {step.facets_before} -> {step.facets_after}")
    print("result:")
    print(reduced.to_text() or "(empty complex)")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    solver = Solver(threads=args.threads)
    try:
        if args.target == "gale":
            report = vf.verify_gale(args.max_n, solver)
        elif args.target == "complement":
            report = vf.verify_complement(args.max_n, solver)
        elif args.target == "sizes":
            report = vf.verify_sizes(min(args.max_n, 6), solver)
        else:
            report = vf.verify_all(solver)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.json:
        print(json.dumps(report.to_dict(), indent=2))
    else:
        print(report.to_text())
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    try:
        probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
        probe.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        probe.bind((args.host, args.port))
        probe.close()
    except OSError as exc:
        print(f"error: cannot bind {args.host}:{args.port}: {exc}", file=sys.stderr)
        return EXIT_BIND

    cache_path = args.cache_file or os.environ.get(CACHE_ENV)
    table = TranspositionTable()
    if cache_path and Path(cache_path).exists():
        try:
            count = table.load(cache_path)
            print(f"cache loaded: {count} entries from {cache_path}")
        except CacheFormatError as exc:
            print(f"warning: {exc}; starting with an empty cache", file=sys.stderr)
            table = TranspositionTable()
    solver = Solver(table, threads=args.threads)
    app = create_app(solver=solver, sessions_path=args.sessions_file)
    try:
        uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    finally:
        if cache_path:
            table.save(cache_path)
            print(f"cache saved: {len(table)} entries to {cache_path}")
            print(f"cache session stats: hits {table.hits}, misses {table.misses}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="takeaway",
        description="Solve, reduce, verify and explore subset take-away positions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve a position")
    _add_input_args(p_solve)
    p_solve.add_argument("--moves", action="store_true", help="list winning moves")
    p_solve.add_argument("--grundy", action="store_true", help="print the grundy value")
    p_solve.add_argument("--no-reduce", action="store_true",
                         help="skip binary-star preprocessing")
    p_solve.add_argument("--stats", action="store_true", help="print search statistics")
    p_solve.add_argument("--threads", type=int, default=1)
    p_solve.set_defaults(func=cmd_solve)

    p_reduce = sub.add_parser("reduce", help="apply binary-star reduction")
    _add_input_args(p_reduce)
    p_reduce.set_defaults(func=cmd_reduce)

    p_verify = sub.add_parser("verify", help="check documented win/loss facts")
    p_verify.add_argument("target", choices=["gale", "complement", "sizes", "paper"])
    p_verify.add_argument("--max-n", type=int, default=6)
    p_verify.add_argument("--json", action="store_true",
                          help="emit the report as JSON")
    p_verify.add_argument("--threads", type=int, default=1)
    p_verify.set_defaults(func=cmd_verify)

    p_serve = sub.add_parser("serve", help="run the game service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8732)
    p_serve.add_argument("--cache-file", default=None,
                         help=f"solver cache path (default ${CACHE_ENV})")
    p_serve.add_argument("--sessions-file", default=None,
                         help="snapshot sessions to this JSON file at shutdown")
    p_serve.add_argument("--threads", type=int, default=1)
    p_serve.set_defaults(func=cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UnknownPresetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except TakeawayError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
