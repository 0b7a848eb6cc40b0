"""Command-line entry point: ``oetree demo|bench|fuzz|trend``."""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from oetree.bench import BenchSpec, demo, read_csv, run_bench, trend_check, write_csv
from oetree.errors import BadConfig
from oetree.oracle import FULL_GRID, FuzzPlan, differential_run
from oetree.tree import Config


def _cmd_demo(args: argparse.Namespace) -> int:
    for line in demo():
        print(line)
    return 0


def _cmd_bench(args: argparse.Namespace) -> int:
    rows = []
    for structure in args.structure:
        for k in args.prepopulate:
            spec = BenchSpec(
                structure=structure,
                start_depth=args.start_depth,
                compact_leaves=args.compact_leaves,
                depth_annotated=args.depth_annotated,
                prepopulate=k,
                op=args.op,
                reps=args.reps,
                seed=args.seed,
            )
            rows.append(run_bench(spec))
    try:
        write_csv(rows, args.csv if args.csv else sys.stdout)
    except OSError as exc:
        print(f"error: cannot write {args.csv}: {exc}", file=sys.stderr)
        return 1
    return 0


def _cmd_fuzz(args: argparse.Namespace) -> int:
    if args.start_depth is not None or args.compact_leaves or args.depth_annotated:
        grid = (Config(args.start_depth or 1, args.depth_annotated, args.compact_leaves),)
    else:
        grid = FULL_GRID
    failed = False
    for seed in range(args.seed, args.seed + args.seeds):
        report = differential_run(FuzzPlan(seed, args.ops, grid=grid))
        print(
            f"seed={seed} generator={report.generator} configs={report.configs} "
            f"ops={report.ops_executed} max_log={report.max_log_length} "
            f"divergences={report.divergences}"
        )
        for d in report.samples:
            print(f"  {d}")
        failed |= not report.ok
    return 1 if failed else 0


def _cmd_trend(args: argparse.Namespace) -> int:
    try:
        rows = read_csv(args.csv)
    except OSError as exc:
        print(f"error: cannot read {args.csv}: {exc}", file=sys.stderr)
        return 2
    report = trend_check(rows, check_time=args.check_time)
    for line in report.lines():
        print(line)
    return 0 if report.passed else 1


def _add_variant_flags(p: argparse.ArgumentParser, start_default: int | None) -> None:
    p.add_argument("--start-depth", type=int, default=start_default)
    p.add_argument("--compact-leaves", action="store_true")
    p.add_argument("--depth-annotated", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="oetree", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("demo", help="print the tree after each of the inserts 1..10")
    p.set_defaults(func=_cmd_demo)

    p = sub.add_parser("bench", help="time lookups or insert+undo pairs, emit CSV")
    p.add_argument("--structure", nargs="+", choices=("tree", "list"), required=True)
    p.add_argument("--prepopulate", nargs="+", type=int, required=True, metavar="K")
    p.add_argument("--reps", type=int, required=True, metavar="R")
    p.add_argument("--op", choices=("insert", "lookup"), required=True)
    _add_variant_flags(p, 1)
    p.add_argument("--csv", metavar="PATH")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("fuzz", help="differential run of tree, list and reference model")
    p.add_argument("--ops", type=int, required=True, metavar="N")
    p.add_argument("--seed", type=int, required=True, metavar="S")
    p.add_argument("--seeds", type=int, default=1, help="run seeds S..S+n-1")
    _add_variant_flags(p, None)
    p.set_defaults(func=_cmd_fuzz)

    p = sub.add_parser("trend", help="check growth trends in a bench CSV")
    p.add_argument("--csv", required=True, metavar="PATH")
    p.add_argument("--check-time", action="store_true", help="also check wall-time ratios")
    p.set_defaults(func=_cmd_trend)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BadConfig as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
