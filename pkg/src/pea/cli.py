"""Command line entry point: ``pea bench | solve | synth | enum``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import bench, enumlab


def _write(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_bench(args) -> int:
    try:
        instances = bench.load_dataset(args.task, args.data, args.exclude or ())
    except bench.DatasetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    mode = "native"
    if args.mode[0] == "candidate":
        if len(args.mode) != 2:
            print("error: --mode candidate needs a manifest path", file=sys.stderr)
            return 2
        from .synthesis import load_candidate
        mode = load_candidate(args.mode[1])
    elif args.mode[0] != "native" or len(args.mode) != 1:
        print(f"error: unknown mode {' '.join(args.mode)!r}", file=sys.stderr)
        return 2
    report = bench.run_benchmark(args.task, instances, mode, args.timeout, args.workers,
                                 synthesis_seconds=args.synthesis_seconds)
    _write(bench.emit_report(report, args.report, per_instance=args.per_instance), args.out)
    return 0


def cmd_solve(args) -> int:
    text = sys.stdin.read() if args.instance == "-" else Path(args.instance).read_text()
    try:
        print(bench.native_answer(args.task, text))
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


def cmd_synth(args) -> int:
    from .synthesis import TASKS, SynthesisConfig, load_provider, synthesize
    from .synthesis.fixtures import default_fixture

    task = TASKS[args.task]
    provider = load_provider(args.provider)
    config = SynthesisConfig(m=args.m, op=args.optimize, timeout_seconds=args.timeout)
    result = synthesize(task, provider, config, default_fixture(args.task))
    if args.transcript:
        Path(args.transcript).write_text(json.dumps(result.transcript, indent=2) + "\n")
    summary = {"found": not result.empty, "attempts": result.attempts,
               "code_queries": result.code_queries, "strategy_queries": result.strategy_queries,
               "seconds": round(result.seconds, 3)}
    if result.candidate is not None and args.out:
        summary["written_to"] = str(result.candidate.write(args.out))
    print(json.dumps(summary))
    return 0 if not result.empty else 1


def cmd_enum(args) -> int:
    tokens = args.tokens.split(",") if args.tokens else enumlab.random_tokens(args.m, args.seed)
    if args.kind == "perm":
        expected = list(enumlab.permutations(tokens))
    else:
        expected = list(enumlab.cartesian_power(tokens, args.n))
    if args.score:
        report = enumlab.score_coverage(expected, Path(args.score).read_text())
        print(json.dumps({"expected": report.expected_count, "matched": report.matched_count,
                          "unparsed_lines": report.unparsed_lines, "coverage": report.fraction}))
        return 0
    _write(enumlab.render(expected), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pea", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bench", help="solve and judge a dataset")
    b.add_argument("--task", choices=bench.TASKS, required=True)
    b.add_argument("--data", required=True)
    b.add_argument("--mode", nargs="+", default=["native"], metavar="MODE",
                   help="'native' or 'candidate <manifest or dir>'")
    b.add_argument("--timeout", type=float, default=30.0)
    b.add_argument("--report", choices=("csv", "md"), default="md")
    b.add_argument("--workers", type=int, default=1)
    b.add_argument("--synthesis-seconds", type=float, default=0.0)
    b.add_argument("--exclude", action="append", help="instance id to skip (repeatable)")
    b.add_argument("--per-instance", action="store_true")
    b.add_argument("--out")
    b.set_defaults(func=cmd_bench)

    s = sub.add_parser("solve", help="solve one instance with the native solver")
    s.add_argument("--task", choices=bench.TASKS, required=True)
    s.add_argument("--instance", required=True, help="file path, or - for stdin")
    s.set_defaults(func=cmd_solve)

    y = sub.add_parser("synth", help="synthesize a candidate program")
    y.add_argument("--task", choices=bench.TASKS, required=True)
    y.add_argument("--provider", required=True, help="JSON config path or stub:<script.json>")
    y.add_argument("--optimize", action="store_true")
    y.add_argument("--m", type=int, default=10)
    y.add_argument("--timeout", type=float, default=30.0)
    y.add_argument("--out", help="directory for the accepted candidate")
    y.add_argument("--transcript", help="write the query transcript as JSON")
    y.set_defaults(func=cmd_synth)

    e = sub.add_parser("enum", help="permutation / product enumeration probes")
    e.add_argument("kind", choices=("perm", "product"))
    e.add_argument("--m", type=int, default=4)
    e.add_argument("--n", type=int, default=2)
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--tokens", help="comma separated tokens instead of random ones")
    e.add_argument("--score", help="score a response file against the expected list")
    e.add_argument("--out")
    e.set_defaults(func=cmd_enum)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
