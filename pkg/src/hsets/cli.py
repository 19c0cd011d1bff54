"""Command-line front end.

    hsets eval '{1,2} | {2,3}'
    hsets bench --kind operation --op union --semantic refer --grid 1024,8192,65536
    hsets mcmc --n 50 --iters 10001 --seed 7 --out runs/

Every subcommand writes UTF-8 CSV with a header row.  Exit status is 0 on
success and 2 on parse or configuration errors.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

from .bench import BenchCase, bench, grid_cases, rows_to_csv
from .expr import ExprSyntaxError, eval_text
from .mcmc import read_beta, run_three_chains, write_beta

EXIT_USAGE = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    try:
        values = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values or min(values) < 0:
        raise argparse.ArgumentTypeError(f"expected non-negative integers, got {text!r}")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hsets", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", help="evaluate one set expression")
    p.add_argument("expr")

    p = sub.add_parser("bench", help="time membership queries or operations")
    p.add_argument("--kind", choices=["inclusion", "operation"], required=True)
    p.add_argument(
        "--op",
        default="union",
        choices=["intersection", "union", "sum", "difference", "symmdiff"],
    )
    p.add_argument("--semantic", choices=["refer", "value"], default="refer")
    p.add_argument("--grid", type=_int_list, default=[1024, 8192, 65536],
                   help="comma-separated sizes of the first operand")
    p.add_argument("--size2", type=int, default=16)
    p.add_argument("--batch", type=_int_list, default=[100],
                   help="comma-separated query counts (inclusion only)")
    p.add_argument("--repeats", type=int, default=21)
    p.add_argument("--sets", action="store_true",
                   help="use sets instead of multisets as operands")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", type=Path, help="write CSV here instead of stdout")

    p = sub.add_parser("mcmc", help="run stationary, sparse and dense Beta-model chains")
    p.add_argument("--n", type=int, default=50)
    p.add_argument("--iters", type=int, default=10001)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--beta-file", type=Path)
    p.add_argument("--window", type=int, default=150)
    p.add_argument("--snapshot-every", type=int, default=1000)
    p.add_argument("--out", type=Path, default=Path("."))
    return parser


def _cmd_eval(args) -> int:
    try:
        result = eval_text(args.expr)
    except (ExprSyntaxError, ValueError, TypeError) as exc:
        print(f"hsets eval: {exc}", file=sys.stderr)
        return EXIT_USAGE
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["expr", "result"])
    w.writerow([args.expr, result])
    return 0


def _cmd_bench(args) -> int:
    try:
        cases = []
        for batch in args.batch if args.kind == "inclusion" else [0]:
            base = BenchCase(
                kind=args.kind,
                op=args.op,
                semantic=args.semantic,
                size2=args.size2,
                batch=batch,
                repeats=args.repeats,
                generalized=not args.sets,
            )
            cases.extend(grid_cases(base, args.grid))
    except ValueError as exc:
        print(f"hsets bench: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = rows_to_csv(bench(cases, seed=args.seed))
    if args.out:
        args.out.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def _cmd_mcmc(args) -> int:
    try:
        beta = read_beta(args.beta_file) if args.beta_file else None
        model, traces = run_three_chains(
            args.n,
            args.iters,
            args.seed,
            beta=beta,
            window=args.window,
            snapshot_every=args.snapshot_every,
        )
    except (OSError, ValueError) as exc:
        print(f"hsets mcmc: {exc}", file=sys.stderr)
        return EXIT_USAGE
    args.out.mkdir(parents=True, exist_ok=True)
    write_beta(args.out / "beta.txt", model.beta)
    for start, trace in traces.items():
        trace.write_trace_csv(args.out / f"{start.value}_trace.csv")
        trace.write_ecdf_csv(args.out / f"{start.value}_ecdf.csv")
    print(f"wrote beta.txt and {2 * len(traces)} CSV files to {args.out}", file=sys.stderr)
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = {"eval": _cmd_eval, "bench": _cmd_bench, "mcmc": _cmd_mcmc}[args.command]
    return handler(args)


if __name__ == "__main__":
    sys.exit(main())
