"""Command line: ``exactbn {solve,bench,oracle,gen,bic,tradeoff}``.

Exit codes: 0 success, 1 usage, 2 input error, 3 resource refusal.

``solve`` writes the DAG (``name <- {parents}`` lines and a ``score`` line)
to stdout and a run summary to stderr; ``--csv`` saves the run report with
columns: algorithm, n, p, s, depth, threads, seed, score, score_kind, units,
unit_seconds, total_seconds, extrapolated, peak_table_entries,
predicted_entries, score_evals.
"""

import argparse
import logging
import sys

from . import bench, tradeoff
from .errors import InputError, ResourceLimitError
from .oracle import oracle_solve
from .pairwise import STRATEGIES
from .scores import bic_from_data, gen_random_instance, parse_scores, read_data, write_scores

log = logging.getLogger("exactbn")

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(path, text):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _load_table(args):
    if getattr(args, "scores", None):
        return parse_scores(_read(args.scores))
    if getattr(args, "n", None) is not None:
        return gen_random_instance(args.n, args.max_indegree, args.seed)
    raise InputError("give --scores FILE (or --n/--max-indegree/--seed to generate)")


def _solver_flags(p):
    p.add_argument("--algo", choices=bench.ALGORITHMS, default="full")
    p.add_argument("--p", type=int, help="pair count for --algo pairwise")
    p.add_argument("--s", type=int, help="first-block size for --algo part")
    p.add_argument("--depth", type=int, help="recursion depth for --algo dnc")
    p.add_argument("--threads", type=int, default=1, help="worker processes for pairwise")
    p.add_argument("--pair-strategy", choices=STRATEGIES, default="consecutive")
    p.add_argument("--pair-seed", type=int, default=0)
    p.add_argument("--max-gib", type=float, default=8.0, help="table memory budget (GiB)")
    p.add_argument("--auto-p", action="store_true", help="fewest pairs fitting --max-gib")


def cmd_solve(args):
    table = _load_table(args)
    p = args.p
    if args.auto_p:
        if args.algo != "pairwise":
            raise InputError("--auto-p needs --algo pairwise")
        p = bench.auto_p(table.n, args.max_gib)
    result, report = bench.run_cell(
        table, args.algo, p=p, s=args.s, depth=args.depth, threads=args.threads,
        strategy=args.pair_strategy, seed=args.pair_seed, max_gib=args.max_gib,
    )
    text = result.to_text()
    sys.stdout.write(text)
    if args.output:
        _write(args.output, text)
    if args.csv:
        _write(args.csv, bench.reports_csv([report]))
    for col, val in zip(bench.REPORT_COLUMNS, report.row()):
        print(f"# {col}={val}", file=sys.stderr)
    return EXIT_OK


def _parse_cell(cell):
    """``pairwise:p=2`` / ``part:s=5`` / ``dnc:depth=1`` / ``full``."""
    algo, _, rest = cell.partition(":")
    params = {}
    for item in filter(None, rest.split(",")):
        key, eq, val = item.partition("=")
        if not eq or key not in ("p", "s", "depth"):
            raise InputError(f"bad cell parameter {item!r} in {cell!r}")
        try:
            params[key] = int(val)
        except ValueError:
            raise InputError(f"bad cell parameter {item!r} in {cell!r}") from None
    return algo, params


def cmd_bench(args):
    table = _load_table(args)
    cells = [_parse_cell(c) for c in args.cell or []]
    if args.p_grid:
        cells += [("pairwise", {"p": int(x)}) for x in args.p_grid.split(",") if x.strip()]
    if not cells:
        raise InputError("no benchmark cells; use --cell and/or --p-grid")
    reports = []
    for algo, params in cells:
        log.info("bench cell %s %s", algo, params)
        _, rep = bench.run_cell(
            table, algo, threads=args.threads, strategy=args.pair_strategy, seed=args.pair_seed,
            extrapolate=args.extrapolate and algo == "pairwise", max_gib=args.max_gib, **params,
        )
        reports.append(rep)
    text = bench.reports_csv(reports)
    _write(args.csv, text)
    if args.figure:
        from .plotting import plot_bench

        plot_bench(reports, args.figure)
    return EXIT_OK


def cmd_oracle(args):
    table = parse_scores(_read(args.scores))
    _, result = oracle_solve(table)
    _write(args.output, result.to_text())
    return EXIT_OK


def cmd_gen(args):
    _write(args.output, write_scores(gen_random_instance(args.n, args.max_indegree, args.seed)))
    return EXIT_OK


def cmd_bic(args):
    header, rows = read_data(_read(args.data), args.delimiter)
    _write(args.output, write_scores(bic_from_data(header, rows, args.max_indegree)))
    return EXIT_OK


def cmd_tradeoff(args):
    rows = tradeoff.emit_curve(args.n, args.step)
    _write(args.csv, tradeoff.curve_csv(rows))
    if args.figure:
        from .plotting import plot_tradeoff

        plot_tradeoff(rows, args.figure)
    return EXIT_OK


def build_parser():
    parser = _Parser(prog="exactbn", description=__doc__.split("\n")[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="find an optimal DAG")
    p.add_argument("--scores", required=True, help="score file ('-' for stdin)")
    _solver_flags(p)
    p.add_argument("--output", help="also write the DAG here")
    p.add_argument("--csv", help="write the run report CSV here")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("bench", help="benchmark grid, CSV report")
    p.add_argument("--scores")
    p.add_argument("--n", type=int, help="generate an instance with this many nodes")
    p.add_argument("--max-indegree", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cell", action="append", help="algo[:key=val,...], repeatable")
    p.add_argument("--p-grid", help="comma-separated pair counts for pairwise cells")
    p.add_argument("--extrapolate", action="store_true",
                   help="pairwise cells run one orientation, total time = measured * 2^p")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--pair-strategy", choices=STRATEGIES, default="consecutive")
    p.add_argument("--pair-seed", type=int, default=0)
    p.add_argument("--max-gib", type=float, default=8.0)
    p.add_argument("--csv", help="report path (default stdout)")
    p.add_argument("--figure", help="also render peak-entries/time plots to this image file")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("oracle", help="brute-force optimum over all orders (n <= 8)")
    p.add_argument("--scores", required=True)
    p.add_argument("--output")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", help="random instance with all parent sets up to --max-indegree")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-indegree", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bic", help="BIC score file from categorical data")
    p.add_argument("--data", required=True)
    p.add_argument("--max-indegree", type=int, required=True)
    p.add_argument("--delimiter", help="cell delimiter (sniffed if omitted)")
    p.add_argument("--output")
    p.set_defaults(func=cmd_bic)

    p = sub.add_parser("tradeoff", help="time exponents a(r), b(r) as CSV")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--step", type=float, required=True)
    p.add_argument("--csv", help="output path (default stdout)")
    p.add_argument("--figure", help="also render the curves to this image file")
    p.set_defaults(func=cmd_tradeoff)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        print(f"exactbn: refused: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (InputError, OSError) as exc:
        print(f"exactbn: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
