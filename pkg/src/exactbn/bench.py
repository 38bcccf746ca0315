"""Run reports and the benchmark grid.

Pairwise cells may run a single orientation and extrapolate the total by
multiplying with 2^p; such rows are flagged ``extrapolated=true`` and their
score is the restricted optimum of that orientation only.
"""

import csv
import io
import math
import time
from dataclasses import asdict, dataclass
from typing import Optional

from .dnc import block_size, solve_dnc, solve_partitioned
from .errors import InputError, ResourceLimitError
from .meter import TableMeter
from .pairwise import lattice_entries, run_pairwise
from .subset_dp import solve_full

ALGORITHMS = ("full", "part", "dnc", "pairwise")
BYTES_PER_ENTRY = 8

REPORT_COLUMNS = (
    "algorithm",
    "n",
    "p",
    "s",
    "depth",
    "threads",
    "seed",
    "score",
    "score_kind",
    "units",
    "unit_seconds",
    "total_seconds",
    "extrapolated",
    "peak_table_entries",
    "predicted_entries",
    "score_evals",
)


@dataclass
class RunReport:
    algorithm: str
    n: int
    p: Optional[int] = None
    s: Optional[int] = None
    depth: Optional[int] = None
    threads: int = 1
    seed: Optional[int] = None
    score: float = float("nan")
    score_kind: str = "optimal"
    units: int = 1
    unit_seconds: float = 0.0
    total_seconds: float = 0.0
    extrapolated: bool = False
    peak_table_entries: int = 0
    predicted_entries: int = 0
    score_evals: int = 0

    def row(self):
        d = asdict(self)
        out = []
        for col in REPORT_COLUMNS:
            x = d[col]
            if x is None:
                out.append("")
            elif isinstance(x, bool):
                out.append("true" if x else "false")
            elif col == "score":
                out.append(format(x, ".17g"))
            elif col.endswith("seconds"):
                out.append(f"{x:.3f}")
            else:
                out.append(str(x))
        return out


def reports_csv(reports):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(REPORT_COLUMNS)
    for rep in reports:
        w.writerow(rep.row())
    return buf.getvalue()


def predicted_entries(algorithm, n, p=None, s=None, depth=None):
    """Largest number of live score-table entries the run is expected to hold."""
    if algorithm == "full":
        return (n + 1) << n
    if algorithm == "pairwise":
        return lattice_entries(n, p)
    if algorithm == "part":
        return (1 << s) + n
    if algorithm == "dnc":
        return (1 << block_size(n, depth)) + n
    raise InputError(f"unknown algorithm {algorithm!r}")


def check_budget(entries, max_gib):
    need = entries * BYTES_PER_ENTRY
    if need > max_gib * 2**30:
        raise ResourceLimitError(
            f"run needs about {need / 2**30:.3g} GiB of tables, budget is {max_gib} GiB"
        )


def auto_p(n, max_gib):
    """Fewest pairs whose lattice tables fit the budget."""
    for p in range(n // 2 + 1):
        if lattice_entries(n, p) * BYTES_PER_ENTRY <= max_gib * 2**30:
            return p
    raise ResourceLimitError(f"no pair count fits {max_gib} GiB for n={n}")


def run_cell(table, algorithm, p=None, s=None, depth=None, threads=1, strategy="consecutive",
             seed=0, extrapolate=False, max_gib=None):
    """Solve once and measure; returns ``(DagResult or None, RunReport)``."""
    n = table.n
    if algorithm not in ALGORITHMS:
        raise InputError(f"unknown algorithm {algorithm!r}; choose from {', '.join(ALGORITHMS)}")
    need = {"pairwise": ("p", p), "part": ("s", s), "dnc": ("depth", depth)}.get(algorithm)
    if need is not None and need[1] is None:
        raise InputError(f"--algo {algorithm} needs --{need[0]}")
    if algorithm == "pairwise" and not 0 <= p <= n // 2:
        raise InputError(f"pair count must be in 0..{n // 2}, got {p}")
    if algorithm == "part" and not (2 * s >= n and s <= n):
        raise InputError(f"split size must satisfy n/2 <= s <= n, got s={s} for n={n}")
    if algorithm == "dnc" and depth < 0:
        raise InputError("depth must be non-negative")
    predicted = predicted_entries(algorithm, n, p, s, depth)
    if max_gib is not None:
        check_budget(predicted, max_gib)
    report = RunReport(algorithm, n, threads=threads, predicted_entries=predicted)

    if algorithm == "pairwise":
        report.p = p
        report.seed = seed if strategy == "seeded" else None
        t0 = time.perf_counter()
        run = run_pairwise(
            table, p, strategy, seed, threads, orientations=[0] if extrapolate else None
        )
        wall = time.perf_counter() - t0
        report.units = len(run.orientations)
        report.unit_seconds = sum(run.seconds.values()) / report.units
        report.peak_table_entries = run.peak_entries
        report.score_evals = run.score_evals
        report.score = run.result.total_score
        if extrapolate:
            report.extrapolated = True
            report.score_kind = "restricted" if p else "optimal"
            report.total_seconds = report.unit_seconds * 2**p
            return None, report
        report.total_seconds = wall
        return run.result, report

    meter = TableMeter()
    t0 = time.perf_counter()
    if algorithm == "full":
        result = solve_full(table, meter=meter)
    elif algorithm == "part":
        report.s = s
        report.units = math.comb(n, s)
        result = solve_partitioned(table, s, meter=meter)
    else:
        report.depth = depth
        result = solve_dnc(table, depth, meter=meter)
    report.total_seconds = time.perf_counter() - t0
    report.unit_seconds = report.total_seconds / max(report.units, 1)
    report.peak_table_entries = meter.peak
    report.score = result.total_score
    return result, report
