"""Benchmark harness: timed solver runs with operation counters, CSV out.

Cells are (problem, algo, n, q) combinations; each repetition generates
a fresh seeded instance, times the solve call only, and yields one
BenchRecord.  Cells may run in parallel workers; output order is always
the sorted cell order, never completion order.
"""

from __future__ import annotations

import csv
import io
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

from . import gen
from .instrument import OpCounters
from .solvers import problem_is_pair, range_solver

CSV_FIELDS = (
    "problem",
    "algorithm",
    "n",
    "m",
    "q",
    "t",
    "seed",
    "wall_ns",
    "extender_steps",
    "matmul_calls",
    "inner_calls",
    "status",
)

# cells above this many array cells are skipped with a diagnostic row
DEFAULT_BUDGET = 1 << 22


@dataclass
class BenchRecord:
    problem: str
    algorithm: str
    n: int
    m: int
    q: int
    t: int
    seed: int
    wall_ns: int
    extender_steps: int
    matmul_calls: int
    inner_calls: int
    status: str = "ok"

    def row(self) -> list:
        return [getattr(self, field) for field in CSV_FIELDS]


def run_cell(
    problem: str,
    algo: str,
    n: int,
    q: int,
    seed: int,
    omega: float = 3.0,
    budget: int = DEFAULT_BUDGET,
) -> BenchRecord:
    if n * max(1, q) > budget:
        return BenchRecord(problem, algo, n, 0, q, 0, seed, 0, 0, 0, 0, "skipped")
    array = gen.gen_array(n, 0, n - 1, seed=seed)
    kind = "pair" if problem_is_pair(problem) else "single"
    queries = gen.gen_queries(n, q, kind=kind, seed=seed + 1)
    counters = OpCounters()
    solver = range_solver(problem, algo, omega=omega, counters=counters)
    start = time.perf_counter_ns()
    solver(array, queries)
    wall = time.perf_counter_ns() - start
    return BenchRecord(
        problem,
        algo,
        n,
        0,
        q,
        0,
        seed,
        wall,
        counters.extender_steps,
        counters.matmul_calls,
        counters.inner_calls,
    )


def run_matrix(
    problems: Sequence[str],
    algos: Sequence[str],
    sizes: Sequence[int],
    reps: int = 1,
    seed: int = 0,
    q: Optional[int] = None,
    omega: float = 3.0,
    threads: int = 1,
    budget: int = DEFAULT_BUDGET,
) -> list[BenchRecord]:
    cells = []
    for problem in sorted(problems):
        for algo in sorted(algos):
            for n in sorted(sizes):
                for rep in range(reps):
                    cells.append((problem, algo, n, q if q is not None else n, rep))

    def work(cell):
        problem, algo, n, cell_q, rep = cell
        return run_cell(problem, algo, n, cell_q, seed + rep, omega=omega, budget=budget)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(work, cells))
    return [work(cell) for cell in cells]


def write_csv(records: Sequence[BenchRecord], stream) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for record in records:
        writer.writerow(record.row())


def to_csv(records: Sequence[BenchRecord]) -> str:
    buf = io.StringIO()
    write_csv(records, buf)
    return buf.getvalue()
