"""Scaling benchmark: random instances, both engines, CSV rows.

Reported times are medians over the requested number of trials.  Instance
generation depends only on (seed, size, density, level count), so rerunning
with the same arguments yields byte-identical output up to the time columns.
"""

from __future__ import annotations

import statistics
from dataclasses import dataclass
from time import perf_counter
from typing import Callable, Sequence

from .directed import compute_largest_directed_simulation
from .generator import bench_pair, degree_levels, random_graph
from .model import FuzzyGraph
from .simulation import compute_largest_simulation


@dataclass(frozen=True)
class BenchRow:
    n: int
    m: int
    levels: int
    time_sim: float
    time_dirsim: float
    pairs_out: int


CSV_HEADER = ("n", "m", "l", "time_sim", "time_dirsim", "pairs_out")


def warmup() -> None:
    """Force JIT compilation of both engines on a tiny instance."""
    import random

    g = random_graph(random.Random(0), 3, 4, degree_levels(2))
    g2 = random_graph(random.Random(1), 3, 4, degree_levels(2))
    compute_largest_simulation(g, g2)
    compute_largest_directed_simulation(g, g2)


def _median_time(fn: Callable[[], object], trials: int) -> float:
    samples = []
    for _ in range(trials):
        t0 = perf_counter()
        fn()
        samples.append(perf_counter() - t0)
    return statistics.median(samples)


def bench_instance(left: FuzzyGraph, right: FuzzyGraph, levels: int, trials: int) -> BenchRow:
    time_sim = _median_time(lambda: compute_largest_simulation(left, right), trials)
    time_dirsim = _median_time(lambda: compute_largest_directed_simulation(left, right), trials)
    pairs = len(compute_largest_simulation(left, right))
    return BenchRow(
        n=left.vertex_count + right.vertex_count,
        m=left.nonzero_edge_count + right.nonzero_edge_count,
        levels=levels,
        time_sim=time_sim,
        time_dirsim=time_dirsim,
        pairs_out=pairs,
    )


def run_bench(
    sizes: Sequence[int],
    density: float,
    levels: int,
    seed: int,
    trials: int = 1,
    *,
    skip_warmup: bool = False,
) -> list[BenchRow]:
    if any(size < 2 for size in sizes):
        raise ValueError("sizes must be at least 2 (vertices are split across two graphs)")
    if not skip_warmup:
        warmup()
    rows = []
    for size in sizes:
        left, right = bench_pair(seed, size, density, levels)
        rows.append(bench_instance(left, right, levels, trials))
    return rows


def format_csv(rows: Sequence[BenchRow]) -> str:
    lines = [",".join(CSV_HEADER)]
    for row in rows:
        lines.append(
            f"{row.n},{row.m},{row.levels},{row.time_sim:.6f},{row.time_dirsim:.6f},{row.pairs_out}"
        )
    return "".join(line + "\n" for line in lines)
