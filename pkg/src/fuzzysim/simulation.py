"""Largest-simulation engine.

The computation follows the queue-driven refinement scheme: initialize Z to
the label-compatible pairs, build per-triple sorted witness lists and
candidate vectors, sweep every triple once, then drain the remove queue,
deleting the extracted pair's list elements and re-checking only the triples
whose bound may have dropped.  Total cost is O((m+n)n) for a constant number
of edge symbols.
"""

from __future__ import annotations

from dataclasses import dataclass
from time import perf_counter
from typing import Callable

import numpy as np

from . import kernels
from .machinery import Half, PairState, drain
from .model import FuzzyGraph, Relation
from .packing import PackedPair, pack_pair


@dataclass(frozen=True)
class EngineStats:
    init_seconds: float
    loop_seconds: float
    enqueued: int
    pops: int
    deletions: int
    queue_peak: int
    rcnext_nodes: int
    rcprev_slots: int


@dataclass(frozen=True)
class EngineRun:
    relation: Relation
    stats: EngineStats


def check_scale(pair: PackedPair) -> None:
    """Index arithmetic uses int32; refuse inputs whose auxiliary structures
    would not fit anyway (they would need tens of gigabytes)."""
    if max(pair.nl * pair.right.n_edges, pair.nr * pair.left.n_edges,
           len(pair.symbols) * pair.nl * pair.nr) >= 2**31:
        raise ValueError("input too large: auxiliary structures exceed the supported size")


def largest_simulation_run(left: FuzzyGraph, right: FuzzyGraph) -> EngineRun:
    """Compute the largest simulation along with phase timings and counters."""
    pair = pack_pair(left, right)
    check_scale(pair)
    n_sym = len(pair.symbols)
    nl, nr = pair.nl, pair.nr
    lg, rg = pair.left, pair.right

    t0 = perf_counter()
    z = pair.z0.copy()
    zt = np.ascontiguousarray(z.T)
    (head, tail, ll_prev, ll_next,
     rcp_base, rcp_top, rcp_items, rcp_deg,
     nodes, slots) = kernels.build_half(
        z, zt, False, n_sym, nl, nr,
        lg.prev_start, lg.prev_v, lg.prev_deg,
        rg.next_start, rg.next_v, rg.next_eid,
        rg.n_edges,
    )
    q_a = np.empty(nl * nr, np.int32)
    q_b = np.empty(nl * nr, np.int32)
    q_tail, init_pops = kernels.sweep_half(
        z, zt, False, n_sym, nl, nr, tail, rg.eid_deg, rg.n_edges,
        rcp_base, rcp_top, rcp_items, rcp_deg, q_a, q_b, 0,
    )
    t1 = perf_counter()
    q_total, loop_pops, dels, peak = kernels.run_sim_loop(
        z, zt, n_sym, nl, nr,
        rg.prev_start, rg.prev_v, rg.prev_eid, rg.eid_deg, rg.n_edges,
        head, tail, ll_prev, ll_next,
        rcp_base, rcp_top, rcp_items, rcp_deg,
        q_a, q_b, q_tail,
    )
    t2 = perf_counter()
    stats = EngineStats(
        init_seconds=t1 - t0,
        loop_seconds=t2 - t1,
        enqueued=int(q_total),
        pops=int(init_pops + loop_pops),
        deletions=int(dels),
        queue_peak=int(max(q_tail, peak)),
        rcnext_nodes=int(nodes),
        rcprev_slots=int(slots),
    )
    return EngineRun(Relation(z), stats)


def compute_largest_simulation(left: FuzzyGraph, right: FuzzyGraph) -> Relation:
    """The largest simulation between two finite fuzzy graphs."""
    return largest_simulation_run(left, right).relation


class InstrumentedSimulation:
    """Step-by-step twin of the simulation engine.

    Exposes the shared state (Z table, queue, event trace) and the half
    structures so tests can check golden intermediate states and the loop
    invariants.  Results always equal compute_largest_simulation.
    """

    def __init__(self, left: FuzzyGraph, right: FuzzyGraph):
        self.left = left
        self.right = right
        self.pair: PackedPair = pack_pair(left, right)
        self.state = PairState(self.pair)
        self.half = Half(self.state, self.pair.left, self.pair.right,
                         len(self.pair.symbols), flip=False)
        self.z_after_init: frozenset[tuple[int, int]] | None = None
        self.queue_after_init: tuple[tuple[int, int], ...] | None = None

    def initialize(self) -> None:
        self.half.build()
        self.half.sweep()
        self.z_after_init = self.state.z_pairs()
        self.queue_after_init = self.state.queue_pairs()

    def run(self, on_extract: Callable | None = None, verify: bool = False) -> Relation:
        if self.z_after_init is None:
            self.initialize()
        if verify:
            self.half.verify_structures()
        drain(self.state, (self.half,), on_extract=on_extract, verify=verify)
        return self.result()

    def result(self) -> Relation:
        return Relation(self.state.z)


def instrumented_largest_simulation(
    left: FuzzyGraph,
    right: FuzzyGraph,
    *,
    on_extract: Callable | None = None,
    verify: bool = False,
) -> tuple[Relation, InstrumentedSimulation]:
    engine = InstrumentedSimulation(left, right)
    relation = engine.run(on_extract=on_extract, verify=verify)
    return relation, engine
