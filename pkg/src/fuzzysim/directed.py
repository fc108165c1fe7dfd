"""Largest directed-simulation engine.

Extends the simulation engine with a second, dual half: the same structure
implementation instantiated with the graph roles swapped and the pair
orientation flipped.  Initialization builds both halves from the
label-compatible Z, sweeps the plain triples first and the dual triples
second; the main loop runs the plain pass then the dual pass per extracted
pair.  The result is independent of those orders.
"""

from __future__ import annotations

from time import perf_counter
from typing import Callable

import numpy as np

from . import kernels
from .machinery import Half, PairState, drain
from .model import FuzzyGraph, Relation
from .packing import PackedPair, pack_pair
from .simulation import EngineRun, EngineStats, check_scale


def largest_directed_simulation_run(left: FuzzyGraph, right: FuzzyGraph) -> EngineRun:
    """Compute the largest directed simulation with phase timings and counters."""
    pair = pack_pair(left, right)
    check_scale(pair)
    n_sym = len(pair.symbols)
    nl, nr = pair.nl, pair.nr
    lg, rg = pair.left, pair.right

    t0 = perf_counter()
    z = pair.z0.copy()
    zt = np.ascontiguousarray(z.T)
    (p_head, p_tail, p_ll_prev, p_ll_next,
     p_rcp_base, p_rcp_top, p_rcp_items, p_rcp_deg,
     p_nodes, p_slots) = kernels.build_half(
        z, zt, False, n_sym, nl, nr,
        lg.prev_start, lg.prev_v, lg.prev_deg,
        rg.next_start, rg.next_v, rg.next_eid,
        rg.n_edges,
    )
    (d_head, d_tail, d_ll_prev, d_ll_next,
     d_rcp_base, d_rcp_top, d_rcp_items, d_rcp_deg,
     d_nodes, d_slots) = kernels.build_half(
        z, zt, True, n_sym, nr, nl,
        rg.prev_start, rg.prev_v, rg.prev_deg,
        lg.next_start, lg.next_v, lg.next_eid,
        lg.n_edges,
    )
    q_a = np.empty(nl * nr, np.int32)
    q_b = np.empty(nl * nr, np.int32)
    q_tail, pops0 = kernels.sweep_half(
        z, zt, False, n_sym, nl, nr, p_tail, rg.eid_deg, rg.n_edges,
        p_rcp_base, p_rcp_top, p_rcp_items, p_rcp_deg, q_a, q_b, 0,
    )
    q_tail, pops1 = kernels.sweep_half(
        z, zt, True, n_sym, nr, nl, d_tail, lg.eid_deg, lg.n_edges,
        d_rcp_base, d_rcp_top, d_rcp_items, d_rcp_deg, q_a, q_b, q_tail,
    )
    t1 = perf_counter()
    q_total, loop_pops, dels, peak = kernels.run_dirsim_loop(
        z, zt, n_sym, nl, nr,
        rg.prev_start, rg.prev_v, rg.prev_eid, rg.eid_deg, rg.n_edges,
        p_head, p_tail, p_ll_prev, p_ll_next,
        p_rcp_base, p_rcp_top, p_rcp_items, p_rcp_deg,
        lg.prev_start, lg.prev_v, lg.prev_eid, lg.eid_deg, lg.n_edges,
        d_head, d_tail, d_ll_prev, d_ll_next,
        d_rcp_base, d_rcp_top, d_rcp_items, d_rcp_deg,
        q_a, q_b, q_tail,
    )
    t2 = perf_counter()
    stats = EngineStats(
        init_seconds=t1 - t0,
        loop_seconds=t2 - t1,
        enqueued=int(q_total),
        pops=int(pops0 + pops1 + loop_pops),
        deletions=int(dels),
        queue_peak=int(max(q_tail, peak)),
        rcnext_nodes=int(p_nodes + d_nodes),
        rcprev_slots=int(p_slots + d_slots),
    )
    return EngineRun(Relation(z), stats)


def compute_largest_directed_simulation(left: FuzzyGraph, right: FuzzyGraph) -> Relation:
    """The largest directed simulation between two finite fuzzy graphs."""
    return largest_directed_simulation_run(left, right).relation


class InstrumentedDirectedSimulation:
    """Step-by-step twin of the directed engine (see InstrumentedSimulation).

    ``dual_first`` swaps the order of the two per-extraction passes; the
    returned relation must not change, which the tests assert.
    """

    def __init__(self, left: FuzzyGraph, right: FuzzyGraph, *, dual_first: bool = False):
        self.left = left
        self.right = right
        self.pair: PackedPair = pack_pair(left, right)
        self.state = PairState(self.pair)
        n_sym = len(self.pair.symbols)
        self.primal = Half(self.state, self.pair.left, self.pair.right, n_sym, flip=False)
        self.dual = Half(self.state, self.pair.right, self.pair.left, n_sym, flip=True)
        self.halves = (self.dual, self.primal) if dual_first else (self.primal, self.dual)
        self.z_after_init: frozenset[tuple[int, int]] | None = None
        self.queue_after_init: tuple[tuple[int, int], ...] | None = None

    def initialize(self) -> None:
        self.primal.build()
        self.dual.build()
        self.primal.sweep()
        self.dual.sweep()
        self.z_after_init = self.state.z_pairs()
        self.queue_after_init = self.state.queue_pairs()

    def run(self, on_extract: Callable | None = None, verify: bool = False) -> Relation:
        if self.z_after_init is None:
            self.initialize()
        if verify:
            for half in self.halves:
                half.verify_structures()
        drain(self.state, self.halves, on_extract=on_extract, verify=verify)
        return self.result()

    def result(self) -> Relation:
        return Relation(self.state.z)


def instrumented_largest_directed_simulation(
    left: FuzzyGraph,
    right: FuzzyGraph,
    *,
    dual_first: bool = False,
    on_extract: Callable | None = None,
    verify: bool = False,
) -> tuple[Relation, InstrumentedDirectedSimulation]:
    engine = InstrumentedDirectedSimulation(left, right, dual_first=dual_first)
    relation = engine.run(on_extract=on_extract, verify=verify)
    return relation, engine
