"""Flat array form of a graph pair, shared by the fast and instrumented engines.

Degrees are rank-compressed: the distinct degree values of both graphs
(edges and labels, plus 0) are sorted exactly and replaced by their position
in that order.  The engines only compare and maximise degrees, so working on
ranks is equivalent to working on the exact values, and it keeps every hot
array an integer array.

Neighbor vectors are stored CSR-style per (symbol, vertex) slot, sorted
ascending by (degree rank, neighbor index).  Every nonzero edge also gets an
id assigned in lexicographic (source, symbol, target) index order; ids are
how list elements are addressed in constant time.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .model import ZERO, FuzzyGraph


@dataclass(frozen=True)
class PackedGraph:
    n: int
    n_edges: int
    # CSR over (symbol, source): successors with degree ranks and edge ids
    next_start: np.ndarray
    next_v: np.ndarray
    next_deg: np.ndarray
    next_eid: np.ndarray
    # CSR over (symbol, target): predecessors
    prev_start: np.ndarray
    prev_v: np.ndarray
    prev_deg: np.ndarray
    prev_eid: np.ndarray
    # degree rank per edge id
    eid_deg: np.ndarray

    def next_entries(self, r: int, x: int) -> list[tuple[int, int, int]]:
        """(target, degree rank, edge id) triples of slot (r, x), in slot order."""
        s, e = self.next_start[r * self.n + x], self.next_start[r * self.n + x + 1]
        return [
            (int(self.next_v[k]), int(self.next_deg[k]), int(self.next_eid[k]))
            for k in range(s, e)
        ]

    def prev_entries(self, r: int, y: int) -> list[tuple[int, int, int]]:
        """(source, degree rank, edge id) triples of slot (r, y), in slot order."""
        s, e = self.prev_start[r * self.n + y], self.prev_start[r * self.n + y + 1]
        return [
            (int(self.prev_v[k]), int(self.prev_deg[k]), int(self.prev_eid[k]))
            for k in range(s, e)
        ]


@dataclass(frozen=True)
class PackedPair:
    symbols: tuple[str, ...]
    nl: int
    nr: int
    left: PackedGraph
    right: PackedGraph
    z0: np.ndarray  # uint8 table of label-compatible pairs
    values: tuple[Fraction, ...]  # rank -> exact degree, values[0] == 0


def _pack_graph(graph: FuzzyGraph, symbol_index: dict[str, int], rank: dict) -> PackedGraph:
    n = graph.vertex_count
    n_sym = len(symbol_index)
    m = graph.nonzero_edge_count
    ex = np.empty(m, np.int32)
    er = np.empty(m, np.int32)
    ey = np.empty(m, np.int32)
    edeg = np.empty(m, np.int32)
    for i, ((x, r, y), deg) in enumerate(graph.edges.items()):
        ex[i] = x
        er[i] = symbol_index[r]
        ey[i] = y
        edeg[i] = rank[deg]

    order = np.lexsort((ey, er, ex))
    eid = np.empty(m, np.int32)
    eid[order] = np.arange(m, dtype=np.int32)
    eid_deg = np.empty(m, np.int32)
    eid_deg[eid] = edeg

    def csr(slot_of: np.ndarray, vertex: np.ndarray, tiebreak: np.ndarray):
        start = np.zeros(n_sym * n + 1, np.int64)
        np.add.at(start, slot_of + 1, 1)
        np.cumsum(start, out=start)
        order = np.lexsort((tiebreak, edeg, slot_of))
        return start, vertex[order].astype(np.int32), edeg[order], eid[order]

    next_start, next_v, next_deg, next_eid = csr(er * n + ex, ey, ey)
    prev_start, prev_v, prev_deg, prev_eid = csr(er * n + ey, ex, ex)
    return PackedGraph(
        n, m,
        next_start, next_v, next_deg, next_eid,
        prev_start, prev_v, prev_deg, prev_eid,
        eid_deg,
    )


def pack_pair(left: FuzzyGraph, right: FuzzyGraph) -> PackedPair:
    symbols = tuple(sorted(set(left.edge_symbols()) | set(right.edge_symbols())))
    symbol_index = {r: i for i, r in enumerate(symbols)}

    degrees = {ZERO}
    for g in (left, right):
        degrees.update(g.edges.values())
        for lab in g.labels:
            degrees.update(lab.values())
    values = tuple(sorted(degrees))
    rank = {v: i for i, v in enumerate(values)}

    label_syms = tuple(sorted(set(left.label_symbols()) | set(right.label_symbols())))
    nl, nr = left.vertex_count, right.vertex_count
    z0 = np.ones((nl, nr), np.uint8)
    for sym in label_syms:
        col_l = np.fromiter(
            (rank[lab.get(sym, ZERO)] for lab in left.labels), np.int32, count=nl
        )
        col_r = np.fromiter(
            (rank[lab.get(sym, ZERO)] for lab in right.labels), np.int32, count=nr
        )
        z0 &= col_l[:, None] <= col_r[None, :]

    return PackedPair(
        symbols,
        nl,
        nr,
        _pack_graph(left, symbol_index, rank),
        _pack_graph(right, symbol_index, rank),
        z0,
        values,
    )
