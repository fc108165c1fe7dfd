"""Definition-level checkers and slow reference computations.

Everything in this module is deliberately unoptimized: direct quantifier
evaluation for the checkers, a global removal fixpoint, and a literal
set-based worklist.  These are the ground truth the fast engines are tested
against, so clarity beats speed throughout.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable

from .model import ZERO, Degree, FuzzyGraph, Relation, build_neighbor_index, label_leq

# Callback signatures for the worklist references:
#   on_init(z_pairs, queue_pairs)        after the initialization sweep(s)
#   on_extract(pair, z_pairs, queue_pairs)  after each queue extraction
InitHook = Callable[[frozenset, tuple], None]
ExtractHook = Callable[[tuple, frozenset, tuple], None]


@dataclass(frozen=True)
class Violation:
    """A concrete witness that a relation fails one defining condition.

    kind is one of ``label``, ``forward``, ``backward`` for graphs (the
    automata module adds its own kinds); witness holds the vertex names at
    which direct evaluation of the condition fails.
    """

    kind: str
    witness: tuple[str, ...]
    symbol: str | None = None

    def __str__(self) -> str:
        at = ", ".join(self.witness)
        tail = f" on symbol {self.symbol}" if self.symbol is not None else ""
        return f"{self.kind} violation at ({at}){tail}"


def _out_edges(graph: FuzzyGraph) -> dict[int, list[tuple[str, int, Degree]]]:
    """Per vertex: outgoing (symbol, target, degree), sorted by (symbol, target)."""
    out: dict[int, list[tuple[str, int, Degree]]] = {}
    for (x, r, y), deg in sorted(graph.edges.items()):
        out.setdefault(x, []).append((r, y, deg))
    return out


def _check(z: Relation, left: FuzzyGraph, right: FuzzyGraph, directed: bool) -> Violation | None:
    if (z.left_size, z.right_size) != (left.vertex_count, right.vertex_count):
        raise ValueError("relation shape does not match the graphs")
    out_left = _out_edges(left)
    out_right = _out_edges(right)
    for x, xp in z.pairs():
        if not label_leq(left.labels[x], right.labels[xp]):
            return Violation("label", (left.names[x], right.names[xp]))
        if directed:
            for r, yp, deg in out_right.get(xp, ()):
                if not any(
                    (y, yp) in z and deg <= left.edge_degree(x, r, y)
                    for y in range(left.vertex_count)
                ):
                    return Violation(
                        "backward", (left.names[x], right.names[xp], right.names[yp]), r
                    )
        for r, y, deg in out_left.get(x, ()):
            if not any(
                (y, yp) in z and deg <= right.edge_degree(xp, r, yp)
                for yp in range(right.vertex_count)
            ):
                return Violation("forward", (left.names[x], right.names[xp], left.names[y]), r)
    return None


def check_simulation(z: Relation, left: FuzzyGraph, right: FuzzyGraph) -> Violation | None:
    """None iff z satisfies the label and forward conditions everywhere.

    Pairs are scanned in row-major index order; within a pair the label
    condition is checked first, then forward edge instances sorted by
    (symbol, target).
    """
    return _check(z, left, right, directed=False)


def check_directed_simulation(z: Relation, left: FuzzyGraph, right: FuzzyGraph) -> Violation | None:
    """None iff z additionally satisfies the backward condition.

    Within a pair the scan order is label, then backward instances, then
    forward instances.
    """
    return _check(z, left, right, directed=True)


def _label_filtered_pairs(left: FuzzyGraph, right: FuzzyGraph) -> set[tuple[int, int]]:
    return {
        (x, xp)
        for x in range(left.vertex_count)
        for xp in range(right.vertex_count)
        if label_leq(left.labels[x], right.labels[xp])
    }


def _naive_fixpoint(left: FuzzyGraph, right: FuzzyGraph, directed: bool) -> Relation:
    z = _label_filtered_pairs(left, right)
    out_left = _out_edges(left)
    out_right = _out_edges(right)

    def violates(x: int, xp: int) -> bool:
        for r, y, deg in out_left.get(x, ()):
            if not any((y, yp) in z and deg <= right.edge_degree(xp, r, yp)
                       for yp in range(right.vertex_count)):
                return True
        if directed:
            for r, yp, deg in out_right.get(xp, ()):
                if not any((y, yp) in z and deg <= left.edge_degree(x, r, y)
                           for y in range(left.vertex_count)):
                    return True
        return False

    changed = True
    while changed:
        changed = False
        for x in range(left.vertex_count):
            for xp in range(right.vertex_count):
                if (x, xp) in z and violates(x, xp):
                    z.remove((x, xp))
                    changed = True
    return Relation.from_pairs(left.vertex_count, right.vertex_count, z)


def naive_largest_simulation(left: FuzzyGraph, right: FuzzyGraph) -> Relation:
    """Global removal fixpoint over the forward condition; the unique largest simulation."""
    return _naive_fixpoint(left, right, directed=False)


def naive_largest_directed_simulation(left: FuzzyGraph, right: FuzzyGraph) -> Relation:
    """As above with the forward and backward conditions enforced together."""
    return _naive_fixpoint(left, right, directed=True)


class _Worklist:
    """Literal set-based worklist: shared state for the abstract algorithms."""

    def __init__(self, left: FuzzyGraph, right: FuzzyGraph, order: str):
        if order not in ("fifo", "lifo"):
            raise ValueError("order must be 'fifo' or 'lifo'")
        self.left = left
        self.right = right
        self.order = order
        self.index_left = build_neighbor_index(left)
        self.index_right = build_neighbor_index(right)
        self.symbols = tuple(sorted(set(left.edge_symbols()) | set(right.edge_symbols())))
        self.z = _label_filtered_pairs(left, right)
        self.queue: deque[tuple[int, int]] = deque()
        self.queued: set[tuple[int, int]] = set()

    def move_to_remove(self, pair: tuple[int, int]) -> None:
        self.z.remove(pair)
        self.queue.append(pair)
        self.queued.add(pair)

    def extract(self) -> tuple[int, int]:
        pair = self.queue.popleft() if self.order == "fifo" else self.queue.pop()
        self.queued.remove(pair)
        return pair

    def in_z_or_remove(self, pair: tuple[int, int]) -> bool:
        return pair in self.z or pair in self.queued

    def process_prev(self, r: str, y: int, xp: int) -> None:
        # d = sup of E'(x',r,y') over witnesses y' still in Z or pending removal
        d = ZERO
        for yp in self.index_right.next_(r, xp):
            if self.in_z_or_remove((y, yp)):
                deg = self.right.edges[(xp, r, yp)]
                if deg > d:
                    d = deg
        for x in self.index_left.prev(r, y):
            if self.left.edges[(x, r, y)] > d and (x, xp) in self.z:
                self.move_to_remove((x, xp))

    def process_prev_dual(self, r: str, x: int, yp: int) -> None:
        d = ZERO
        for y in self.index_left.next_(r, x):
            if self.in_z_or_remove((y, yp)):
                deg = self.left.edges[(x, r, y)]
                if deg > d:
                    d = deg
        for xp in self.index_right.prev(r, yp):
            if self.right.edges[(xp, r, yp)] > d and (x, xp) in self.z:
                self.move_to_remove((x, xp))

    def snapshot(self) -> tuple[frozenset, tuple]:
        return frozenset(self.z), tuple(self.queue)

    def result(self) -> Relation:
        return Relation.from_pairs(self.left.vertex_count, self.right.vertex_count, self.z)


def worklist_largest_simulation(
    left: FuzzyGraph,
    right: FuzzyGraph,
    *,
    order: str = "fifo",
    on_init: InitHook | None = None,
    on_extract: ExtractHook | None = None,
) -> Relation:
    """Abstract worklist computation of the largest simulation.

    Initializes Z to the label-compatible pairs, sweeps every (r, y, x')
    triple once, then drains the remove queue, reprocessing the predecessors
    of each extracted pair.  The extraction order (fifo by default) does not
    affect the result.
    """
    w = _Worklist(left, right, order)
    for r in w.symbols:
        for y in range(left.vertex_count):
            for xp in range(right.vertex_count):
                w.process_prev(r, y, xp)
    if on_init is not None:
        on_init(*w.snapshot())
    while w.queue:
        y, yp = w.extract()
        for r in w.symbols:
            for xp in w.index_right.prev(r, yp):
                w.process_prev(r, y, xp)
        if on_extract is not None:
            on_extract((y, yp), *w.snapshot())
    return w.result()


def worklist_largest_directed_simulation(
    left: FuzzyGraph,
    right: FuzzyGraph,
    *,
    order: str = "fifo",
    on_init: InitHook | None = None,
    on_extract: ExtractHook | None = None,
) -> Relation:
    """Abstract worklist computation of the largest directed simulation.

    Extends the plain sweep with the dual sweep over (r, x, y') triples and
    fires both refinement passes for every extracted pair.
    """
    w = _Worklist(left, right, order)
    for r in w.symbols:
        for y in range(left.vertex_count):
            for xp in range(right.vertex_count):
                w.process_prev(r, y, xp)
    for r in w.symbols:
        for x in range(left.vertex_count):
            for yp in range(right.vertex_count):
                w.process_prev_dual(r, x, yp)
    if on_init is not None:
        on_init(*w.snapshot())
    while w.queue:
        y, yp = w.extract()
        for r in w.symbols:
            for xp in w.index_right.prev(r, yp):
                w.process_prev(r, y, xp)
        for r in w.symbols:
            for x in w.index_left.prev(r, y):
                w.process_prev_dual(r, x, yp)
        if on_extract is not None:
            on_extract((y, yp), *w.snapshot())
    return w.result()
