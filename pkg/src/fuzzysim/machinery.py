"""Instrumented twin of the refinement machinery.

This is the same algorithm the compiled kernels run, kept in plain Python
with explicit doubly linked lists so that tests can observe intermediate
states (the Z table and remove queue after initialization, every extraction,
every removal) and verify the structure invariants at any point.  It is used
at small scale only; the compiled engines are the production path and the
test suite asserts the two always agree.
"""

from __future__ import annotations

from collections import deque
from typing import Callable, Iterator

import numpy as np

from .packing import PackedGraph, PackedPair


class ListNode:
    __slots__ = ("key", "eid", "prev", "next")

    def __init__(self, key: int, eid: int):
        self.key = key
        self.eid = eid
        self.prev: ListNode | None = None
        self.next: ListNode | None = None


class LinkedList:
    """Doubly linked list with O(1) deletion of a held node."""

    __slots__ = ("head", "tail")

    def __init__(self):
        self.head: ListNode | None = None
        self.tail: ListNode | None = None

    def append(self, node: ListNode) -> None:
        node.prev = self.tail
        node.next = None
        if self.tail is not None:
            self.tail.next = node
        else:
            self.head = node
        self.tail = node

    def delete(self, node: ListNode) -> None:
        if node.prev is not None:
            node.prev.next = node.next
        else:
            self.head = node.next
        if node.next is not None:
            node.next.prev = node.prev
        else:
            self.tail = node.prev
        node.prev = node.next = None

    def keys(self) -> Iterator[int]:
        node = self.head
        while node is not None:
            yield node.key
            node = node.next


class PairState:
    """Shared Z table, remove queue, and event trace for one engine run."""

    def __init__(self, pair: PackedPair):
        self.pair = pair
        self.z = pair.z0.copy()
        self.queue: deque[tuple[int, int]] = deque()
        self.queued: set[tuple[int, int]] = set()
        self.events: list[tuple] = []

    def in_z(self, left: int, right: int) -> bool:
        return bool(self.z[left, right])

    def in_z_or_queue(self, left: int, right: int) -> bool:
        return bool(self.z[left, right]) or (left, right) in self.queued

    def remove_pair(self, left: int, right: int) -> None:
        self.z[left, right] = 0
        self.queue.append((left, right))
        self.queued.add((left, right))
        self.events.append(("pop", left, right))

    def extract(self) -> tuple[int, int]:
        pair = self.queue.popleft()
        self.queued.discard(pair)
        self.events.append(("extract", *pair))
        return pair

    def z_pairs(self) -> frozenset[tuple[int, int]]:
        return frozenset((int(a), int(b)) for a, b in np.argwhere(self.z))

    def queue_pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple(self.queue)


class Half:
    """One orientation of the refinement structures over triples (r, p, w).

    ``p_graph`` supplies the candidate vectors (predecessors of p),
    ``w_graph`` the witness lists (successors of w).  ``flip`` maps the
    half-local (P-vertex, W-vertex) pairs onto the shared left-right Z table:
    the plain half stores pairs as given, the dual half swapped.
    """

    def __init__(self, state: PairState, p_graph: PackedGraph, w_graph: PackedGraph,
                 n_sym: int, flip: bool):
        self.state = state
        self.p_graph = p_graph
        self.w_graph = w_graph
        self.n_sym = n_sym
        self.flip = flip
        self.lists: dict[tuple[int, int, int], LinkedList] = {}
        self.elem: dict[tuple[int, int], ListNode] = {}
        self.vectors: dict[tuple[int, int, int], list[tuple[int, int]]] = {}

    def _oriented(self, p_side: int, w_side: int) -> tuple[int, int]:
        return (w_side, p_side) if self.flip else (p_side, w_side)

    def build(self) -> None:
        """Construct all vectors and lists from the current Z, preserving slot order."""
        state = self.state
        for r in range(self.n_sym):
            for p in range(self.p_graph.n):
                preds = self.p_graph.prev_entries(r, p)
                for w in range(self.w_graph.n):
                    key = (r, p, w)
                    self.vectors[key] = [
                        (deg, x) for x, deg, _ in preds if state.in_z(*self._oriented(x, w))
                    ]
                    lst = LinkedList()
                    for yp, _, eid in self.w_graph.next_entries(r, w):
                        if state.in_z(*self._oriented(p, yp)):
                            node = ListNode(yp, eid)
                            lst.append(node)
                            self.elem[(p, eid)] = node
                    self.lists[key] = lst

    def bound(self, r: int, p: int, w: int) -> int:
        """Current degree-rank bound: the last (largest) witness, 0 if none."""
        tail = self.lists[(r, p, w)].tail
        return 0 if tail is None else int(self.w_graph.eid_deg[tail.eid])

    def update(self, r: int, p: int, w: int) -> int:
        """Pop vector entries above the bound, removing their pairs from Z."""
        d = self.bound(r, p, w)
        vector = self.vectors[(r, p, w)]
        pops = 0
        while vector and vector[-1][0] > d:
            _, x = vector.pop()
            pops += 1
            left, right = self._oriented(x, w)
            if self.state.in_z(left, right):
                self.state.remove_pair(left, right)
        return pops

    def sweep(self) -> None:
        for r in range(self.n_sym):
            for p in range(self.p_graph.n):
                for w in range(self.w_graph.n):
                    self.update(r, p, w)

    def handle_extract(self, left: int, right: int) -> None:
        """Drop the extracted pair from every list it appears in, then update."""
        p_side, w_elem = (right, left) if self.flip else (left, right)
        for r in range(self.n_sym):
            for w, _, eid in self.w_graph.prev_entries(r, w_elem):
                node = self.elem.pop((p_side, eid), None)
                assert node is not None, "extracted pair missing from a witness list"
                self.lists[(r, p_side, w)].delete(node)
                self.update(r, p_side, w)

    def verify_structures(self) -> None:
        """Assert the structure specifications (kernels enforce these implicitly).

        Lists must hold exactly the witnesses whose pair is in Z or queued, in
        slot order; vector entries must respect the current bound; and every
        predecessor whose pair is still in Z must still be present in its
        vector.
        """
        state = self.state
        for r in range(self.n_sym):
            for p in range(self.p_graph.n):
                preds = self.p_graph.prev_entries(r, p)
                for w in range(self.w_graph.n):
                    key = (r, p, w)
                    expected = [
                        yp for yp, _, _ in self.w_graph.next_entries(r, w)
                        if state.in_z_or_queue(*self._oriented(p, yp))
                    ]
                    assert list(self.lists[key].keys()) == expected, f"list {key} out of spec"
                    d = self.bound(r, p, w)
                    vector = self.vectors[key]
                    assert all(vector[i][0] <= vector[i + 1][0] for i in range(len(vector) - 1))
                    if vector:
                        assert vector[-1][0] <= d, f"vector {key} above bound"
                    members = {x for _, x in vector}
                    for x, _, _ in preds:
                        if state.in_z(*self._oriented(x, w)):
                            assert x in members, f"live pair missing from vector {key}"


def drain(state: PairState, halves: tuple[Half, ...],
          on_extract: Callable | None = None, verify: bool = False) -> list[tuple[int, int]]:
    """Process the queue to exhaustion, firing every half per extraction."""
    extractions: list[tuple[int, int]] = []
    while state.queue:
        left, right = state.extract()
        extractions.append((left, right))
        for half in halves:
            half.handle_extract(left, right)
        if verify:
            for half in halves:
                half.verify_structures()
        if on_extract is not None:
            on_extract(state, (left, right))
    return extractions
