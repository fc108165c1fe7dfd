"""Fuzzy labeled graphs, crisp relations, and the shared text formats.

Degrees are membership grades in [0, 1], parsed from decimal literals into
`fractions.Fraction` so that every comparison is exact.  Nothing in this
package ever adds or multiplies degrees; they are only ordered and maximised,
which is why an exact total-order representation is all that is needed.

All values defined here are immutable after construction and safe to share
between threads.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

import numpy as np

Degree = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)

_DECIMAL = re.compile(r"\A[0-9]+(?:\.[0-9]+)?\Z")
_TOKEN = re.compile(r"\S+")


class ParseError(ValueError):
    """Malformed input document (graph, automaton, or relation file)."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + where)


def parse_degree(token: str, line: int | None = None, column: int | None = None) -> Degree:
    """Parse a decimal literal in [0, 1] exactly."""
    if not _DECIMAL.match(token):
        raise ParseError(f"expected a decimal degree, got {token!r}", line, column)
    value = Fraction(token)
    if value > ONE:
        raise ParseError(f"degree {token} outside [0, 1]", line, column)
    return value


def degree_to_decimal(value: Degree) -> str:
    """Render a degree as the shortest exact decimal literal.

    Only degrees whose denominator divides a power of ten are representable;
    everything parsed from the text formats is.
    """
    if not ZERO <= value <= ONE:
        raise ValueError(f"degree {value} outside [0, 1]")
    den = value.denominator
    if den == 1:
        return str(value.numerator)
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        raise ValueError(f"degree {value} has no finite decimal form")
    digits = max(twos, fives)
    scaled = value.numerator * 10**digits // value.denominator
    text = str(scaled).rjust(digits + 1, "0")
    return f"{text[:-digits]}.{text[-digits:]}"


def _as_degree(value) -> Degree:
    if isinstance(value, float):
        raise TypeError("degrees must be exact: pass a str, int, or Fraction, not float")
    return Fraction(value)


def label_leq(lx: Mapping[str, Degree], lx2: Mapping[str, Degree]) -> bool:
    """Pointwise order on vertex-label maps; missing symbols read as 0."""
    for sym, deg in lx.items():
        if deg > lx2.get(sym, ZERO):
            return False
    return True


@dataclass(frozen=True)
class FuzzyGraph:
    """Finite fuzzy labeled graph: vertex set, fuzzy labeled edges, fuzzy vertex labels.

    ``names[i]`` is the external name of vertex ``i``; ``labels[i]`` maps
    vertex-label symbols to nonzero degrees; ``edges`` maps
    ``(source, symbol, target)`` index triples to nonzero degrees.  A degree
    of zero means absence and is never stored.
    """

    names: tuple[str, ...]
    labels: tuple[Mapping[str, Degree], ...]
    edges: Mapping[tuple[int, str, int], Degree]
    _index: Mapping[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.labels) != len(self.names):
            raise ValueError("exactly one label map per vertex is required")
        index: dict[str, int] = {}
        for i, name in enumerate(self.names):
            if name in index:
                raise ValueError(f"duplicate vertex name {name!r}")
            index[name] = i
        n = len(self.names)
        for lab in self.labels:
            for deg in lab.values():
                if not ZERO < deg <= ONE:
                    raise ValueError(f"stored label degree {deg} outside (0, 1]")
        for (x, _, y), deg in self.edges.items():
            if not (0 <= x < n and 0 <= y < n):
                raise ValueError(f"edge endpoint out of range: ({x}, {y})")
            if not ZERO < deg <= ONE:
                raise ValueError(f"stored edge degree {deg} outside (0, 1]")
        object.__setattr__(self, "_index", index)

    @classmethod
    def from_data(
        cls,
        names: Iterable[str],
        labels: Mapping[str, Mapping[str, object]] | None = None,
        edges: Iterable[tuple[str, str, str, object]] = (),
    ) -> "FuzzyGraph":
        """Build a graph from named data; zero-degree entries are dropped."""
        names = tuple(names)
        index = {name: i for i, name in enumerate(names)}
        label_maps: list[dict[str, Degree]] = [{} for _ in names]
        for vname, lab in (labels or {}).items():
            for sym, raw in lab.items():
                deg = _as_degree(raw)
                if deg != ZERO:
                    label_maps[index[vname]][sym] = deg
        edge_map: dict[tuple[int, str, int], Degree] = {}
        for xname, sym, yname, raw in edges:
            deg = _as_degree(raw)
            key = (index[xname], sym, index[yname])
            if key in edge_map:
                raise ValueError(f"duplicate edge ({xname}, {sym}, {yname})")
            if deg != ZERO:
                edge_map[key] = deg
        return cls(names, tuple(label_maps), edge_map)

    @property
    def vertex_count(self) -> int:
        return len(self.names)

    @property
    def nonzero_edge_count(self) -> int:
        return len(self.edges)

    def index(self, name: str) -> int:
        return self._index[name]

    def has_vertex(self, name: str) -> bool:
        return name in self._index

    def edge_degree(self, x: int, symbol: str, y: int) -> Degree:
        return self.edges.get((x, symbol, y), ZERO)

    def edge_symbols(self) -> tuple[str, ...]:
        return tuple(sorted({r for (_, r, _) in self.edges}))

    def label_symbols(self) -> tuple[str, ...]:
        return tuple(sorted({s for lab in self.labels for s in lab}))


@dataclass(frozen=True)
class NeighborIndex:
    """Successor/predecessor vectors per (edge symbol, vertex).

    Each vector is sorted ascending by the degree of the connecting edge,
    ties broken by ascending vertex index, so rebuilding always reproduces
    the same order.
    """

    next_map: Mapping[tuple[str, int], tuple[int, ...]]
    prev_map: Mapping[tuple[str, int], tuple[int, ...]]

    def next_(self, symbol: str, x: int) -> tuple[int, ...]:
        return self.next_map.get((symbol, x), ())

    def prev(self, symbol: str, y: int) -> tuple[int, ...]:
        return self.prev_map.get((symbol, y), ())


def build_neighbor_index(graph: FuzzyGraph) -> NeighborIndex:
    next_buckets: dict[tuple[str, int], list[tuple[Degree, int]]] = {}
    prev_buckets: dict[tuple[str, int], list[tuple[Degree, int]]] = {}
    for (x, r, y), deg in graph.edges.items():
        next_buckets.setdefault((r, x), []).append((deg, y))
        prev_buckets.setdefault((r, y), []).append((deg, x))
    next_map = {key: tuple(v for _, v in sorted(entries)) for key, entries in next_buckets.items()}
    prev_map = {key: tuple(v for _, v in sorted(entries)) for key, entries in prev_buckets.items()}
    return NeighborIndex(next_map, prev_map)


class Relation:
    """Crisp binary relation over two indexed vertex sets, as a dense boolean table."""

    __slots__ = ("left_size", "right_size", "table")

    def __init__(self, table: np.ndarray):
        table = np.asarray(table, dtype=bool)
        if table.ndim != 2:
            raise ValueError("relation table must be two-dimensional")
        table = np.ascontiguousarray(table)
        table.setflags(write=False)
        self.table = table
        self.left_size, self.right_size = table.shape

    @classmethod
    def empty(cls, left_size: int, right_size: int) -> "Relation":
        return cls(np.zeros((left_size, right_size), dtype=bool))

    @classmethod
    def full(cls, left_size: int, right_size: int) -> "Relation":
        return cls(np.ones((left_size, right_size), dtype=bool))

    @classmethod
    def from_pairs(cls, left_size: int, right_size: int, pairs: Iterable[tuple[int, int]]) -> "Relation":
        table = np.zeros((left_size, right_size), dtype=bool)
        for x, y in pairs:
            table[x, y] = True
        return cls(table)

    def __contains__(self, pair: tuple[int, int]) -> bool:
        x, y = pair
        return 0 <= x < self.left_size and 0 <= y < self.right_size and bool(self.table[x, y])

    def pairs(self) -> Iterator[tuple[int, int]]:
        """Member pairs in row-major index order."""
        for x, y in np.argwhere(self.table):
            yield int(x), int(y)

    def to_frozenset(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.pairs())

    def __len__(self) -> int:
        return int(self.table.sum())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Relation):
            return NotImplemented
        return self.table.shape == other.table.shape and bool(np.array_equal(self.table, other.table))

    def __hash__(self):
        return hash((self.table.shape, self.table.tobytes()))

    def __repr__(self) -> str:
        return f"Relation({self.left_size}x{self.right_size}, {len(self)} pairs)"

    def issubset(self, other: "Relation") -> bool:
        if (self.left_size, self.right_size) != (other.left_size, other.right_size):
            raise ValueError("relation shapes differ")
        return not np.any(self.table & ~other.table)

    def compose(self, other: "Relation") -> "Relation":
        if self.right_size != other.left_size:
            raise ValueError("inner sizes differ")
        product = self.table.astype(np.uint8) @ other.table.astype(np.uint8)
        return Relation(product > 0)

    def restrict(self, left_size: int, right_size: int) -> "Relation":
        return Relation(self.table[:left_size, :right_size].copy())

    def is_reflexive(self) -> bool:
        if self.left_size != self.right_size:
            return False
        return bool(np.all(np.diagonal(self.table)))

    def is_transitive(self) -> bool:
        if self.left_size != self.right_size:
            return False
        return self.compose(self).issubset(self)


def format_relation(relation: Relation, left_names: tuple[str, ...], right_names: tuple[str, ...]) -> str:
    """One ``x x'`` line per member pair, sorted lexicographically by names."""
    if (relation.left_size, relation.right_size) != (len(left_names), len(right_names)):
        raise ValueError("relation shape does not match the name maps")
    lines = sorted((left_names[x], right_names[y]) for x, y in relation.pairs())
    return "".join(f"{a} {b}\n" for a, b in lines)


def parse_relation(text: str, left: FuzzyGraph, right: FuzzyGraph) -> Relation:
    """Parse a relation document: one pair of vertex names per line."""
    table = np.zeros((left.vertex_count, right.vertex_count), dtype=bool)
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        tokens = [(m.group(), m.start() + 1) for m in _TOKEN.finditer(line)]
        if not tokens:
            continue
        if len(tokens) != 2:
            raise ParseError("expected two vertex names per line", lineno, tokens[0][1])
        (a, col_a), (b, col_b) = tokens
        if not left.has_vertex(a):
            raise ParseError(f"unknown vertex {a!r} in the left graph", lineno, col_a)
        if not right.has_vertex(b):
            raise ParseError(f"unknown vertex {b!r} in the right graph", lineno, col_b)
        table[left.index(a), right.index(b)] = True
    return Relation(table)


def parse_graph(text: str) -> FuzzyGraph:
    """Parse the line-oriented graph format.

    Directives: ``vertex <name>``, ``label <vertex> <symbol> <degree>``,
    ``edge <from> <symbol> <to> <degree>``.  ``#`` starts a comment, blank
    lines are ignored, and names are interned in first-appearance order.
    Zero-degree label and edge lines are accepted and dropped; duplicate
    label or edge lines are errors.
    """
    names: list[str] = []
    index: dict[str, int] = {}
    labels: list[dict[str, Degree]] = []
    edges: dict[tuple[int, str, int], Degree] = {}
    seen_labels: set[tuple[int, str]] = set()
    seen_edges: set[tuple[int, str, int]] = set()

    def intern(name: str) -> int:
        vid = index.get(name)
        if vid is None:
            vid = len(names)
            index[name] = vid
            names.append(name)
            labels.append({})
        return vid

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        tokens = [(m.group(), m.start() + 1) for m in _TOKEN.finditer(line)]
        if not tokens:
            continue
        directive, col = tokens[0]
        if directive == "vertex":
            if len(tokens) != 2:
                raise ParseError("vertex takes exactly one name", lineno, col)
            intern(tokens[1][0])
        elif directive == "label":
            if len(tokens) != 4:
                raise ParseError("label takes <vertex> <symbol> <degree>", lineno, col)
            (vname, _), (sym, _), (deg_tok, deg_col) = tokens[1], tokens[2], tokens[3]
            deg = parse_degree(deg_tok, lineno, deg_col)
            vid = intern(vname)
            if (vid, sym) in seen_labels:
                raise ParseError(f"duplicate label entry for ({vname}, {sym})", lineno, col)
            seen_labels.add((vid, sym))
            if deg != ZERO:
                labels[vid][sym] = deg
        elif directive == "edge":
            if len(tokens) != 5:
                raise ParseError("edge takes <from> <symbol> <to> <degree>", lineno, col)
            (xname, _), (sym, _), (yname, _), (deg_tok, deg_col) = tokens[1:5]
            deg = parse_degree(deg_tok, lineno, deg_col)
            key = (intern(xname), sym, intern(yname))
            if key in seen_edges:
                raise ParseError(f"duplicate edge line for ({xname}, {sym}, {yname})", lineno, col)
            seen_edges.add(key)
            if deg != ZERO:
                edges[key] = deg
        else:
            raise ParseError(f"unknown directive {directive!r}", lineno, col)

    return FuzzyGraph(tuple(names), tuple(labels), edges)


def format_graph(graph: FuzzyGraph) -> str:
    """Serialize a graph so that parse_graph reproduces it exactly."""
    out: list[str] = []
    for name in graph.names:
        out.append(f"vertex {name}")
    for vid, lab in enumerate(graph.labels):
        for sym in sorted(lab):
            out.append(f"label {graph.names[vid]} {sym} {degree_to_decimal(lab[sym])}")
    for (x, r, y) in sorted(graph.edges):
        deg = graph.edges[(x, r, y)]
        out.append(f"edge {graph.names[x]} {r} {graph.names[y]} {degree_to_decimal(deg)}")
    return "".join(line + "\n" for line in out)
