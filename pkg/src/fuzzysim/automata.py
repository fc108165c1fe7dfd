"""Fuzzy-automata front end: graph encoding and automata-level simulations.

A fuzzy automaton is encoded as a fuzzy graph by adding one synthetic source
vertex (edges carrying the initial degrees, once per alphabet symbol) and one
synthetic sink vertex (edges carrying the terminal degrees).  The synthetic
vertices are identified by marker vertex labels, and every ordinary state
carries a third marker so that states can only ever be related to states:
without it, a state with no outgoing edges may pair with the synthetic sink
and act as a spurious witness, and the engine result would no longer match
the automata-level fixpoint.

Degree comparisons in all automata-level conditions are non-strict.  The
``strict`` flag on the definitional checkers switches them to strict ``<``
for side-by-side study; the engines and fixpoints always use ``<=``, which is
what makes the encoding correspondence hold on equal degrees.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .directed import compute_largest_directed_simulation
from .model import (
    ZERO,
    Degree,
    FuzzyGraph,
    ParseError,
    Relation,
    _as_degree,
    parse_degree,
)
from .oracle import Violation
from .simulation import compute_largest_simulation

RESERVED_PREFIX = "@"
INIT_VERTEX = "@initial"
FINAL_VERTEX = "@final"
INIT_MARK = "i"
FINAL_MARK = "f"
STATE_MARK = "s"

_TOKEN = re.compile(r"\S+")


class AlphabetMismatchError(ValueError):
    """The two automata do not use the same transition alphabet."""


class EncodingError(ValueError):
    """The automaton cannot be encoded as a fuzzy graph."""


@dataclass(frozen=True)
class FuzzyAutomaton:
    """Finite fuzzy automaton: states, fuzzy transitions, fuzzy initial and terminal sets.

    ``alphabet`` is the set of symbols appearing in the transitions (sorted);
    ``transitions`` stores only nonzero degrees, as do ``initial`` and
    ``terminal``.
    """

    names: tuple[str, ...]
    transitions: Mapping[tuple[int, str, int], Degree]
    initial: Mapping[int, Degree]
    terminal: Mapping[int, Degree]
    _index: Mapping[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not self.names:
            raise ValueError("an automaton needs at least one state")
        index: dict[str, int] = {}
        for i, name in enumerate(self.names):
            if name in index:
                raise ValueError(f"duplicate state name {name!r}")
            index[name] = i
        n = len(self.names)
        for (x, _, y), deg in self.transitions.items():
            if not (0 <= x < n and 0 <= y < n):
                raise ValueError("transition endpoint out of range")
            if not ZERO < deg <= 1:
                raise ValueError(f"stored transition degree {deg} outside (0, 1]")
        for mapping in (self.initial, self.terminal):
            for x, deg in mapping.items():
                if not 0 <= x < n:
                    raise ValueError("state index out of range")
                if not ZERO < deg <= 1:
                    raise ValueError(f"stored degree {deg} outside (0, 1]")
        object.__setattr__(self, "_index", index)

    @classmethod
    def from_data(
        cls,
        names: Iterable[str],
        transitions: Iterable[tuple[str, str, str, object]] = (),
        initial: Mapping[str, object] | None = None,
        terminal: Mapping[str, object] | None = None,
    ) -> "FuzzyAutomaton":
        names = tuple(names)
        index = {name: i for i, name in enumerate(names)}
        delta: dict[tuple[int, str, int], Degree] = {}
        for x, sym, y, raw in transitions:
            deg = _as_degree(raw)
            key = (index[x], sym, index[y])
            if key in delta:
                raise ValueError(f"duplicate transition ({x}, {sym}, {y})")
            if deg != ZERO:
                delta[key] = deg
        sigma = {index[x]: _as_degree(d) for x, d in (initial or {}).items() if _as_degree(d) != ZERO}
        tau = {index[x]: _as_degree(d) for x, d in (terminal or {}).items() if _as_degree(d) != ZERO}
        return cls(names, delta, sigma, tau)

    @property
    def state_count(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self._index[name]

    def alphabet(self) -> tuple[str, ...]:
        return tuple(sorted({r for (_, r, _) in self.transitions}))

    def transition_degree(self, x: int, symbol: str, y: int) -> Degree:
        return self.transitions.get((x, symbol, y), ZERO)


def parse_automaton(text: str) -> FuzzyAutomaton:
    """Parse the automaton format: ``state``, ``initial``, ``terminal``, ``trans`` lines.

    Same comment, degree, and duplicate rules as the graph format.  State
    names starting with ``@`` are reserved for the encoding's synthetic
    vertices.
    """
    names: list[str] = []
    index: dict[str, int] = {}
    delta: dict[tuple[int, str, int], Degree] = {}
    sigma: dict[int, Degree] = {}
    tau: dict[int, Degree] = {}
    seen_trans: set[tuple[int, str, int]] = set()
    seen_initial: set[int] = set()
    seen_terminal: set[int] = set()

    def intern(name: str, line: int, col: int) -> int:
        if name.startswith(RESERVED_PREFIX):
            raise ParseError(f"state name {name!r} uses the reserved prefix {RESERVED_PREFIX!r}", line, col)
        sid = index.get(name)
        if sid is None:
            sid = len(names)
            index[name] = sid
            names.append(name)
        return sid

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        tokens = [(m.group(), m.start() + 1) for m in _TOKEN.finditer(line)]
        if not tokens:
            continue
        directive, col = tokens[0]
        if directive == "state":
            if len(tokens) != 2:
                raise ParseError("state takes exactly one name", lineno, col)
            intern(tokens[1][0], lineno, tokens[1][1])
        elif directive in ("initial", "terminal"):
            if len(tokens) != 3:
                raise ParseError(f"{directive} takes <state> <degree>", lineno, col)
            (sname, scol), (deg_tok, deg_col) = tokens[1], tokens[2]
            deg = parse_degree(deg_tok, lineno, deg_col)
            sid = intern(sname, lineno, scol)
            seen = seen_initial if directive == "initial" else seen_terminal
            if sid in seen:
                raise ParseError(f"duplicate {directive} entry for {sname}", lineno, col)
            seen.add(sid)
            if deg != ZERO:
                (sigma if directive == "initial" else tau)[sid] = deg
        elif directive == "trans":
            if len(tokens) != 5:
                raise ParseError("trans takes <from> <symbol> <to> <degree>", lineno, col)
            (xname, xcol), (sym, _), (yname, ycol), (deg_tok, deg_col) = tokens[1:5]
            deg = parse_degree(deg_tok, lineno, deg_col)
            key = (intern(xname, lineno, xcol), sym, intern(yname, lineno, ycol))
            if key in seen_trans:
                raise ParseError(f"duplicate transition line for ({xname}, {sym}, {yname})", lineno, col)
            seen_trans.add(key)
            if deg != ZERO:
                delta[key] = deg
        else:
            raise ParseError(f"unknown directive {directive!r}", lineno, col)

    if not names:
        raise ParseError("an automaton needs at least one state")
    return FuzzyAutomaton(tuple(names), delta, sigma, tau)


@dataclass(frozen=True)
class EncodedAutomaton:
    graph: FuzzyGraph
    init_index: int
    final_index: int


def encode(automaton: FuzzyAutomaton) -> EncodedAutomaton:
    """The fuzzy graph corresponding to an automaton.

    Adds the synthetic source and sink after the states, connects them with
    one edge per alphabet symbol and supported state, and marks the three
    vertex classes with the reserved label symbols.
    """
    alphabet = automaton.alphabet()
    if not alphabet:
        raise EncodingError("cannot encode an automaton with an empty alphabet (no transitions)")
    for name in automaton.names:
        if name.startswith(RESERVED_PREFIX):
            raise EncodingError(f"state name {name!r} collides with the reserved prefix")
    n = automaton.state_count
    names = automaton.names + (INIT_VERTEX, FINAL_VERTEX)
    labels = tuple({STATE_MARK: Degree(1)} for _ in range(n)) + (
        {INIT_MARK: Degree(1)},
        {FINAL_MARK: Degree(1)},
    )
    v_init, v_final = n, n + 1
    edges: dict[tuple[int, str, int], Degree] = dict(automaton.transitions)
    for r in alphabet:
        for x, deg in automaton.initial.items():
            edges[(v_init, r, x)] = deg
        for x, deg in automaton.terminal.items():
            edges[(x, r, v_final)] = deg
    return EncodedAutomaton(FuzzyGraph(names, labels, edges), v_init, v_final)


def _shared_alphabet(a: FuzzyAutomaton, b: FuzzyAutomaton) -> tuple[str, ...]:
    if a.alphabet() != b.alphabet():
        raise AlphabetMismatchError(
            f"alphabets differ: {list(a.alphabet())} vs {list(b.alphabet())}"
        )
    return a.alphabet()


def _check_automata(z: Relation, left: FuzzyAutomaton, right: FuzzyAutomaton,
                    directed: bool, strict: bool) -> Violation | None:
    if (z.left_size, z.right_size) != (left.state_count, right.state_count):
        raise ValueError("relation shape does not match the automata")

    def ok(a: Degree, b: Degree) -> bool:
        return a < b if strict else a <= b

    # initial condition: every initial state needs a related initial witness
    for x in sorted(left.initial):
        if not any((x, xp) in z and ok(left.initial[x], right.initial.get(xp, ZERO))
                   for xp in range(right.state_count)):
            return Violation("initial", (left.names[x],))
    if directed:
        for xp in sorted(right.initial):
            if not any((x, xp) in z and ok(right.initial[xp], left.initial.get(x, ZERO))
                       for x in range(left.state_count)):
                return Violation("dual-initial", (right.names[xp],))

    out_left: dict[int, list[tuple[str, int, Degree]]] = {}
    for (x, r, y), deg in sorted(left.transitions.items()):
        out_left.setdefault(x, []).append((r, y, deg))
    out_right: dict[int, list[tuple[str, int, Degree]]] = {}
    for (x, r, y), deg in sorted(right.transitions.items()):
        out_right.setdefault(x, []).append((r, y, deg))

    for x, xp in z.pairs():
        tx = left.terminal.get(x, ZERO)
        if tx > ZERO and not ok(tx, right.terminal.get(xp, ZERO)):
            return Violation("terminal", (left.names[x], right.names[xp]))
        if directed:
            txp = right.terminal.get(xp, ZERO)
            if txp > ZERO and not ok(txp, left.terminal.get(x, ZERO)):
                return Violation("dual-terminal", (left.names[x], right.names[xp]))
            for r, yp, deg in out_right.get(xp, ()):
                if not any((y, yp) in z and ok(deg, left.transition_degree(x, r, y))
                           for y in range(left.state_count)):
                    return Violation(
                        "backward", (left.names[x], right.names[xp], right.names[yp]), r
                    )
        for r, y, deg in out_left.get(x, ()):
            if not any((y, yp) in z and ok(deg, right.transition_degree(xp, r, yp))
                       for yp in range(right.state_count)):
                return Violation("forward", (left.names[x], right.names[xp], left.names[y]), r)
    return None


def check_automata_simulation(z: Relation, left: FuzzyAutomaton, right: FuzzyAutomaton,
                              *, strict: bool = False) -> Violation | None:
    """None iff z satisfies the initial, transition, and terminal conditions."""
    return _check_automata(z, left, right, directed=False, strict=strict)


def check_automata_directed_simulation(z: Relation, left: FuzzyAutomaton, right: FuzzyAutomaton,
                                       *, strict: bool = False) -> Violation | None:
    """None iff z additionally satisfies the backward-transition condition and
    the dual initial and terminal conditions (the ones the graph encoding of
    the pair enforces)."""
    return _check_automata(z, left, right, directed=True, strict=strict)


@dataclass(frozen=True)
class AutomataResult:
    """Largest relation satisfying the per-pair conditions, plus the global
    initial-condition verdict, which is a property of the pair of automata
    rather than of any single state pair."""

    relation: Relation
    initial_satisfied: bool


def _naive_automata_fixpoint(left: FuzzyAutomaton, right: FuzzyAutomaton,
                             directed: bool) -> AutomataResult:
    nl, nr = left.state_count, right.state_count

    def terminal_ok(x: int, xp: int) -> bool:
        tx = left.terminal.get(x, ZERO)
        if tx > ZERO and tx > right.terminal.get(xp, ZERO):
            return False
        if directed:
            txp = right.terminal.get(xp, ZERO)
            if txp > ZERO and txp > left.terminal.get(x, ZERO):
                return False
        return True

    z = {(x, xp) for x in range(nl) for xp in range(nr) if terminal_ok(x, xp)}

    def violates(x: int, xp: int) -> bool:
        for (sx, r, y), deg in left.transitions.items():
            if sx == x and not any(
                (y, yp) in z and deg <= right.transition_degree(xp, r, yp)
                for yp in range(nr)
            ):
                return True
        if directed:
            for (sxp, r, yp), deg in right.transitions.items():
                if sxp == xp and not any(
                    (y, yp) in z and deg <= left.transition_degree(x, r, y)
                    for y in range(nl)
                ):
                    return True
        return False

    changed = True
    while changed:
        changed = False
        for pair in sorted(z):
            if violates(*pair):
                z.remove(pair)
                changed = True

    initial_ok = all(
        any((x, xp) in z and deg <= right.initial.get(xp, ZERO) for xp in range(nr))
        for x, deg in left.initial.items()
    )
    if directed and initial_ok:
        initial_ok = all(
            any((x, xp) in z and deg <= left.initial.get(x, ZERO) for x in range(nl))
            for xp, deg in right.initial.items()
        )
    return AutomataResult(Relation.from_pairs(nl, nr, z), initial_ok)


def naive_largest_automata_simulation(left: FuzzyAutomaton, right: FuzzyAutomaton) -> AutomataResult:
    """Slow reference: terminal filter, then forward-condition removal fixpoint."""
    return _naive_automata_fixpoint(left, right, directed=False)


def naive_largest_automata_directed_simulation(left: FuzzyAutomaton,
                                               right: FuzzyAutomaton) -> AutomataResult:
    """Slow reference with both terminal filters and both transition conditions."""
    return _naive_automata_fixpoint(left, right, directed=True)


def _engine_result(left: FuzzyAutomaton, right: FuzzyAutomaton, directed: bool) -> AutomataResult:
    _shared_alphabet(left, right)
    enc_l, enc_r = encode(left), encode(right)
    compute = compute_largest_directed_simulation if directed else compute_largest_simulation
    full = compute(enc_l.graph, enc_r.graph)
    relation = full.restrict(left.state_count, right.state_count)
    initial_ok = (enc_l.init_index, enc_r.init_index) in full
    return AutomataResult(relation, initial_ok)


def largest_automata_simulation(left: FuzzyAutomaton, right: FuzzyAutomaton) -> AutomataResult:
    """Encode both automata, run the simulation engine, strip the synthetic pairs."""
    return _engine_result(left, right, directed=False)


def largest_automata_directed_simulation(left: FuzzyAutomaton,
                                         right: FuzzyAutomaton) -> AutomataResult:
    """As above with the directed engine."""
    return _engine_result(left, right, directed=True)
