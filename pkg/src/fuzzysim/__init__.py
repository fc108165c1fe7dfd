"""Largest crisp simulations and directed simulations for fuzzy graph structures."""

from .automata import (
    AlphabetMismatchError,
    AutomataResult,
    EncodingError,
    FuzzyAutomaton,
    check_automata_directed_simulation,
    check_automata_simulation,
    encode,
    largest_automata_directed_simulation,
    largest_automata_simulation,
    naive_largest_automata_directed_simulation,
    naive_largest_automata_simulation,
    parse_automaton,
)
from .directed import (
    compute_largest_directed_simulation,
    instrumented_largest_directed_simulation,
    largest_directed_simulation_run,
)
from .model import (
    Degree,
    FuzzyGraph,
    NeighborIndex,
    ParseError,
    Relation,
    build_neighbor_index,
    format_graph,
    format_relation,
    label_leq,
    parse_graph,
    parse_relation,
)
from .oracle import (
    Violation,
    check_directed_simulation,
    check_simulation,
    naive_largest_directed_simulation,
    naive_largest_simulation,
    worklist_largest_directed_simulation,
    worklist_largest_simulation,
)
from .simulation import (
    compute_largest_simulation,
    instrumented_largest_simulation,
    largest_simulation_run,
)

__version__ = "0.1.0"

__all__ = [
    "AlphabetMismatchError",
    "AutomataResult",
    "Degree",
    "EncodingError",
    "FuzzyAutomaton",
    "FuzzyGraph",
    "NeighborIndex",
    "ParseError",
    "Relation",
    "Violation",
    "build_neighbor_index",
    "check_automata_directed_simulation",
    "check_automata_simulation",
    "check_directed_simulation",
    "check_simulation",
    "compute_largest_directed_simulation",
    "compute_largest_simulation",
    "encode",
    "format_graph",
    "format_relation",
    "instrumented_largest_directed_simulation",
    "instrumented_largest_simulation",
    "label_leq",
    "largest_automata_directed_simulation",
    "largest_automata_simulation",
    "largest_directed_simulation_run",
    "largest_simulation_run",
    "naive_largest_automata_directed_simulation",
    "naive_largest_automata_simulation",
    "naive_largest_directed_simulation",
    "naive_largest_simulation",
    "parse_automaton",
    "parse_graph",
    "parse_relation",
    "worklist_largest_directed_simulation",
    "worklist_largest_simulation",
]
