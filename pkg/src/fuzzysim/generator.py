"""Seeded random instances for the differential suites and the benchmark.

Instances are fully determined by the seed arguments (Python's Mersenne
Twister is stable across platforms).  Within one graph the edge topology is
drawn before any degree, so changing only the number of degree levels keeps
the topology fixed; the benchmark relies on this when it varies the level
count at fixed (n, m).
"""

from __future__ import annotations

import random
from fractions import Fraction

from .automata import FuzzyAutomaton
from .model import Degree, FuzzyGraph


def degree_levels(count: int) -> tuple[Degree, ...]:
    """``count`` evenly spaced degrees in (0, 1]: k/count for k = 1..count."""
    if count < 1:
        raise ValueError("need at least one level")
    return tuple(Fraction(k, count) for k in range(1, count + 1))


def random_graph(
    rng: random.Random,
    n_vertices: int,
    n_edges: int,
    levels: tuple[Degree, ...],
    *,
    edge_symbols: tuple[str, ...] = ("r",),
    label_symbols: tuple[str, ...] = (),
    label_prob: float = 0.0,
    name_prefix: str = "v",
) -> FuzzyGraph:
    """Uniform random edge slots until the target count, degrees from ``levels``."""
    names = tuple(f"{name_prefix}{i}" for i in range(n_vertices))
    target = min(n_edges, n_vertices * n_vertices * len(edge_symbols))
    slots: list[tuple[int, str, int]] = []
    seen: set[tuple[int, str, int]] = set()
    while len(slots) < target:
        slot = (
            rng.randrange(n_vertices),
            edge_symbols[rng.randrange(len(edge_symbols))] if len(edge_symbols) > 1 else edge_symbols[0],
            rng.randrange(n_vertices),
        )
        if slot not in seen:
            seen.add(slot)
            slots.append(slot)

    labels: dict[str, dict[str, Degree]] = {}
    if label_symbols and label_prob > 0:
        for name in names:
            lab = {
                sym: levels[rng.randrange(len(levels))]
                for sym in label_symbols
                if rng.random() < label_prob
            }
            if lab:
                labels[name] = lab

    edges = [
        (names[x], sym, names[y], levels[rng.randrange(len(levels))])
        for x, sym, y in slots
    ]
    return FuzzyGraph.from_data(names, labels, edges)


def random_automaton(
    rng: random.Random,
    n_states: int,
    n_transitions: int,
    levels: tuple[Degree, ...],
    *,
    alphabet: tuple[str, ...] = ("a",),
    initial_prob: float = 0.5,
    terminal_prob: float = 0.5,
    name_prefix: str = "q",
) -> FuzzyAutomaton:
    names = tuple(f"{name_prefix}{i}" for i in range(n_states))
    target = min(n_transitions, n_states * n_states * len(alphabet))
    slots: list[tuple[int, str, int]] = []
    seen: set[tuple[int, str, int]] = set()
    while len(slots) < target:
        slot = (
            rng.randrange(n_states),
            alphabet[rng.randrange(len(alphabet))] if len(alphabet) > 1 else alphabet[0],
            rng.randrange(n_states),
        )
        if slot not in seen:
            seen.add(slot)
            slots.append(slot)
    transitions = [
        (names[x], sym, names[y], levels[rng.randrange(len(levels))])
        for x, sym, y in slots
    ]
    initial = {
        name: levels[rng.randrange(len(levels))]
        for name in names
        if rng.random() < initial_prob
    }
    terminal = {
        name: levels[rng.randrange(len(levels))]
        for name in names
        if rng.random() < terminal_prob
    }
    return FuzzyAutomaton.from_data(names, transitions, initial, terminal)


def bench_pair(seed: int, size: int, density: float, levels_count: int) -> tuple[FuzzyGraph, FuzzyGraph]:
    """One benchmark instance: two unlabeled graphs with size = |V| + |V'| and
    roughly density * size nonzero edges in total."""
    levels = degree_levels(levels_count)
    nv_left = size // 2
    nv_right = size - nv_left
    edges_left = round(density * nv_left)
    edges_right = round(density * nv_right)
    # topology must not depend on the level count: one rng per graph, degrees drawn last
    rng_left = random.Random(f"bench:{seed}:{size}:{density}:L")
    rng_right = random.Random(f"bench:{seed}:{size}:{density}:R")
    left = random_graph(rng_left, nv_left, edges_left, levels, name_prefix="a")
    right = random_graph(rng_right, nv_right, edges_right, levels, name_prefix="b")
    return left, right
