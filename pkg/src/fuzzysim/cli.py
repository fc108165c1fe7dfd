"""Command-line surface.

Exit codes: 0 success, 1 a checked relation violates its conditions, 2 input
errors (parse failures, unknown vertices, alphabet problems), 3 a --verify
run found the engine and the oracle disagreeing.  Relations go to stdout,
diagnostics and --stats reports to stderr; nothing is written to stdout on a
nonzero exit except the violation report of ``check``/``fa-check``.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from time import perf_counter

from . import automata as fa
from .bench import format_csv, run_bench
from .directed import compute_largest_directed_simulation, largest_directed_simulation_run
from .model import (
    FuzzyGraph,
    ParseError,
    Relation,
    format_relation,
    parse_graph,
    parse_relation,
)
from .oracle import (
    check_directed_simulation,
    check_simulation,
    naive_largest_directed_simulation,
    naive_largest_simulation,
    worklist_largest_directed_simulation,
    worklist_largest_simulation,
)
from .simulation import compute_largest_simulation, largest_simulation_run

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2
EXIT_MISMATCH = 3


def _fail(message: str) -> int:
    print(message, file=sys.stderr)
    return EXIT_INPUT


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _load_graph(path: str) -> FuzzyGraph:
    try:
        return parse_graph(_read(path))
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror or exc}") from exc
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def _load_automaton(path: str) -> fa.FuzzyAutomaton:
    try:
        return fa.parse_automaton(_read(path))
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror or exc}") from exc
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def _graph_report(left: FuzzyGraph, right: FuzzyGraph) -> dict[str, object]:
    sigma_v = set(left.label_symbols()) | set(right.label_symbols())
    sigma_e = set(left.edge_symbols()) | set(right.edge_symbols())
    return {
        "n": left.vertex_count + right.vertex_count,
        "m": left.nonzero_edge_count + right.nonzero_edge_count,
        "sigma_v": len(sigma_v),
        "sigma_e": len(sigma_e),
    }


def _emit_stats(report: dict[str, object]) -> None:
    for key, value in report.items():
        if isinstance(value, float):
            print(f"{key}={value:.6f}", file=sys.stderr)
        else:
            print(f"{key}={value}", file=sys.stderr)


def _cmd_sim(args: argparse.Namespace, directed: bool) -> int:
    t0 = perf_counter()
    left = _load_graph(args.left)
    right = _load_graph(args.right)
    parse_seconds = perf_counter() - t0

    naive = naive_largest_directed_simulation if directed else naive_largest_simulation
    run = largest_directed_simulation_run if directed else largest_simulation_run
    report = _graph_report(left, right)
    report["parse_seconds"] = parse_seconds

    if args.oracle and not args.verify:
        t0 = perf_counter()
        relation = naive(left, right)
        report["oracle_seconds"] = perf_counter() - t0
    else:
        result = run(left, right)
        relation = result.relation
        stats = result.stats
        report.update(
            init_seconds=stats.init_seconds,
            loop_seconds=stats.loop_seconds,
            rcnext_nodes=stats.rcnext_nodes,
            rcprev_slots=stats.rcprev_slots,
            queue_peak=stats.queue_peak,
            enqueued=stats.enqueued,
            pops=stats.pops,
        )
        if args.verify:
            expected = naive(left, right)
            if relation != expected:
                print(
                    "verification failed: engine and naive oracle disagree "
                    f"({len(relation)} vs {len(expected)} pairs)",
                    file=sys.stderr,
                )
                return EXIT_MISMATCH
    report["pairs"] = len(relation)

    sys.stdout.write(format_relation(relation, left.names, right.names))
    if args.stats:
        _emit_stats(report)
    return EXIT_OK


def _cmd_check(args: argparse.Namespace) -> int:
    left = _load_graph(args.left)
    right = _load_graph(args.right)
    try:
        relation = parse_relation(_read(args.relation), left, right)
    except OSError as exc:
        raise ParseError(f"{args.relation}: {exc.strerror or exc}") from exc
    except ParseError as exc:
        raise ParseError(f"{args.relation}: {exc}") from exc
    checker = check_directed_simulation if args.directed else check_simulation
    violation = checker(relation, left, right)
    if violation is not None:
        print(violation)
        return EXIT_VIOLATION
    print("ok")
    return EXIT_OK


def _cmd_oracle(args: argparse.Namespace) -> int:
    left = _load_graph(args.left)
    right = _load_graph(args.right)
    if args.method == "naive":
        compute = naive_largest_directed_simulation if args.directed else naive_largest_simulation
    else:
        compute = (
            worklist_largest_directed_simulation if args.directed else worklist_largest_simulation
        )
    relation = compute(left, right)
    sys.stdout.write(format_relation(relation, left.names, right.names))
    return EXIT_OK


def _cmd_fa(args: argparse.Namespace, directed: bool) -> int:
    t0 = perf_counter()
    left = _load_automaton(args.left)
    right = _load_automaton(args.right)
    parse_seconds = perf_counter() - t0

    naive = (
        fa.naive_largest_automata_directed_simulation
        if directed
        else fa.naive_largest_automata_simulation
    )
    engine = (
        fa.largest_automata_directed_simulation if directed else fa.largest_automata_simulation
    )
    try:
        if args.oracle and not args.verify:
            result = naive(left, right)
            fa._shared_alphabet(left, right)
        else:
            result = engine(left, right)
            if args.verify:
                expected = naive(left, right)
                if (result.relation, result.initial_satisfied) != (
                    expected.relation,
                    expected.initial_satisfied,
                ):
                    print(
                        "verification failed: engine and automata oracle disagree",
                        file=sys.stderr,
                    )
                    return EXIT_MISMATCH
    except (fa.AlphabetMismatchError, fa.EncodingError) as exc:
        return _fail(str(exc))

    sys.stdout.write(format_relation(result.relation, left.names, right.names))
    print(f"initial: {'satisfied' if result.initial_satisfied else 'violated'}")
    if args.stats:
        report = {
            "n": left.state_count + right.state_count,
            "m": len(left.transitions) + len(right.transitions),
            "sigma": len(left.alphabet()),
            "pairs": len(result.relation),
            "parse_seconds": parse_seconds,
        }
        _emit_stats(report)
    return EXIT_OK


def _cmd_fa_check(args: argparse.Namespace) -> int:
    left = _load_automaton(args.left)
    right = _load_automaton(args.right)
    text = _read(args.relation)
    # relation lines name automaton states
    names_l = {name: i for i, name in enumerate(left.names)}
    names_r = {name: i for i, name in enumerate(right.names)}
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        tokens = line.split()
        if not tokens:
            continue
        if len(tokens) != 2:
            raise ParseError(f"{args.relation}: expected two state names per line (line {lineno})")
        a, b = tokens
        if a not in names_l:
            raise ParseError(f"{args.relation}: unknown state {a!r} (line {lineno})")
        if b not in names_r:
            raise ParseError(f"{args.relation}: unknown state {b!r} (line {lineno})")
        pairs.append((names_l[a], names_r[b]))
    relation = Relation.from_pairs(left.state_count, right.state_count, pairs)
    checker = (
        fa.check_automata_directed_simulation if args.directed else fa.check_automata_simulation
    )
    violation = checker(relation, left, right, strict=args.strict_automata)
    if violation is not None:
        print(violation)
        return EXIT_VIOLATION
    print("ok")
    return EXIT_OK


def _cmd_bench(args: argparse.Namespace) -> int:
    try:
        sizes = [int(tok) for tok in args.sizes.split(",") if tok]
    except ValueError:
        return _fail(f"bad --sizes list: {args.sizes!r}")
    if not sizes or any(s < 2 for s in sizes):
        return _fail("--sizes needs positive entries (at least 2)")
    if args.degree_levels < 1:
        return _fail("--degree-levels must be positive")
    rows = run_bench(sizes, args.density, args.degree_levels, args.seed, args.trials)
    sys.stdout.write(format_csv(rows))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fuzzysim",
        description="Largest crisp simulations and directed simulations "
        "between finite fuzzy labeled graphs and fuzzy automata.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_graph_pair(p: argparse.ArgumentParser) -> None:
        p.add_argument("left", help="left graph file")
        p.add_argument("right", help="right graph file")
        p.add_argument("--oracle", action="store_true", help="use the naive oracle instead of the engine")
        p.add_argument("--verify", action="store_true", help="run engine and oracle, fail on mismatch")
        p.add_argument("--stats", action="store_true", help="key=value run report on stderr")

    p_sim = sub.add_parser("sim", help="largest simulation between two graphs")
    add_graph_pair(p_sim)
    p_dirsim = sub.add_parser("dirsim", help="largest directed simulation between two graphs")
    add_graph_pair(p_dirsim)

    p_check = sub.add_parser("check", help="check a relation file against the defining conditions")
    p_check.add_argument("relation", help="relation file: one 'x x-prime' pair per line")
    p_check.add_argument("left")
    p_check.add_argument("right")
    p_check.add_argument("--directed", action="store_true")

    p_oracle = sub.add_parser("oracle", help="reference computations (naive fixpoint or abstract worklist)")
    p_oracle.add_argument("left")
    p_oracle.add_argument("right")
    p_oracle.add_argument("--directed", action="store_true")
    p_oracle.add_argument("--method", choices=("naive", "worklist"), default="naive")

    def add_fa_pair(p: argparse.ArgumentParser) -> None:
        p.add_argument("left", help="left automaton file")
        p.add_argument("right", help="right automaton file")
        p.add_argument("--oracle", action="store_true")
        p.add_argument("--verify", action="store_true")
        p.add_argument("--stats", action="store_true")

    p_fasim = sub.add_parser("fa-sim", help="largest simulation between two fuzzy automata")
    add_fa_pair(p_fasim)
    p_fadirsim = sub.add_parser("fa-dirsim", help="largest directed simulation between two fuzzy automata")
    add_fa_pair(p_fadirsim)

    p_facheck = sub.add_parser("fa-check", help="check a state relation against the automata conditions")
    p_facheck.add_argument("relation")
    p_facheck.add_argument("left")
    p_facheck.add_argument("right")
    p_facheck.add_argument("--directed", action="store_true")
    p_facheck.add_argument(
        "--strict-automata",
        action="store_true",
        help="use strict < comparisons in the definitional checker",
    )

    p_bench = sub.add_parser("bench", help="scaling benchmark, CSV on stdout")
    p_bench.add_argument("--sizes", default="250,500,1000,2000", help="comma-separated n = |V|+|V'|")
    p_bench.add_argument("--density", type=float, default=5.0, help="edges per vertex (m is about density*n)")
    p_bench.add_argument("--degree-levels", type=int, default=8, help="number of distinct degree levels")
    p_bench.add_argument("--seed", type=int, default=7)
    p_bench.add_argument("--trials", type=int, default=1, help="median over this many runs per size")

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "sim":
            return _cmd_sim(args, directed=False)
        if args.command == "dirsim":
            return _cmd_sim(args, directed=True)
        if args.command == "check":
            return _cmd_check(args)
        if args.command == "oracle":
            return _cmd_oracle(args)
        if args.command == "fa-sim":
            return _cmd_fa(args, directed=False)
        if args.command == "fa-dirsim":
            return _cmd_fa(args, directed=True)
        if args.command == "fa-check":
            return _cmd_fa_check(args)
        if args.command == "bench":
            return _cmd_bench(args)
    except ParseError as exc:
        return _fail(str(exc))
    raise AssertionError(f"unhandled command {args.command!r}")


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
