"""Command line front end.

    pwunify unify TERM_A TERM_B [--variant fixed|buggy] [--trace] [--check]
                                [--budget N] [--size-cap N]
    pwunify bench chain|sharing --sizes 1000,2000 [--csv PATH]

Substitutions and CSV go to stdout; traces and diagnostics go to stderr.
Exit codes for ``unify``: 0 unified, 1 clash, 2 cycle, 3 non-termination
guard, 4 parse or arity error, 5 oracle disagreement.
"""

from __future__ import annotations

import argparse
import csv
import sys
import time
from dataclasses import dataclass
from typing import Optional, Sequence, TextIO

from . import oracle
from .engine import Solver, Variant, render_trace
from .families import FAMILIES
from .outcome import Clash, Cycle, NonTermination, Unified, describe, exit_code
from .terms import ArityError, ParseError, TermDag, parse_term

EXIT_INPUT_ERROR = 4
EXIT_ORACLE_DISAGREES = 5


@dataclass
class RunConfig:
    variant: Variant = Variant.FIXED
    budget: Optional[int] = None
    trace: bool = False
    size_cap: int = 4096
    check: bool = False

    def __post_init__(self):
        if self.budget is not None and self.budget < 1:
            raise ValueError("budget must be at least 1")
        if self.size_cap < 1:
            raise ValueError("size cap must be at least 1")


def _engine_tag(outcome) -> str:
    return {Unified: "unified", Clash: "clash", Cycle: "cycle",
            NonTermination: "non-termination"}[type(outcome)]


def compare_with_oracle(outcome, dag: TermDag, a, b) -> Optional[str]:
    """None when the engine and the oracle agree, else a reason."""
    tag, mgu = oracle.verdict(a, b)
    mine = _engine_tag(outcome)
    if (tag == "unified") != (mine == "unified"):
        return f"engine {mine}, oracle {tag}"
    if mgu is not None and not oracle.mgu_equivalent(outcome.substitution.to_trees(dag), mgu, a, b):
        return "unifiers are not equal up to renaming"
    return None


def cmd_unify(term_a: str, term_b: str, cfg: RunConfig,
              out: TextIO = sys.stdout, err: TextIO = sys.stderr) -> int:
    dag = TermDag()
    try:
        a, b = parse_term(term_a), parse_term(term_b)
        u, v = dag.intern(a, root=True), dag.intern(b, root=True)
    except (ParseError, ArityError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INPUT_ERROR

    solver = Solver(dag, u, v, cfg.variant, cfg.budget, trace=cfg.trace)
    outcome = solver.solve()
    if cfg.trace:
        err.write(render_trace(solver.state.trace, dag))
        for call in solver.calls:
            print(f"CALL\t{call.render(dag)}", file=err)
    if isinstance(outcome, Unified):
        for line in outcome.substitution.render(dag, cfg.size_cap):
            print(line, file=out)
    else:
        print(describe(outcome, dag), file=err)

    status = exit_code(outcome)
    if cfg.check:
        reason = compare_with_oracle(outcome, dag, a, b)
        if reason is None:
            print("oracle: agree", file=err)
        else:
            print(f"oracle: DISAGREE ({reason})", file=err)
            status = EXIT_ORACLE_DISAGREES
    return status


def bench_rows(family: str, sizes: Sequence[int]):
    """Yield ``(n, nodes, links, steps, wall_micros, largest_binding)`` per size."""
    make = FAMILIES[family]
    for n in sizes:
        left, right = make(n)
        dag = TermDag()
        u, v = dag.intern(left, root=True), dag.intern(right, root=True)
        nodes = len(dag)
        solver = Solver(dag, u, v, Variant.FIXED)
        start = time.perf_counter()
        outcome = solver.solve()
        wall = int((time.perf_counter() - start) * 1e6)
        if not isinstance(outcome, Unified):
            raise RuntimeError(f"{family}({n}) did not unify: {describe(outcome, dag)}")
        largest, memo = 0, {}
        for _, term in outcome.substitution:
            largest = max(largest, dag.sizes(term, memo)[term])
        yield n, nodes, solver.state.link_count, solver.state.steps, wall, largest


def cmd_bench(family: str, sizes: Sequence[int], out: TextIO = sys.stdout,
              err: TextIO = sys.stderr) -> int:
    if any(n < 1 for n in sizes) or list(sizes) != sorted(sizes):
        print("error: sizes must be ascending and positive", file=err)
        return EXIT_INPUT_ERROR
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["n", "nodes", "links", "steps", "wall_micros"])
    try:
        for n, nodes, links, steps, wall, largest in bench_rows(family, sizes):
            writer.writerow([n, nodes, links, steps, wall])
            print(f"{family} n={n}: largest binding has {largest} symbols", file=err)
    except ValueError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INPUT_ERROR
    return 0


def _sizes(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad size list: {text!r}")


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pwunify", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    u = sub.add_parser("unify", help="unify two terms")
    u.add_argument("term_a")
    u.add_argument("term_b")
    u.add_argument("--variant", choices=[v.value for v in Variant], default="fixed")
    u.add_argument("--trace", action="store_true", help="print the event trace to stderr")
    u.add_argument("--check", action="store_true", help="compare with the Robinson oracle")
    u.add_argument("--budget", type=_positive, default=None)
    u.add_argument("--size-cap", type=_positive, default=4096)

    b = sub.add_parser("bench", help="step counts for a generated family")
    b.add_argument("family", choices=sorted(FAMILIES))
    b.add_argument("--sizes", type=_sizes, required=True)
    b.add_argument("--csv", metavar="PATH", help="write CSV here instead of stdout")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "unify":
        cfg = RunConfig(Variant(args.variant), args.budget, args.trace, args.size_cap, args.check)
        return cmd_unify(args.term_a, args.term_b, cfg)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            return cmd_bench(args.family, args.sizes, out=fh)
    return cmd_bench(args.family, args.sizes)


if __name__ == "__main__":
    sys.exit(main())
