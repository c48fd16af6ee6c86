"""Result values shared by the main phase and the substitution builder."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterator, Union

from .terms import NodeId, SizeExceeded, TermDag, print_term


def default_budget(node_count: int) -> int:
    return 100 * (node_count + 1)


class Phase(enum.Enum):
    MAIN = "main"
    BUILD_SIGMA = "BUILD-SIGMA"


@dataclass(frozen=True)
class Substitution:
    """Variable bindings in the order the variables entered SIGMA.

    Bound terms are DAG nodes, so a binding can stand for a term whose
    expanded form is exponentially larger than the DAG.
    """

    bindings: tuple[tuple[NodeId, NodeId], ...] = ()

    def __iter__(self) -> Iterator[tuple[NodeId, NodeId]]:
        return iter(self.bindings)

    def __len__(self) -> int:
        return len(self.bindings)

    def as_dict(self) -> dict[NodeId, NodeId]:
        return dict(self.bindings)

    def render(self, dag: TermDag, size_cap: int = 4096) -> list[str]:
        """``Var = term`` lines; oversized terms print as ``<dag:N symbols>``."""
        memo: dict[NodeId, int] = {}
        return [f"{dag.symbol(var).name} = {print_term(dag, term, size_cap, memo)}"
                for var, term in self.bindings]

    def to_trees(self, dag: TermDag) -> dict:
        """Name-keyed map of expanded trees, for comparison with the oracle."""
        return {dag.symbol(var).name: dag.to_tree(term) for var, term in self.bindings}


@dataclass(frozen=True)
class Call:
    """One recorded procedure entry during substitution building."""

    name: str
    # a node, a cons list of nodes, or None for NIL
    arg: object = None

    def render(self, dag: TermDag) -> str:
        return f"{self.name}({_render_arg(dag, self.arg)})"


def _render_arg(dag: TermDag, arg: object) -> str:
    if arg is None:
        return "NIL"
    if isinstance(arg, int):
        return str(print_term(dag, arg, 64))
    items = []
    cell = arg
    while cell is not None:
        items.append(cell[0])
        cell = cell[1]
    return "list(" + ", ".join(str(print_term(dag, n, 64)) for n in items) + ")"


@dataclass(frozen=True)
class Unified:
    substitution: Substitution
    steps: int = 0


@dataclass(frozen=True)
class Clash:
    node_a: NodeId
    node_b: NodeId
    steps: int = 0


@dataclass(frozen=True)
class Cycle:
    node: NodeId
    steps: int = 0


@dataclass(frozen=True)
class NonTermination:
    phase: Phase
    steps: int
    calls: tuple[Call, ...] = field(default=(), compare=False)


Outcome = Union[Unified, Clash, Cycle, NonTermination]

EXIT_CODES = {Unified: 0, Clash: 1, Cycle: 2, NonTermination: 3}


def exit_code(outcome: Outcome) -> int:
    return EXIT_CODES[type(outcome)]


def describe(outcome: Outcome, dag: TermDag) -> str:
    """One-line failure diagnosis as printed by the CLI."""
    if isinstance(outcome, Clash):
        return f"clash: {dag.symbol(outcome.node_a)} vs {dag.symbol(outcome.node_b)}"
    if isinstance(outcome, Cycle):
        return f"cycle: occurs check at {dag.render_node(outcome.node)}"
    if isinstance(outcome, NonTermination):
        return (f"non-termination guard tripped after {outcome.steps} steps "
                f"in {outcome.phase.value}")
    size = sum(1 for _ in outcome.substitution)
    return f"unified: {size} binding{'s' if size != 1 else ''}"


__all__ = [
    "Call", "Clash", "Cycle", "NonTermination", "Outcome", "Phase",
    "SizeExceeded", "Substitution", "Unified", "default_budget", "describe", "exit_code",
]
