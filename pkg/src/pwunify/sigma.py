"""Post-processing: turn SIGMA and the Subs pointers into a substitution.

The four procedures below follow the classic BUILD-SIGMA /
EXPLORE-VARIABLE / DESCEND / EXPLORE-ARGUMENTS structure, memoized through
a Ready table so each node is rebuilt at most once.  Argument lists are
cons cells (``(head, tail)`` pairs, ``None`` for NIL) so an unchanged list
can be handed back by identity.

A variable re-entered while its own exploration is still running means the
Subs pointers plus child edges contain a cycle; without a guard the
recursion would never end.  That case, and running out of step budget,
raise :class:`Divergence`, which :func:`build_sigma` reports as a
``NonTermination`` outcome.
"""

from __future__ import annotations

from typing import Mapping, Optional, Sequence, Union

from . import _trampoline
from .outcome import Call, NonTermination, Phase, Substitution, default_budget
from .terms import NodeId, TermDag

ConsList = Optional[tuple]


class Divergence(Exception):
    def __init__(self, reason: str, node: Optional[NodeId], steps: int):
        self.reason = reason
        self.node = node
        self.steps = steps
        super().__init__(f"{reason} after {steps} steps")


def cons_list(items: Sequence[NodeId]) -> ConsList:
    cell = None
    for item in reversed(items):
        cell = (item, cell)
    return cell


def uncons(cell: ConsList) -> tuple[NodeId, ...]:
    out = []
    while cell is not None:
        out.append(cell[0])
        cell = cell[1]
    return tuple(out)


class SigmaBuilder:
    """Ready table plus the recursion guard for one substitution build."""

    def __init__(self, dag: TermDag, subs: Mapping[NodeId, NodeId], *,
                 budget: Optional[int] = None, steps: int = 0,
                 record_calls: bool = False):
        self.dag = dag
        self.subs = subs
        self.ready: dict[NodeId, NodeId] = {}
        self.in_progress: set[NodeId] = set()
        self.budget = default_budget(len(dag)) if budget is None else budget
        self.steps = steps
        self.calls: Optional[list[Call]] = [] if record_calls else None

    def _enter(self, name: str, arg: object) -> None:
        if self.calls is not None:
            self.calls.append(Call(name, arg))
        self.steps += 1
        if self.steps > self.budget:
            raise Divergence("step budget exhausted", None, self.steps)

    def build(self, sigma: Sequence[NodeId]) -> Union[Substitution, NonTermination]:
        bindings = []
        try:
            self._enter("BUILD-SIGMA", cons_list(sigma))
            for x in sigma:
                out = self.explore_variable(x)
                if out != x:
                    bindings.append((x, out))
        except Divergence as exc:
            self.in_progress.clear()
            return NonTermination(Phase.BUILD_SIGMA, exc.steps, tuple(self.calls or ()))
        return Substitution(tuple(bindings))

    # public entry points run the generator procedures to completion

    def explore_variable(self, x: NodeId) -> NodeId:
        return _trampoline.run(self._explore_variable(x))

    def descend(self, u: Optional[NodeId]) -> Optional[NodeId]:
        return _trampoline.run(self._descend(u))

    def explore_arguments(self, args: ConsList) -> ConsList:
        return _trampoline.run(self._explore_arguments(args))

    def _explore_variable(self, x):
        self._enter("EXPLORE-VARIABLE", x)
        done = self.ready.get(x)
        if done is not None:
            return done
        if x in self.in_progress:
            raise Divergence(f"{self.dag.render_node(x)} re-entered", x, self.steps)
        self.in_progress.add(x)
        out = yield self._descend(self.subs.get(x))
        if out is None:
            out = x
        self.in_progress.discard(x)
        self.ready[x] = out
        return out

    def _descend(self, u):
        self._enter("DESCEND", u)
        if u is None:
            return None
        node = self.dag[u]
        if node.symbol.is_variable:
            return (yield self._explore_variable(u))
        if not node.children:
            return u
        done = self.ready.get(u)
        if done is not None:
            return done
        args = cons_list(node.children)
        out = yield self._explore_arguments(args)
        if out is args:
            self.ready[u] = u
        else:
            self.ready[u] = self.dag.make(node.symbol, uncons(out))
        return self.ready[u]

    def _explore_arguments(self, args):
        self._enter("EXPLORE-ARGUMENTS", args)
        if args is None:
            return None
        first, tail = args
        first_new = yield self._descend(first)
        tail_new = yield self._explore_arguments(tail)
        if first_new != first or tail_new is not tail:
            return (first_new, tail_new)
        return args


def build_sigma(sigma: Sequence[NodeId], subs: Mapping[NodeId, NodeId], dag: TermDag,
                budget: Optional[int] = None, *, steps: int = 0,
                record_calls: bool = False) -> Union[Substitution, NonTermination]:
    """Bind every SIGMA variable, in order, to its fully resolved term.

    Variables that resolve to themselves are left out.  New compound
    results are interned into ``dag``.
    """
    builder = SigmaBuilder(dag, subs, budget=budget, steps=steps, record_calls=record_calls)
    return builder.build(sigma)
