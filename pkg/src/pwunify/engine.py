"""Main unification phase: ``Solver`` and ``Finish`` over a term DAG.

Two variants are provided.  They differ in a single statement: whether the
popped node ``s`` is marked complete at the end of every stack iteration
(``PUBLISHED_BUGGY``) or only when ``s`` is not the root ``r`` of the
current Finish (``FIXED``).  In the buggy variant the root is complete
after its first pop, so a later re-entry through the parent loop exits
quietly instead of tripping the occurs check, and the post-processing
phase is handed a cyclic Subs map.

Per-solve state lives in :class:`UnifyState`, never in the DAG, so several
solves may read the same DAG.  Finish recursion through the parent loop is
run on an explicit stack; parent chains as deep as the input term are fine.
"""

from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Optional

from . import _trampoline
from .outcome import (Clash, Cycle, NonTermination, Outcome, Phase, Unified,
                      default_budget)
from .sigma import SigmaBuilder
from .terms import Kind, NodeId, TermDag


class Variant(enum.Enum):
    PUBLISHED_BUGGY = "buggy"
    FIXED = "fixed"


class EventKind(enum.Enum):
    LINK = "LINK"
    POINTER = "PTR"
    PUSH = "PUSH"
    POP = "POP"
    SUBS = "SUBS"
    SIGMA = "SIGMA"
    COMPLETE = "DONE"
    FINISH_ENTER = "ENTER"
    FINISH_EXIT = "EXIT"
    CHILD_LINKS = "SONS"


@dataclass(frozen=True)
class TraceEvent:
    kind: EventKind
    nodes: tuple[NodeId, ...]

    def render(self, dag: TermDag) -> str:
        return "\t".join([self.kind.value, *(dag.render_node(n) for n in self.nodes)])


def render_trace(trace: Iterable[TraceEvent], dag: TermDag) -> str:
    return "".join(event.render(dag) + "\n" for event in trace)


@dataclass
class UnifyState:
    links: defaultdict = field(default_factory=lambda: defaultdict(list))
    pointer: dict[NodeId, NodeId] = field(default_factory=dict)
    complete: set[NodeId] = field(default_factory=set)
    subs: dict[NodeId, NodeId] = field(default_factory=dict)
    sigma: list[NodeId] = field(default_factory=list)
    steps: int = 0
    link_count: int = 0
    trace: Optional[list[TraceEvent]] = None


class _Failed(Exception):
    def __init__(self, outcome):
        self.outcome = outcome


class _OutOfBudget(Exception):
    pass


class Solver:
    """One unification problem: the DAG restricted to what ``u`` and ``v``
    reach, plus the mutable state of the solve."""

    def __init__(self, dag: TermDag, u: NodeId, v: NodeId,
                 variant: Variant = Variant.FIXED, budget: Optional[int] = None,
                 trace: bool = False):
        self.dag = dag
        self.u = u
        self.v = v
        self.variant = variant
        self.scope = dag.reachable(u, v)
        self.budget = default_budget(len(self.scope)) if budget is None else budget
        if self.budget < 1:
            raise ValueError("budget must be at least 1")
        self.state = UnifyState(trace=[] if trace else None)
        ordered = sorted(self.scope)
        self._candidates = {
            Kind.FUNCTION: [n for n in ordered if not dag.is_variable(n)],
            Kind.VARIABLE: [n for n in ordered if dag.is_variable(n)],
        }
        self._cursor = {Kind.FUNCTION: 0, Kind.VARIABLE: 0}
        self.calls: tuple = ()
        self._used = False

    def _tick(self) -> None:
        self.state.steps += 1
        if self.state.steps > self.budget:
            raise _OutOfBudget

    def _emit(self, kind: EventKind, *nodes: NodeId) -> None:
        if self.state.trace is not None:
            self.state.trace.append(TraceEvent(kind, nodes))

    def create_link(self, s: NodeId, t: NodeId) -> None:
        st = self.state
        st.links[s].append(t)
        if s != t:
            st.links[t].append(s)
        st.link_count += 1
        self._emit(EventKind.LINK, s, t)
        self._tick()

    def select_next(self, kind: Kind) -> Optional[NodeId]:
        """Lowest-id incomplete node of ``kind``, or None.

        Completion is monotone, so the cursor only moves forward.
        """
        nodes = self._candidates[kind]
        i = self._cursor[kind]
        complete = self.state.complete
        while i < len(nodes) and nodes[i] in complete:
            i += 1
            self._tick()
        self._cursor[kind] = i
        return nodes[i] if i < len(nodes) else None

    def _set_pointer(self, t: NodeId, r: NodeId) -> None:
        self.state.pointer[t] = r
        self._emit(EventKind.POINTER, t, r)
        self._tick()

    def _complete(self, n: NodeId) -> None:
        self.state.complete.add(n)
        self._emit(EventKind.COMPLETE, n)

    def _finish(self, r: NodeId):
        dag, st = self.dag, self.state
        self._tick()
        self._emit(EventKind.FINISH_ENTER, r)
        if r in st.complete:
            self._emit(EventKind.FINISH_EXIT, r)
            return
        if r in st.pointer:
            raise _Failed(Cycle(r, st.steps))
        r_node = dag[r]
        stack = []
        self._set_pointer(r, r)
        stack.append(r)
        self._emit(EventKind.PUSH, r)
        fixed = self.variant is Variant.FIXED
        while stack:
            self._tick()
            s = stack.pop()
            self._emit(EventKind.POP, s)
            s_node = dag[s]
            if (s_node.symbol != r_node.symbol and not s_node.symbol.is_variable
                    and not r_node.symbol.is_variable):
                raise _Failed(Clash(r, s, st.steps))
            for t in s_node.parents:
                if t in self.scope:
                    self._tick()
                    yield self._finish(t)
            for t in st.links.get(s, ()):
                self._tick()
                if t in st.complete or t == r:
                    continue
                p = st.pointer.get(t)
                if p is None:
                    self._set_pointer(t, r)
                    stack.append(t)
                    self._emit(EventKind.PUSH, t)
                elif p != r:
                    raise _Failed(Cycle(t, st.steps))
                # else: t is already on the stack
            if s != r:
                if s_node.symbol.is_variable:
                    st.subs[s] = r
                    st.sigma.append(s)
                    self._emit(EventKind.SUBS, s, r)
                    self._emit(EventKind.SIGMA, s)
                else:
                    self._emit(EventKind.CHILD_LINKS, r, s)
                    for a, b in zip(r_node.children, s_node.children):
                        self.create_link(a, b)
                if fixed:
                    self._complete(s)
            if not fixed:
                self._complete(s)
        self._complete(r)
        self._emit(EventKind.FINISH_EXIT, r)

    def finish(self, r: NodeId) -> Optional[Outcome]:
        """Run Finish(r) on its own; returns the failure outcome, or None."""
        try:
            _trampoline.run(self._finish(r))
        except _Failed as failed:
            return failed.outcome
        except _OutOfBudget:
            return NonTermination(Phase.MAIN, self.state.steps)
        return None

    def run_main(self) -> Optional[Outcome]:
        """Initial link plus Finish over function nodes, then variable nodes.

        Returns a failure outcome, or None once SIGMA and Subs are ready.
        """
        try:
            self.create_link(self.u, self.v)
            for kind in (Kind.FUNCTION, Kind.VARIABLE):
                while (r := self.select_next(kind)) is not None:
                    _trampoline.run(self._finish(r))
        except _Failed as failed:
            return failed.outcome
        except _OutOfBudget:
            return NonTermination(Phase.MAIN, self.state.steps)
        return None

    def solve(self) -> Outcome:
        if self._used:
            raise RuntimeError("a Solver runs once; its state is consumed")
        self._used = True
        failed = self.run_main()
        if failed is not None:
            return failed
        st = self.state
        builder = SigmaBuilder(self.dag, st.subs, budget=self.budget, steps=st.steps,
                               record_calls=st.trace is not None)
        result = builder.build(st.sigma)
        st.steps = builder.steps
        if isinstance(result, NonTermination):
            self.calls = result.calls
            return result
        return Unified(result, st.steps)


def solve(u: NodeId, v: NodeId, dag: TermDag, variant: Variant = Variant.FIXED,
          budget: Optional[int] = None, trace: bool = False) -> Outcome:
    return Solver(dag, u, v, variant, budget, trace).solve()
