"""Linear-time first-order unification on hash-consed term DAGs."""

from .engine import EventKind, Solver, TraceEvent, UnifyState, Variant, render_trace, solve
from .outcome import (Call, Clash, Cycle, NonTermination, Outcome, Phase, Substitution,
                      Unified, default_budget, describe, exit_code)
from .sigma import SigmaBuilder, build_sigma
from .terms import (App, ArityError, Kind, NodeId, ParseError, SizeExceeded, Symbol,
                    Term, TermDag, Var, parse_term, print_term)

__all__ = [
    "App", "ArityError", "Call", "Clash", "Cycle", "EventKind", "Kind", "NodeId",
    "NonTermination", "Outcome", "ParseError", "Phase", "SigmaBuilder", "SizeExceeded",
    "Solver", "Substitution", "Symbol", "Term", "TermDag", "TraceEvent", "Unified",
    "UnifyState", "Var", "Variant", "build_sigma", "default_budget", "describe",
    "exit_code", "parse_term", "print_term", "render_trace", "solve",
]
