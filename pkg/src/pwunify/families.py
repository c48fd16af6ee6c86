"""Generated problem families used by the benchmark and the tests."""

from __future__ import annotations

from .terms import App, Term, Var

MAX_SIZE = 10_000_000


def _check(n: int) -> None:
    if not 1 <= n <= MAX_SIZE:
        raise ValueError(f"family size must be in [1, {MAX_SIZE}], got {n}")


def chain(n: int) -> tuple[Term, Term]:
    """g(X_0,...,X_{n-1}) vs g(f(X_1),...,f(X_n)): X_0 ends up bound to f^n(X_n)."""
    _check(n)
    left = App("g", tuple(Var(f"X_{i}") for i in range(n)))
    right = App("g", tuple(App("f", (Var(f"X_{i}"),)) for i in range(1, n + 1)))
    return left, right


def sharing(n: int) -> tuple[Term, Term]:
    """p(X_1,...,X_n) vs p(f(X_0,X_0),...,f(X_{n-1},X_{n-1})).

    X_i is bound to a term with 2**(i+1) - 1 symbols, although the DAG stays
    linear in n.
    """
    _check(n)
    left = App("p", tuple(Var(f"X_{i}") for i in range(1, n + 1)))
    right = App("p", tuple(App("f", (Var(f"X_{i}"), Var(f"X_{i}"))) for i in range(n)))
    return left, right


FAMILIES = {"chain": chain, "sharing": sharing}
