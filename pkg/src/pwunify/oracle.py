"""Textbook Robinson unification on unshared trees.

Used only as a reference to check the DAG engine against.  Substitutions
are kept idempotent by applying every new binding to the existing ones, so
terms are copied eagerly and blow up on inputs with heavy sharing.  Keep
inputs small.
"""

from __future__ import annotations

from typing import Mapping, Optional

from .terms import App, Term, Var

Subst = dict[str, Term]


class NotUnifiable(Exception):
    pass


class OracleClash(NotUnifiable):
    def __init__(self, left: Term, right: Term):
        self.left = left
        self.right = right
        super().__init__(f"clash: {left} vs {right}")


class OracleCycle(NotUnifiable):
    def __init__(self, var: str, term: Term):
        self.var = var
        self.term = term
        super().__init__(f"cycle: {var} occurs in {term}")


class PreconditionViolation(ValueError):
    pass


def occurs(name: str, term: Term) -> bool:
    work = [term]
    while work:
        t = work.pop()
        if isinstance(t, Var):
            if t.name == name:
                return True
        else:
            work.extend(t.args)
    return False


def apply(subst: Mapping[str, Term], term: Term) -> Term:
    if isinstance(term, Var):
        return subst.get(term.name, term)
    if not term.args:
        return term
    return App(term.functor, tuple(apply(subst, a) for a in term.args))


def robinson_unify(a: Term, b: Term) -> Subst:
    """Most general unifier of ``a`` and ``b``.

    Raises OracleClash or OracleCycle when there is none.  Argument pairs
    are processed left to right.
    """
    subst: Subst = {}
    pending = [(a, b)]
    while pending:
        s, t = pending.pop()
        s, t = apply(subst, s), apply(subst, t)
        if s == t:
            continue
        if isinstance(t, Var) and not isinstance(s, Var):
            s, t = t, s
        if isinstance(s, Var):
            if occurs(s.name, t):
                raise OracleCycle(s.name, t)
            single = {s.name: t}
            subst = {k: apply(single, v) for k, v in subst.items()}
            subst[s.name] = t
            continue
        if s.functor != t.functor or len(s.args) != len(t.args):
            raise OracleClash(s, t)
        pending.extend(reversed(list(zip(s.args, t.args))))
    return subst


def _match(pattern: Term, target: Term, binding: dict[str, Term]) -> bool:
    work = [(pattern, target)]
    while work:
        p, t = work.pop()
        if isinstance(p, Var):
            seen = binding.setdefault(p.name, t)
            if seen != t:
                return False
        elif isinstance(t, Var) or p.functor != t.functor or len(p.args) != len(t.args):
            return False
        else:
            work.extend(zip(p.args, t.args))
    return True


def is_variant(s: Term, t: Term) -> bool:
    """True iff ``s`` and ``t`` are equal up to renaming of variables."""
    return _match(s, t, {}) and _match(t, s, {})


def mgu_equivalent(s1: Mapping[str, Term], s2: Mapping[str, Term], a: Term, b: Term) -> bool:
    """Whether two unifiers of ``a`` and ``b`` give the same instance up to renaming.

    Both terms are compared jointly, so the renaming must be consistent.
    """
    images = []
    for label, s in (("first", s1), ("second", s2)):
        left, right = apply(s, a), apply(s, b)
        if left != right:
            raise PreconditionViolation(f"{label} substitution does not unify {a} and {b}")
        images.append(App("", (left, right)))
    return is_variant(images[0], images[1])


def verdict(a: Term, b: Term) -> tuple[str, Optional[Subst]]:
    """('unified', mgu) or ('clash' | 'cycle', None)."""
    try:
        return "unified", robinson_unify(a, b)
    except OracleClash:
        return "clash", None
    except OracleCycle:
        return "cycle", None
