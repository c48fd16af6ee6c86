"""Shared generators for the test suite."""

import random

import networkx as nx

from pwunify import App, Kind, Symbol, TermDag, Var

LEAVES = (Var("X"), Var("Y"), App("a"))


def small_universe(depth=3):
    """Every term over {f/2, g/1, a/0} and {X, Y} of height <= depth (leaves have height 1)."""
    terms = list(LEAVES)
    for _ in range(depth - 1):
        terms = (list(LEAVES) + [App("g", (t,)) for t in terms]
                 + [App("f", (s, t)) for s in terms for t in terms])
    return terms


def two_terms(a, b):
    dag = TermDag()
    return dag, dag.intern(a, root=True), dag.intern(b, root=True)


_SYMBOLS = [("f", 2), ("g", 1), ("h", 3)]


def random_subs_problem(rng: random.Random):
    """A random DAG plus a Subs map over some of its variables.

    Returns (dag, sigma, subs, cyclic) where ``cyclic`` is decided by
    networkx on the graph of subs edges and child edges.
    """
    dag = TermDag()
    nodes = [dag.variable(f"V{i}") for i in range(rng.randint(1, 6))]
    variables = list(nodes)
    nodes += [dag.make(Symbol(Kind.FUNCTION, c)) for c in ("a", "b")[:rng.randint(0, 2)]]
    for _ in range(rng.randint(0, 8)):
        name, arity = rng.choice(_SYMBOLS)
        kids = tuple(rng.choice(nodes) for _ in range(arity))
        nodes.append(dag.make(Symbol(Kind.FUNCTION, name, arity), kids))
    bound = rng.sample(variables, rng.randint(1, len(variables)))
    subs = {x: rng.choice(nodes) for x in bound}
    sigma = list(bound)
    rng.shuffle(sigma)

    graph = nx.DiGraph()
    graph.add_nodes_from(range(len(dag)))
    for x, t in subs.items():
        graph.add_edge(x, t)
    for n in range(len(dag)):
        for c in dag.children(n):
            graph.add_edge(n, c)
    return dag, sigma, subs, not nx.is_directed_acyclic_graph(graph)


def expand_with_subs(dag, subs, node):
    """Tree of ``node`` with Subs applied to a fixpoint (acyclic maps only)."""
    if dag.is_variable(node):
        if node in subs:
            return expand_with_subs(dag, subs, subs[node])
        return Var(dag.symbol(node).name)
    return App(dag.symbol(node).name,
               tuple(expand_with_subs(dag, subs, c) for c in dag.children(node)))


def clash_free(a, b):
    """True iff ``a`` and ``b`` unify as rational trees (no occurs check),
    i.e. no symbol clash is reachable whatever order equations are solved in."""
    parent = {}

    def find(t):
        while parent.get(t, t) != t:
            t = parent[t]
        return t

    work = [(a, b)]
    while work:
        s, t = work.pop()
        s, t = find(s), find(t)
        if s == t:
            continue
        if isinstance(s, Var):
            parent[s] = t
        elif isinstance(t, Var):
            parent[t] = s
        elif s.functor != t.functor or len(s.args) != len(t.args):
            return False
        else:
            parent[s] = t
            work.extend(zip(s.args, t.args))
    return True
