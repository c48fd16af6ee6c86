"""Property tests over randomly generated terms."""

from collections import Counter

from hypothesis import given, settings, strategies as st

from pwunify import (App, EventKind, SigmaBuilder, Solver, TermDag, Unified, Var, Variant,
                     parse_term, print_term)
from pwunify import oracle
from pwunify.terms import format_tree, tree_size

variables = st.sampled_from([Var("X"), Var("Y"), Var("Z")])
constants = st.sampled_from([App("a"), App("b")])
terms = st.recursive(
    variables | constants,
    lambda sub: st.builds(lambda t: App("g", (t,)), sub)
    | st.builds(lambda s, t: App("f", (s, t)), sub, sub)
    | st.builds(lambda s, t, u: App("h", (s, t, u)), sub, sub, sub),
    max_leaves=12,
)
# a smaller signature makes unifiable pairs common
narrow = st.recursive(
    st.sampled_from([Var("X"), Var("Y"), Var("Z"), App("a")]),
    lambda sub: st.builds(lambda s, t: App("f", (s, t)), sub, sub),
    max_leaves=8,
)


def fresh(a, b, **kw):
    dag = TermDag()
    u, v = dag.intern(a), dag.intern(b)
    return dag, Solver(dag, u, v, **kw)


class TestDagProperties:
    @given(terms)
    def test_interning_is_structural(self, t):
        one, two = TermDag(), TermDag()
        one.intern(t)
        two.intern(parse_term(format_tree(t)))
        assert [(n.symbol, n.children) for n in one.nodes] == [(n.symbol, n.children) for n in two.nodes]

    @given(st.lists(terms, min_size=1, max_size=4))
    def test_node_count_bounded_by_symbols(self, ts):
        dag = TermDag()
        for t in ts:
            dag.intern(t)
        assert len(dag) <= sum(tree_size(t) for t in ts)

    @given(st.lists(terms, min_size=1, max_size=4))
    def test_parent_multiplicity(self, ts):
        dag = TermDag()
        for t in ts:
            dag.intern(t)
        for n in dag:
            for c, k in Counter(dag.children(n)).items():
                assert dag.parents(c).count(n) == k

    @given(terms)
    def test_print_parse_round_trip(self, t):
        dag = TermDag()
        node = dag.intern(t)
        assert dag.intern(parse_term(print_term(dag, node, 10_000))) == node


class TestEngineProperties:
    @settings(max_examples=300)
    @given(narrow, narrow)
    def test_agrees_with_oracle(self, a, b):
        dag, solver = fresh(a, b)
        outcome = solver.solve()
        tag, mgu = oracle.verdict(a, b)
        assert isinstance(outcome, Unified) == (tag == "unified")
        if mgu is not None:
            found = outcome.substitution.to_trees(dag)
            assert oracle.mgu_equivalent(found, mgu, a, b)

    @settings(max_examples=200)
    @given(narrow, narrow)
    def test_substitution_is_idempotent(self, a, b):
        dag, solver = fresh(a, b)
        outcome = solver.solve()
        if isinstance(outcome, Unified):
            bound = {x for x, _ in outcome.substitution}
            for _, t in outcome.substitution:
                assert not (dag.reachable(t) & bound)

    @given(terms, terms)
    def test_deterministic(self, a, b):
        runs = []
        for _ in range(2):
            dag, solver = fresh(a, b, trace=True)
            runs.append((solver.solve(), solver.state.trace))
        assert runs[0] == runs[1]

    @given(terms, terms, st.sampled_from(list(Variant)))
    def test_pointers_set_once(self, a, b, variant):
        _, solver = fresh(a, b, variant=variant, trace=True)
        solver.solve()
        targets = [e.nodes[0] for e in solver.state.trace if e.kind is EventKind.POINTER]
        assert len(targets) == len(set(targets))

    @given(terms, terms)
    def test_completion_once_in_fixed(self, a, b):
        _, solver = fresh(a, b, trace=True)
        solver.solve()
        done = Counter(e.nodes[0] for e in solver.state.trace if e.kind is EventKind.COMPLETE)
        assert all(k == 1 for k in done.values())

    @given(terms, terms)
    def test_buggy_repeats_only_finish_roots(self, a, b):
        _, solver = fresh(a, b, variant=Variant.PUBLISHED_BUGGY, trace=True)
        solver.solve()
        trace = solver.state.trace
        roots = {e.nodes[0] for e in trace if e.kind is EventKind.POINTER and e.nodes[0] == e.nodes[1]}
        done = Counter(e.nodes[0] for e in trace if e.kind is EventKind.COMPLETE)
        assert all(k == 1 or (k == 2 and n in roots) for n, k in done.items())

    @given(terms, terms)
    def test_sigma_members_are_bound_variables(self, a, b):
        dag, solver = fresh(a, b)
        solver.run_main()
        sigma = solver.state.sigma
        assert len(sigma) == len(set(sigma))
        assert all(dag.is_variable(x) and x in solver.state.subs for x in sigma)

    @given(terms)
    def test_identity_preserved_without_bindings(self, t):
        dag = TermDag()
        node = dag.intern(t)
        size = len(dag)
        assert SigmaBuilder(dag, {}).descend(node) == node
        assert len(dag) == size


class TestOracleProperties:
    @given(narrow, narrow)
    def test_sound_and_idempotent(self, a, b):
        tag, mgu = oracle.verdict(a, b)
        if mgu is not None:
            assert oracle.apply(mgu, a) == oracle.apply(mgu, b)
            for t in (a, b):
                once = oracle.apply(mgu, t)
                assert oracle.apply(mgu, once) == once
