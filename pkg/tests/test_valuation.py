import random

import pytest
from hypothesis import given, strategies as st

from abduce.errors import AmbiguousDependence, TagMismatch, UndeclaredHypothesis
from abduce.kb import Conditional, HypothesisSchema, PriorOverride
from abduce.parser import parse_kb
from abduce.terms import Atom
from abduce.valuation import (
    CostValuator,
    CostVector,
    NullValuator,
    Ordering,
    Probability,
    ProbabilityValuator,
    Unit,
    chain_probability,
    compare,
    make_valuator,
)


def schemas(*specs):
    return tuple(HypothesisSchema(n, Atom(n), p) for n, p in specs)


A, B, C = Atom("a"), Atom("b"), Atom("c")


def test_initial_values():
    kb = parse_kb("hypothesis a : 0.2.")
    assert make_valuator("prob", kb).initial() == Probability(1.0)
    assert make_valuator("null", kb).initial() == Unit()
    assert make_valuator("cost", kb).initial() == CostVector((0.0,))


def test_chain_probability_empty():
    assert chain_probability(set(), (), schemas(("a", 0.2))) == 1.0


def test_chain_probability_independence_product():
    ss = schemas(("a", 0.2), ("b", 0.3))
    assert chain_probability({A, B}, (), ss) == pytest.approx(0.06, abs=1e-15)


def test_chain_probability_declared_conditional():
    ss = schemas(("a", 0.2), ("b", 0.3))
    decls = (Conditional(B, A, 0.5),)
    assert chain_probability({A, B}, decls, ss) == pytest.approx(0.10, abs=1e-15)


def test_chain_probability_conditional_needs_condition_present():
    ss = schemas(("a", 0.2), ("b", 0.3))
    decls = (Conditional(B, A, 0.5),)
    assert chain_probability({B}, decls, ss) == pytest.approx(0.3, abs=1e-15)


def test_chain_probability_prior_override():
    ss = schemas(("a", 0.2),)
    decls = (PriorOverride(A, 0.9),)
    assert chain_probability({A}, decls, ss) == pytest.approx(0.9, abs=1e-15)


def test_chain_probability_ambiguous():
    ss = schemas(("a", 0.2), ("b", 0.3), ("c", 0.4))
    decls = (Conditional(C, A, 0.5), Conditional(C, B, 0.6))
    with pytest.raises(AmbiguousDependence):
        chain_probability({A, B, C}, decls, ss)


def test_chain_probability_undeclared():
    with pytest.raises(UndeclaredHypothesis):
        chain_probability({Atom("zz")}, (), schemas(("a", 0.2)))


def test_on_assume_single_factor():
    kb = parse_kb("hypothesis a : 0.2.")
    v = ProbabilityValuator(kb)
    assert v.on_assume((), frozenset(), A) == Probability(0.2)


def test_on_assume_idempotent_on_set():
    kb = parse_kb("hypothesis a : 0.2.")
    v = ProbabilityValuator(kb)
    assert v.on_assume((), frozenset({A}), A) == Probability(0.2)


def test_null_valuator_constant():
    v = NullValuator()
    assert v.on_assume((), frozenset(), A) == Unit()
    assert v.on_observe((), frozenset()) == Unit()
    assert v.compare(Unit(), Unit()) is Ordering.EQUAL


def test_on_observe_ignores_observations():
    kb = parse_kb("hypothesis a : 0.2.")
    v = ProbabilityValuator(kb)
    assert v.on_observe((Atom("o1"), Atom("o2")), frozenset({A})) == Probability(0.2)


def test_cost_valuator_counts_per_schema():
    kb = parse_kb("hypothesis a : 0.2. hypothesis b : 0.3.")
    v = CostValuator(kb)
    assert v.on_assume((), frozenset({A}), B) == CostVector((1.0, 1.0))
    assert v.on_observe((), frozenset({A, B})) == CostVector((1.0, 1.0))


def test_compare_probability():
    assert compare(Probability(0.3), Probability(0.2)) is Ordering.GREATER
    assert compare(Probability(0.25), Probability(0.25)) is Ordering.EQUAL
    assert compare(Probability(0.1), Probability(0.2)) is Ordering.LESS


def test_compare_cost_vectors():
    assert compare(CostVector((1.0, 0.0)), CostVector((0.0, 1.0))) is Ordering.INCOMPARABLE
    assert compare(CostVector((0.0, 1.0)), CostVector((0.0, 2.0))) is Ordering.GREATER
    assert compare(CostVector((1.0, 1.0)), CostVector((1.0, 1.0))) is Ordering.EQUAL


def test_compare_tag_mismatch():
    with pytest.raises(TagMismatch):
        compare(Probability(0.5), Unit())


# -- order-theoretic properties --------------------------------------------

probs = st.floats(min_value=0.0, max_value=1.0, allow_nan=False)
vectors = st.tuples(probs, probs).map(CostVector)


@given(vectors, vectors)
def test_cost_compare_antisymmetric(v1, v2):
    o1, o2 = compare(v1, v2), compare(v2, v1)
    flips = {
        Ordering.GREATER: Ordering.LESS,
        Ordering.LESS: Ordering.GREATER,
        Ordering.EQUAL: Ordering.EQUAL,
        Ordering.INCOMPARABLE: Ordering.INCOMPARABLE,
    }
    assert o2 is flips[o1]
    if o1 is Ordering.EQUAL:
        assert v1 == v2


@given(vectors, vectors, vectors)
def test_cost_compare_transitive_on_chains(v1, v2, v3):
    if compare(v1, v2) is Ordering.GREATER and compare(v2, v3) is Ordering.GREATER:
        assert compare(v1, v3) is Ordering.GREATER


@given(st.lists(probs, min_size=2, max_size=2), st.lists(probs, min_size=2, max_size=2))
def test_probability_compare_total(p, q):
    assert compare(Probability(p[0]), Probability(q[0])) in (
        Ordering.LESS,
        Ordering.EQUAL,
        Ordering.GREATER,
    )


def test_fewer_assumptions_never_worse_small():
    """Subset never has a smaller value than its superset."""
    rng = random.Random(3)
    ss = schemas(("a", 0.37), ("b", 0.81), ("c", 0.44), ("d", 0.66))
    atoms = [Atom(s.name) for s in ss]
    decls = (Conditional(Atom("b"), Atom("a"), 0.9), Conditional(Atom("d"), Atom("c"), 0.12))
    for _ in range(200):
        d2 = set(rng.sample(atoms, rng.randint(0, 4)))
        d1 = set(rng.sample(sorted(d2, key=str), rng.randint(0, len(d2))))
        assert chain_probability(d2, decls, ss) <= chain_probability(d1, decls, ss) + 1e-12
