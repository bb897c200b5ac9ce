"""Valuators: map an explanation (and the current observations) to a
value in a partially ordered set.

Three valuators ship with the engine:

* probability — product of hypothesis priors, with declared pairwise
  conditionals and per-instance prior overrides taking precedence over
  the independence default;
* null — single-element poset, which reduces the search to plain
  resolution proving;
* cost — per-schema assumption counts compared componentwise (lower is
  better), a genuinely partial order used to exercise the poset path.

`compare(v1, v2)` is preference order: `greater` means v1 is preferred.
Adding assumptions never improves a value.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import AmbiguousDependence, TagMismatch, UndeclaredHypothesis
from .kb import Conditional, HypothesisSchema, KnowledgeBase, PriorOverride
from .terms import Atom, unify


@dataclass(frozen=True, slots=True)
class Probability:
    p: float

    def json(self):
        return self.p


@dataclass(frozen=True, slots=True)
class Unit:
    def json(self):
        return "unit"


@dataclass(frozen=True, slots=True)
class CostVector:
    costs: tuple[float, ...]

    def json(self):
        return list(self.costs)


Value = Probability | Unit | CostVector


class Ordering(enum.Enum):
    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"
    INCOMPARABLE = "incomparable"


def compare(v1: Value, v2: Value) -> Ordering:
    """Preference comparison of two values of the same tag."""
    if type(v1) is not type(v2):
        raise TagMismatch(f"cannot compare {type(v1).__name__} with {type(v2).__name__}")
    if isinstance(v1, Probability):
        if v1.p > v2.p:
            return Ordering.GREATER
        if v1.p < v2.p:
            return Ordering.LESS
        return Ordering.EQUAL
    if isinstance(v1, Unit):
        return Ordering.EQUAL
    if len(v1.costs) != len(v2.costs):
        raise TagMismatch("cost vectors of different length")
    # lower cost in every component is preferred
    any_lower = any(a < b for a, b in zip(v1.costs, v2.costs))
    any_higher = any(a > b for a, b in zip(v1.costs, v2.costs))
    if any_lower and any_higher:
        return Ordering.INCOMPARABLE
    if any_lower:
        return Ordering.GREATER
    if any_higher:
        return Ordering.LESS
    return Ordering.EQUAL


def _matching_schema(atom: Atom, schemas) -> tuple[int, HypothesisSchema]:
    for i, schema in enumerate(schemas):
        if schema.pattern.indicator == atom.indicator and unify(schema.pattern, atom, {}) is not None:
            return i, schema
    raise UndeclaredHypothesis(f"'{atom}' is not an instance of any declared hypothesis")


def canonical_order(assumed, schemas) -> list[Atom]:
    """Schema declaration order first, then rendered term order."""
    return sorted(assumed, key=lambda a: (_matching_schema(a, schemas)[0], str(a)))


def chain_probability(assumed, decls, schemas) -> float:
    """Probability of a set of ground hypothesis instances as a chain
    product in canonical order.  Each factor is, in order of precedence:
    the single declared conditional whose condition occurs earlier in the
    chain, the per-instance prior override, or the schema prior
    (independence default).  More than one applicable conditional for the
    same element is an error.
    """
    ordered = canonical_order(set(assumed), schemas)
    conditionals = [d for d in decls if isinstance(d, Conditional)]
    overrides = {str(d.atom): d.prob for d in decls if isinstance(d, PriorOverride)}
    product = 1.0
    earlier: set[str] = set()
    for atom in ordered:
        key = str(atom)
        applicable = [d for d in conditionals if str(d.target) == key and str(d.condition) in earlier]
        if len(applicable) > 1:
            conds = ", ".join(str(d.condition) for d in applicable)
            raise AmbiguousDependence(f"'{atom}' has multiple applicable conditionals (given {conds})")
        if applicable:
            factor = applicable[0].prob
        elif key in overrides:
            factor = overrides[key]
        else:
            factor = _matching_schema(atom, schemas)[1].prior
        product *= factor
        earlier.add(key)
    return product


class Valuator:
    """Behaviour bundle: initial value, update on a new assumption,
    update on new observations, and the preference order."""

    name = "valuator"

    def initial(self) -> Value:
        raise NotImplementedError

    def on_assume(self, observations, assumed, hypothesis: Atom) -> Value:
        raise NotImplementedError

    def on_observe(self, observations, assumed) -> Value:
        raise NotImplementedError

    def compare(self, v1: Value, v2: Value) -> Ordering:
        return compare(v1, v2)


class ProbabilityValuator(Valuator):
    name = "prob"

    def __init__(self, kb: KnowledgeBase):
        self.schemas = kb.hypotheses
        self.decls = kb.prob_decls

    def initial(self) -> Value:
        return Probability(1.0)

    def value_of(self, assumed) -> Value:
        return Probability(chain_probability(assumed, self.decls, self.schemas))

    def on_assume(self, observations, assumed, hypothesis: Atom) -> Value:
        return self.value_of(set(assumed) | {hypothesis})

    def on_observe(self, observations, assumed) -> Value:
        return self.value_of(assumed)


class NullValuator(Valuator):
    name = "null"

    def initial(self) -> Value:
        return Unit()

    def on_assume(self, observations, assumed, hypothesis: Atom) -> Value:
        return Unit()

    def on_observe(self, observations, assumed) -> Value:
        return Unit()


class CostValuator(Valuator):
    """One cost unit per assumption, tallied per schema."""

    name = "cost"

    def __init__(self, kb: KnowledgeBase):
        self.schemas = kb.hypotheses

    def initial(self) -> Value:
        return CostVector((0.0,) * len(self.schemas))

    def value_of(self, assumed) -> Value:
        costs = [0.0] * len(self.schemas)
        for atom in set(assumed):
            costs[_matching_schema(atom, self.schemas)[0]] += 1.0
        return CostVector(tuple(costs))

    def on_assume(self, observations, assumed, hypothesis: Atom) -> Value:
        return self.value_of(set(assumed) | {hypothesis})

    def on_observe(self, observations, assumed) -> Value:
        return self.value_of(assumed)


VALUATORS = {"prob": ProbabilityValuator, "null": NullValuator, "cost": CostValuator}


def make_valuator(name: str, kb: KnowledgeBase) -> Valuator:
    try:
        cls = VALUATORS[name]
    except KeyError:
        raise ValueError(f"unknown valuator '{name}' (choose from {sorted(VALUATORS)})")
    return cls(kb) if cls is not NullValuator else cls()


def initial(v: Valuator) -> Value:
    return v.initial()


def on_assume(v: Valuator, observations, assumed, hypothesis: Atom) -> Value:
    return v.on_assume(observations, assumed, hypothesis)


def on_observe(v: Valuator, observations, assumed) -> Value:
    return v.on_observe(observations, assumed)
