"""Brute-force ground-truth enumeration for tests and acceptance.

Deliberately independent of the resolution engine: entailment and
consistency are decided model-theoretically, by computing the least
model of the grounded clauses plus a candidate assumption set with
forward chaining and checking goal membership and constraint violation
against it.  For definite clauses this coincides with classical
entailment, so disagreement with the search engine localizes bugs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import GroundingExplosion
from .kb import KnowledgeBase
from .terms import Atom, Const, Struct, Term, Var, is_ground
from .valuation import canonical_order, chain_probability


def _match_term(pattern: Term, value: Term, binding: dict) -> dict | None:
    if isinstance(pattern, Var):
        bound = binding.get(pattern)
        if bound is None:
            out = dict(binding)
            out[pattern] = value
            return out
        return binding if bound == value else None
    if isinstance(pattern, Const):
        return binding if pattern == value else None
    if isinstance(pattern, Struct) and isinstance(value, Struct):
        if pattern.functor != value.functor or len(pattern.args) != len(value.args):
            return None
        for p, v in zip(pattern.args, value.args):
            binding = _match_term(p, v, binding)
            if binding is None:
                return None
        return binding
    return None


def _match_atom(pattern: Atom, fact: Atom, binding: dict) -> dict | None:
    if pattern.pred != fact.pred or len(pattern.args) != len(fact.args):
        return None
    for p, v in zip(pattern.args, fact.args):
        binding = _match_term(p, v, binding)
        if binding is None:
            return None
    return binding


def _instantiate(x, binding: dict):
    if isinstance(x, Atom):
        return Atom(x.pred, tuple(_instantiate(a, binding) for a in x.args))
    if isinstance(x, Var):
        return binding.get(x, x)
    if isinstance(x, Struct):
        return Struct(x.functor, tuple(_instantiate(a, binding) for a in x.args))
    return x


def _ground_subterms(t: Term, out: set) -> None:
    if is_ground(t):
        out.add(t)
    if isinstance(t, Struct):
        for a in t.args:
            _ground_subterms(a, out)


def term_universe(kb: KnowledgeBase, goal) -> list[Term]:
    """Every ground term occurring anywhere in the KB or the goal."""
    out: set = set()
    atoms: list[Atom] = [c.head for c in kb.facts]
    for c in kb.facts:
        atoms.extend(c.body)
    for c in kb.constraints:
        atoms.extend(c.body)
    for schema in kb.hypotheses:
        atoms.append(schema.pattern)
    atoms.extend(goal)
    for a in atoms:
        for t in a.args:
            _ground_subterms(t, out)
    return sorted(out, key=str)


def hypothesis_universe(kb: KnowledgeBase, universe, cap: int = 4096) -> list[Atom]:
    """All ground instances of the hypothesis patterns over the universe."""
    out: list[Atom] = []
    seen: set[Atom] = set()
    for schema in kb.hypotheses:
        vars_ = list(dict.fromkeys(v for t in schema.pattern.args for v in _vars(t)))
        if not vars_:
            candidates = [schema.pattern]
        else:
            if universe and len(universe) ** len(vars_) > cap:
                raise GroundingExplosion(
                    f"hypothesis '{schema.name}' grounds to more than {cap} instances"
                )
            candidates = [
                _instantiate(schema.pattern, dict(zip(vars_, combo)))
                for combo in itertools.product(universe, repeat=len(vars_))
            ]
        for atom in candidates:
            if is_ground(atom) and atom not in seen:
                seen.add(atom)
                out.append(atom)
        if len(out) > cap:
            raise GroundingExplosion(f"more than {cap} ground hypothesis instances")
    return out


def _vars(t: Term):
    if isinstance(t, Var):
        yield t
    elif isinstance(t, Struct):
        for a in t.args:
            yield from _vars(a)


class _Chainer:
    """Naive forward chaining to the least model over a fixed universe."""

    def __init__(self, kb: KnowledgeBase, universe, atom_cap: int = 20000):
        self.clauses = kb.facts
        self.constraints = kb.constraints
        self.universe = universe
        self.atom_cap = atom_cap

    def _join(self, body, index, binding: dict):
        if not body:
            yield binding
            return
        first = _instantiate(body[0], binding)
        for fact in index.get(first.indicator, ()):
            b2 = _match_atom(first, fact, binding)
            if b2 is not None:
                yield from self._join(body[1:], index, b2)

    def closure(self, extra: frozenset[Atom]) -> set[Atom]:
        derived: set[Atom] = set(extra)
        index: dict = {}
        for a in derived:
            index.setdefault(a.indicator, []).append(a)
        changed = True
        while changed:
            changed = False
            for clause in self.clauses:
                for binding in list(self._join(clause.body, index, {})):
                    head = _instantiate(clause.head, binding)
                    free = list(dict.fromkeys(v for t in head.args for v in _vars(t)))
                    if free:
                        heads = [
                            _instantiate(head, dict(zip(free, combo)))
                            for combo in itertools.product(self.universe, repeat=len(free))
                        ]
                    else:
                        heads = [head]
                    for h in heads:
                        if is_ground(h) and h not in derived:
                            derived.add(h)
                            index.setdefault(h.indicator, []).append(h)
                            changed = True
            if len(derived) > self.atom_cap:
                raise GroundingExplosion(f"least model exceeds {self.atom_cap} atoms")
        self._index = index
        return derived

    def violates_constraint(self, index) -> bool:
        return any(next(self._join(c.body, index, {}), None) is not None for c in self.constraints)

    def entails(self, goal, index) -> bool:
        return next(self._join(tuple(goal), index, {}), None) is not None


@dataclass(frozen=True, slots=True)
class OracleResult:
    entries: list  # (frozenset[Atom], float) sorted by value descending

    def best(self):
        return self.entries[0] if self.entries else None

    def best_value(self) -> float | None:
        return self.entries[0][1] if self.entries else None


def enumerate_explanations(kb: KnowledgeBase, goal, max_size: int) -> OracleResult:
    """Every hypothesis subset of size <= max_size that entails the goal
    and respects the constraints, with its chain probability, sorted by
    value descending (ties: fewer assumptions, then rendering)."""
    goal = tuple(goal)
    universe = term_universe(kb, goal)
    hyps = canonical_order(hypothesis_universe(kb, universe), kb.hypotheses)
    chainer = _Chainer(kb, universe)
    entries = []
    for size in range(0, min(max_size, len(hyps)) + 1):
        for combo in itertools.combinations(hyps, size):
            d = frozenset(combo)
            chainer.closure(d)
            index = chainer._index
            if chainer.violates_constraint(index):
                continue
            if not chainer.entails(goal, index):
                continue
            value = chain_probability(d, kb.prob_decls, kb.hypotheses)
            entries.append((d, value))
    entries.sort(key=lambda e: (-e[1], len(e[0]), sorted(str(a) for a in e[0])))
    return OracleResult(entries)


def entails_and_consistent(kb: KnowledgeBase, goal, assumed) -> tuple[bool, bool]:
    """Model-theoretic check for a single assumption set: (entails goal,
    consistent with constraints)."""
    goal = tuple(goal)
    universe = term_universe(kb, goal)
    chainer = _Chainer(kb, universe)
    chainer.closure(frozenset(assumed))
    index = chainer._index
    return chainer.entails(goal, index), not chainer.violates_constraint(index)
