"""Exhaustive truth-table semantics for propositional KBs.

The slow-but-obviously-right yardstick: enumerate every assignment over
the 0-ary atoms, keep the ones satisfying all clauses and constraints,
and decide entailment and consistency classically.  Cross-checks both
the resolution engine and the forward-chaining oracle on small inputs.
"""

from __future__ import annotations

import itertools

from abduce.kb import KnowledgeBase
from abduce.terms import Atom


def atom_names(kb: KnowledgeBase, extra=()) -> list[str]:
    names = set()
    for c in kb.facts:
        names.add(c.head.pred)
        names.update(a.pred for a in c.body)
    for c in kb.constraints:
        names.update(a.pred for a in c.body)
    for schema in kb.hypotheses:
        names.add(schema.pattern.pred)
    names.update(a.pred if isinstance(a, Atom) else a for a in extra)
    return sorted(names)


def models(kb: KnowledgeBase, true_atoms=frozenset(), extra=()):
    """All satisfying assignments, as frozensets of true atom names."""
    names = atom_names(kb, extra)
    out = []
    for bits in itertools.product((False, True), repeat=len(names)):
        m = frozenset(n for n, b in zip(names, bits) if b)
        if not true_atoms <= m:
            continue
        if any(
            set(a.pred for a in c.body) <= m and c.head.pred not in m for c in kb.facts
        ):
            continue
        if any(set(a.pred for a in c.body) <= m for c in kb.constraints):
            continue
        out.append(m)
    return out


def consistent(kb: KnowledgeBase, assumed=frozenset()) -> bool:
    names = frozenset(a.pred if isinstance(a, Atom) else a for a in assumed)
    return bool(models(kb, names, extra=names))


def entails(kb: KnowledgeBase, assumed, goal) -> bool:
    """F plus the assumed atoms classically entails the goal conjunction."""
    assumed_names = frozenset(a.pred if isinstance(a, Atom) else a for a in assumed)
    goal_names = {a.pred if isinstance(a, Atom) else a for a in goal}
    ms = models(kb, assumed_names, extra=assumed_names | goal_names)
    return bool(ms) and all(goal_names <= m for m in ms)
