"""SLD resolution and the bounded refutation used for consistency checks.

`prove` is a plain depth-bounded Prolog-style prover over the KB's
definite clauses plus a set of ground atoms treated as extra facts.  It
never assumes hypotheses and never asks; those alternatives exist only
for the search layer, which obtains them through `resolve_step`.

Depth counts resolution steps along the current derivation, so it bounds
proof size, not just nesting.  A branch cut by the bound is reported as
DepthBoundHit only when no proof was found some other way.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NonGroundHypothesis
from .kb import KnowledgeBase
from .terms import Atom, Subst, apply_subst, is_ground, rename, unify


@dataclass(frozen=True, slots=True)
class ClauseStep:
    clause_index: int
    subst: Subst
    subgoals: tuple[Atom, ...]


@dataclass(frozen=True, slots=True)
class AssumeStep:
    schema_index: int
    instance: Atom
    subst: Subst
    ground: bool


@dataclass(frozen=True, slots=True)
class AskStep:
    atom: Atom


Alternative = ClauseStep | AssumeStep | AskStep


def alternative_key(alt: Alternative):
    """Identity of an alternative, stable under later KB growth."""
    if isinstance(alt, ClauseStep):
        return ("clause", alt.clause_index)
    if isinstance(alt, AssumeStep):
        return ("assume", alt.schema_index)
    return ("ask",)


def resolve_step(
    goal: Atom,
    kb: KnowledgeBase,
    s: Subst,
    rename_index: int = 0,
    strict: bool = True,
) -> list[Alternative]:
    """All ways to resolve `goal` under s, in KB declaration order:
    clause steps first, then hypothesis assumptions, then an ask step for
    askable predicates.  With strict=True a hypothesis instance left
    non-ground by unification raises NonGroundHypothesis; with
    strict=False it is returned with ground=False for the caller to
    reject at assumption time.
    """
    goal = apply_subst(goal, s)
    out: list[Alternative] = []
    for i, clause in enumerate(kb.facts):
        if clause.head.indicator != goal.indicator:
            continue
        renamed_head = rename(clause.head, rename_index + i)
        s2 = unify(goal, renamed_head, s)
        if s2 is not None:
            body = tuple(rename(a, rename_index + i) for a in clause.body)
            out.append(ClauseStep(i, s2, body))
    base = rename_index + len(kb.facts)
    for j, schema in enumerate(kb.hypotheses):
        if schema.pattern.indicator != goal.indicator:
            continue
        pattern = rename(schema.pattern, base + j)
        s2 = unify(goal, pattern, s)
        if s2 is None:
            continue
        instance = apply_subst(pattern, s2)
        ground = is_ground(instance)
        if not ground and strict:
            raise NonGroundHypothesis(
                f"hypothesis '{schema.name}' instance '{instance}' is not ground"
            )
        out.append(AssumeStep(j, instance, s2, ground))
    if kb.is_askable(goal):
        out.append(AskStep(goal))
    return out


@dataclass(frozen=True, slots=True)
class Proved:
    subst: Subst
    used_assumed: frozenset[Atom]


class ExhaustedWithinBound:
    __slots__ = ()

    def __repr__(self) -> str:
        return "ExhaustedWithinBound"


class DepthBoundHit:
    __slots__ = ()

    def __repr__(self) -> str:
        return "DepthBoundHit"


EXHAUSTED = ExhaustedWithinBound()
DEPTH_BOUND_HIT = DepthBoundHit()

ProofOutcome = Proved | ExhaustedWithinBound | DepthBoundHit


def prove(
    goals,
    kb: KnowledgeBase,
    assumed: frozenset[Atom] = frozenset(),
    depth_bound: int = 64,
) -> ProofOutcome:
    """Depth-first SLD over clause steps only, leftmost subgoal first,
    clauses in KB order then assumed atoms in rendered order.  Returns
    the first proof found.
    """
    assumed_order = sorted(assumed, key=str)
    cut = False
    counter = [0]

    def solve(goals: tuple[Atom, ...], s: Subst, depth: int, used: frozenset[Atom]):
        nonlocal cut
        if not goals:
            return Proved(s, used)
        goal = apply_subst(goals[0], s)
        rest = goals[1:]
        if depth >= depth_bound:
            # the bound cut this branch only if some step could have applied
            for clause in kb.facts:
                if clause.head.indicator != goal.indicator:
                    continue
                idx = counter[0]
                counter[0] += 1
                if unify(goal, rename(clause.head, idx), s) is not None:
                    cut = True
                    return None
            if any(unify(goal, a, s) is not None for a in assumed_order):
                cut = True
            return None
        for clause in kb.facts:
            if clause.head.indicator != goal.indicator:
                continue
            idx = counter[0]
            counter[0] += 1
            s2 = unify(goal, rename(clause.head, idx), s)
            if s2 is None:
                continue
            body = tuple(rename(a, idx) for a in clause.body)
            result = solve(body + rest, s2, depth + 1, used)
            if result is not None:
                return result
        for a in assumed_order:
            s2 = unify(goal, a, s)
            if s2 is None:
                continue
            result = solve(rest, s2, depth + 1, used | {a})
            if result is not None:
                return result
        return None

    result = solve(tuple(goals), {}, 0, frozenset())
    if result is not None:
        return result
    return DEPTH_BOUND_HIT if cut else EXHAUSTED


class Inconsistent:
    __slots__ = ()

    def __repr__(self) -> str:
        return "Inconsistent"


class NoRefutationWithinBound:
    __slots__ = ()

    def __repr__(self) -> str:
        return "NoRefutationWithinBound"


INCONSISTENT = Inconsistent()
NO_REFUTATION = NoRefutationWithinBound()


def refutes(kb: KnowledgeBase, assumed: frozenset[Atom], bound: int):
    """Inconsistent iff some constraint body is provable from the facts
    plus the assumed atoms within the bound.  Anything else counts as
    consistent; the check is deliberately incomplete.
    """
    for constraint in kb.constraints:
        if isinstance(prove(constraint.body, kb, assumed, bound), Proved):
            return INCONSISTENT
    return NO_REFUTATION
