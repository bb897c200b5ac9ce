"""Best-first search for explanations.

Each partial proof lives in a ProofState carrying the assumptions made
so far (D), their value (N), an SLD goal stack and a backtracking frame
stack.  Clause-choice nondeterminism is explored by chronological
backtracking inside a state; only assuming a hypothesis forks: the taken
branch commits to the assumption (value drops, state suspends into the
frontier), while the refused branch continues backtracking with that one
alternative excluded.  The scheduler always resumes a state no other
state strictly exceeds in value, so the first completed proof is a most
preferred explanation.

Backtracking frames record which alternatives were already tried by
identity (clause index, schema index, ask) rather than by position, and
alternatives are recomputed from the current knowledge base on resume.
Facts learned later (user answers, injected observations) are therefore
visible to every live state.

Depth bounds proof size; when a branch is cut by the bound the search
may restart at the next bound in the schedule.  An explanation found
while a cut branch still dominates its value is not emitted at that
level: the level is abandoned and re-searched deeper, which preserves
emission order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator

from .errors import AmbiguousDependence, InvalidKB, StepBudgetExceeded, TagMismatch
from .kb import KnowledgeBase, has_errors, validate
from .resolution import (
    INCONSISTENT,
    AskStep,
    AssumeStep,
    ClauseStep,
    alternative_key,
    refutes,
    resolve_step,
)
from .terms import Atom, Subst, Var, apply_subst, is_ground, variables_of
from .valuation import Ordering, Probability, Value, Valuator, compare


@dataclass(frozen=True, slots=True)
class Frame:
    """A choice point: retry `goals` with everything in `excluded` skipped."""

    goals: tuple[Atom, ...]
    excluded: frozenset
    subst: Subst
    depth: int


@dataclass
class ProofState:
    seq: int
    assumed: frozenset[Atom]
    value: Value
    goals: tuple[Atom, ...]
    subst: Subst
    depth: int
    frames: list[Frame]
    pc: str = "descend"  # "descend" | "backtrack"
    status: str = "suspended"  # "runnable" | "suspended" | "waiting" | "dead"
    var_counter: int = 0
    cut_here: bool = False


@dataclass(frozen=True, slots=True)
class Explanation:
    assumptions: frozenset[Atom]
    value: Value
    binding: dict

    def assumption_strs(self) -> list[str]:
        return sorted(str(a) for a in self.assumptions)


@dataclass(frozen=True, slots=True)
class Limits:
    depth_schedule: tuple[int, ...] = (16, 32, 64, 128)
    max_assumptions: int | None = None
    step_budget: int = 1_000_000


class Frontier:
    """Suspended states, popped by (value by preference, fewer
    assumptions, lower sequence number).  Incomparable values fall
    through to the tie-breaks."""

    def __init__(self):
        self.states: list[ProofState] = []

    def __len__(self) -> int:
        return len(self.states)

    def add(self, st: ProofState) -> None:
        st.status = "suspended"
        self.states.append(st)

    def clear(self) -> None:
        self.states.clear()

    def _best_of(self, states: list[ProofState]) -> ProofState:
        maximal = [
            s
            for s in states
            if not any(
                o is not s and compare(o.value, s.value) is Ordering.GREATER for o in states
            )
        ]
        return min(maximal, key=lambda s: (len(s.assumed), s.seq))

    def pop_best(self) -> ProofState | None:
        if not self.states:
            return None
        best = self._best_of(self.states)
        self.states.remove(best)
        best.status = "runnable"
        return best

    def ordered(self) -> list[ProofState]:
        remaining = list(self.states)
        out = []
        while remaining:
            best = self._best_of(remaining)
            remaining.remove(best)
            out.append(best)
        return out


def renormalize(values: list[Value]) -> list[float]:
    """Posterior weights over an emitted list: value / sum(values)."""
    if not values:
        raise ValueError("cannot renormalize an empty explanation list")
    if not all(isinstance(v, Probability) for v in values):
        raise TagMismatch("renormalization requires probability values")
    total = sum(v.p for v in values)
    return [v.p / total for v in values]


AskHandler = Callable[[Atom], str]  # returns "yes" | "no" | "unknown"


class SearchSession:
    """One explanation search: a goal conjunction, a knowledge base, a
    valuator and a frontier of proof states.  Drive it with step() or
    run(); inject observations between steps."""

    def __init__(
        self,
        goal,
        kb: KnowledgeBase,
        valuator: Valuator,
        limits: Limits = Limits(),
        ask_handler: AskHandler | None = None,
        extra_observations=(),
    ):
        diagnostics = validate(kb)
        if has_errors(diagnostics):
            raise InvalidKB([d for d in diagnostics if d.severity == "error"])
        self.goal: tuple[Atom, ...] = tuple(goal)
        self.goal_vars: tuple[Var, ...] = tuple(
            dict.fromkeys(v for a in self.goal for v in variables_of(a))
        )
        self.kb = kb
        self.valuator = valuator
        self.limits = limits
        self.ask_handler = ask_handler or (lambda atom: "unknown")
        self.observations: tuple[Atom, ...] = self.goal
        self.events: list[dict] = []
        self.emitted: list[Explanation] = []
        self._emitted_keys: set = set()
        self.ask_answers: dict[str, str] = {}
        self.frontier = Frontier()
        self._waiting: ProofState | None = None
        self._seq = 0
        self._level = 0
        self._cut_values: list[Value] = []
        self._sweep_needed = False
        self._steps_used = 0
        self.exhausted = False
        for atom in extra_observations:
            self._learn(atom)
        self._spawn_root()

    # -- state bookkeeping -------------------------------------------------

    @property
    def depth_bound(self) -> int:
        return self.limits.depth_schedule[self._level]

    def _next_seq(self) -> int:
        seq = self._seq
        self._seq += 1
        return seq

    def _log(self, record: dict) -> None:
        self.events.append(record)

    def _spawn_root(self) -> ProofState:
        root = ProofState(
            seq=self._next_seq(),
            assumed=frozenset(),
            value=self.valuator.initial(),
            goals=self.goal,
            subst={},
            depth=0,
            frames=[],
        )
        self._log(
            {
                "type": "state-created",
                "state": root.seq,
                "parent": None,
                "assumptions": [],
                "value": root.value.json(),
                "depth-bound": self.depth_bound,
            }
        )
        self.frontier.add(root)
        return root

    def _kill(self, st: ProofState, reason: str, detail: str | None = None) -> None:
        st.status = "dead"
        record = {"type": "killed", "state": st.seq, "reason": reason}
        if detail:
            record["detail"] = detail
        self._log(record)

    def _live_states(self) -> list[ProofState]:
        states = list(self.frontier.states)
        if self._waiting is not None:
            states.append(self._waiting)
        return states

    def _record_cut(self, st: ProofState) -> None:
        st.cut_here = True
        v = st.value
        for cv in self._cut_values:
            if compare(cv, v) in (Ordering.GREATER, Ordering.EQUAL):
                return
        self._cut_values = [
            cv for cv in self._cut_values if compare(v, cv) is not Ordering.GREATER
        ] + [v]

    def _has_next_level(self) -> bool:
        return self._level + 1 < len(self.limits.depth_schedule)

    def _restart_level(self) -> None:
        self._level += 1
        self._cut_values = []
        self.frontier.clear()
        self._spawn_root()

    def _tick(self) -> None:
        self._steps_used += 1
        if self._steps_used > self.limits.step_budget:
            raise StepBudgetExceeded(f"step budget of {self.limits.step_budget} exhausted")

    # -- new knowledge -----------------------------------------------------

    def _learn(self, atom: Atom) -> None:
        """Record a new true atom: a fact for proofs and an observation
        for the valuator; recompute every live state's value and flag the
        consistency sweep."""
        self.kb = self.kb.with_fact(atom)
        self.observations = self.observations + (atom,)
        for st in self._live_states():
            st.value = self.valuator.on_observe(self.observations, st.assumed)
            st.status = "suspended" if st is not self._waiting else "waiting"
        self._sweep_needed = True

    def inject_observation(self, atom: Atom) -> "SearchSession":
        """A new observation arrived: everything live is revalued and
        suspended, refutable states die at the next scheduling sweep, and
        a fresh root re-explores proofs the new fact may have enabled."""
        if not is_ground(atom):
            raise ValueError(f"observation '{atom}' must be ground")
        self._log({"type": "observation-injected", "atom": str(atom)})
        self._learn(atom)
        self.exhausted = False
        self._spawn_root()
        return self

    def _apply_answer(self, atom: Atom, answer: str) -> None:
        self.ask_answers[str(atom)] = answer
        if answer == "yes":
            self._learn(atom)
        elif answer == "no":
            self.kb = self.kb.with_constraint((atom,))
            self._sweep_needed = True

    # -- scheduling --------------------------------------------------------

    def schedule(self) -> ProofState | None:
        """Pop the state to resume; None when the frontier is exhausted.
        Runs the pending consistency sweep first."""
        if self._sweep_needed:
            for st in list(self.frontier.states):
                if refutes(self.kb, st.assumed, self.depth_bound) is INCONSISTENT:
                    self.frontier.states.remove(st)
                    self._kill(st, "inconsistent")
            self._sweep_needed = False
        return self.frontier.pop_best()

    def frontier_snapshot(self) -> list[dict]:
        return [
            {
                "seq": st.seq,
                "assumptions": sorted(str(a) for a in st.assumed),
                "value": st.value.json(),
                "status": st.status,
            }
            for st in self.frontier.ordered()
        ]

    # -- expansion ---------------------------------------------------------

    def _try(self, st: ProofState, goals: tuple[Atom, ...], excluded: frozenset):
        """Resolve the leftmost goal against the current KB, skipping
        alternatives already tried.  Returns None on failure, or the
        chosen alternative with its sibling frame already pushed."""
        self._tick()
        alts = resolve_step(goals[0], self.kb, st.subst, rename_index=st.var_counter, strict=False)
        st.var_counter += len(self.kb.facts) + len(self.kb.hypotheses) + 1
        alts = [a for a in alts if alternative_key(a) not in excluded]
        if not alts:
            return None
        if st.depth >= self.depth_bound:
            self._record_cut(st)
            return None
        alt = alts[0]
        st.frames.append(Frame(goals, excluded | {alternative_key(alt)}, st.subst, st.depth))
        return alt

    def _expand(self, st: ProofState) -> str:
        while True:
            if st.pc == "descend":
                if not st.goals:
                    outcome = self._complete(st)
                    if outcome == "duplicate":
                        st.pc = "backtrack"
                        continue
                    return outcome
                alt = self._try(st, st.goals, frozenset())
            else:
                if not st.frames:
                    self._kill(st, "depth-cut" if st.cut_here else "exhausted")
                    return "died"
                frame = st.frames.pop()
                st.goals, st.subst, st.depth = frame.goals, frame.subst, frame.depth
                alt = self._try(st, frame.goals, frame.excluded)
            if alt is None:
                st.pc = "backtrack"
                continue
            if isinstance(alt, ClauseStep):
                st.goals = alt.subgoals + st.goals[1:]
                st.subst = alt.subst
                st.depth += 1
                st.pc = "descend"
                continue
            if isinstance(alt, AssumeStep):
                self.fork_on_assume(st, alt)
                return "forked"
            assert isinstance(alt, AskStep)
            atom = alt.atom
            if not is_ground(atom) or str(atom) in self.ask_answers:
                st.pc = "backtrack"
                continue
            self._ask(st, atom)
            return "asked"

    def fork_on_assume(self, st: ProofState, alt: AssumeStep) -> tuple[ProofState | None, ProofState]:
        """Split on assuming alt.instance: the taken branch is st itself
        with the hypothesis added (killed instead if inconsistent or
        invalid), the refused branch is a copy that backtracks past this
        alternative."""
        refused = ProofState(
            seq=self._next_seq(),
            assumed=st.assumed,
            value=st.value,
            goals=st.goals,
            subst=st.subst,
            depth=st.depth,
            frames=list(st.frames),
            pc="backtrack",
            var_counter=st.var_counter,
            cut_here=st.cut_here,
        )
        self._log(
            {
                "type": "state-created",
                "state": refused.seq,
                "parent": st.seq,
                "assumptions": sorted(str(a) for a in refused.assumed),
                "value": refused.value.json(),
                "depth-bound": self.depth_bound,
            }
        )
        self.frontier.add(refused)

        if not alt.ground:
            self._kill(st, "non-ground-hypothesis", detail=str(alt.instance))
            return None, refused
        h = alt.instance
        parent_value = st.value
        if h not in st.assumed:
            try:
                new_value = self.valuator.on_assume(self.observations, st.assumed, h)
            except AmbiguousDependence as exc:
                self._kill(st, "ambiguous-dependence", detail=str(exc))
                return None, refused
            new_assumed = st.assumed | {h}
            if (
                self.limits.max_assumptions is not None
                and len(new_assumed) > self.limits.max_assumptions
            ):
                self._kill(st, "assumption-limit")
                return None, refused
            if refutes(self.kb, new_assumed, self.depth_bound) is INCONSISTENT:
                self._log(
                    {
                        "type": "assumed",
                        "state": st.seq,
                        "atom": str(h),
                        "value": new_value.json(),
                        "parent_value": parent_value.json(),
                        "refused": refused.seq,
                    }
                )
                self._kill(st, "inconsistent")
                return None, refused
            st.assumed = new_assumed
            st.value = new_value
        self._log(
            {
                "type": "assumed",
                "state": st.seq,
                "atom": str(h),
                "value": st.value.json(),
                "parent_value": parent_value.json(),
                "refused": refused.seq,
            }
        )
        st.goals = st.goals[1:]
        st.subst = alt.subst
        st.depth += 1
        st.frames = []
        st.pc = "descend"
        self.frontier.add(st)
        return st, refused

    def _ask(self, st: ProofState, atom: Atom) -> None:
        self._log({"type": "asked", "state": st.seq, "atom": str(atom)})
        st.status = "waiting"
        self._waiting = st
        try:
            answer = self.ask_handler(atom)
        finally:
            self._waiting = None
        if answer not in ("yes", "no", "unknown"):
            answer = "unknown"
        self._apply_answer(atom, answer)
        st.pc = "backtrack"
        self.frontier.add(st)

    def _complete(self, st: ProofState) -> str:
        binding = {v.name: str(apply_subst(v, st.subst)) for v in self.goal_vars}
        key = (frozenset(str(a) for a in st.assumed), tuple(sorted(binding.items())))
        if key in self._emitted_keys:
            return "duplicate"
        if refutes(self.kb, st.assumed, self.depth_bound) is INCONSISTENT:
            self._kill(st, "inconsistent")
            return "died"
        dominated = any(
            compare(cv, st.value) is Ordering.GREATER for cv in self._cut_values
        )
        if dominated and self._has_next_level():
            self._restart_level()
            return "level-restart"
        self._emitted_keys.add(key)
        explanation = Explanation(st.assumed, st.value, binding)
        self.emitted.append(explanation)
        posterior = None
        if isinstance(st.value, Probability):
            posterior = renormalize([e.value for e in self.emitted])[-1]
        self._log(
            {
                "type": "emitted",
                "assumptions": explanation.assumption_strs(),
                "value": st.value.json(),
                "posterior": posterior,
                "binding": binding,
                "frontier_values": [s.value.json() for s in self.frontier.states],
            }
        )
        st.pc = "backtrack"
        self.frontier.add(st)
        return "emitted"

    # -- driving -----------------------------------------------------------

    def step(self) -> str:
        """One scheduler turn: pop the best state and expand it until it
        forks, asks, emits, dies, or triggers a level restart."""
        if self.exhausted:
            return "exhausted"
        st = self.schedule()
        if st is None:
            if self._cut_values and self._has_next_level():
                self._restart_level()
                return "level-restart"
            self.exhausted = True
            return "exhausted"
        return self._expand(st)

    def run(self, top_k: int = 1) -> Iterator[Explanation]:
        """Stream explanations best-first, up to top_k of them."""
        yielded = 0
        while yielded < top_k:
            tag = self.step()
            if tag == "emitted":
                yielded += 1
                yield self.emitted[-1]
            elif tag == "exhausted":
                return


def start(
    goal,
    kb: KnowledgeBase,
    valuator: Valuator,
    limits: Limits = Limits(),
    ask_handler: AskHandler | None = None,
    extra_observations=(),
) -> SearchSession:
    """Open a search session; raises InvalidKB when validation reports errors."""
    return SearchSession(goal, kb, valuator, limits, ask_handler, extra_observations)
