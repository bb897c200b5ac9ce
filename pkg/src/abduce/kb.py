"""Knowledge-base data model, validation, and pretty-printing.

A knowledge base holds definite clauses (facts and rules), integrity
constraints (headless clauses whose body implies falsity), hypothesis
schemas with prior probabilities, probability declarations (per-instance
prior overrides and pairwise conditionals), and askable predicate
declarations.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .terms import Atom, is_ground, variables_of


@dataclass(frozen=True, slots=True)
class Clause:
    head: Atom
    body: tuple[Atom, ...] = ()

    def __str__(self) -> str:
        if not self.body:
            return str(self.head)
        return f"{self.head} <- {', '.join(str(a) for a in self.body)}"


@dataclass(frozen=True, slots=True)
class Constraint:
    body: tuple[Atom, ...]

    def __str__(self) -> str:
        return f"false <- {', '.join(str(a) for a in self.body)}"


@dataclass(frozen=True, slots=True)
class HypothesisSchema:
    name: str
    pattern: Atom
    prior: float

    def __str__(self) -> str:
        return f"hypothesis {self.pattern} : {self.prior!r}"


@dataclass(frozen=True, slots=True)
class PriorOverride:
    atom: Atom
    prob: float

    def __str__(self) -> str:
        return f"prior {self.atom} = {self.prob!r}"


@dataclass(frozen=True, slots=True)
class Conditional:
    """P(target | condition) for two ground hypothesis instances."""

    target: Atom
    condition: Atom
    prob: float

    def __str__(self) -> str:
        return f"prob {self.target} | {self.condition} = {self.prob!r}"


ProbDecl = PriorOverride | Conditional


@dataclass(frozen=True, slots=True)
class KnowledgeBase:
    facts: tuple[Clause, ...] = ()
    constraints: tuple[Constraint, ...] = ()
    hypotheses: tuple[HypothesisSchema, ...] = ()
    prob_decls: tuple[ProbDecl, ...] = ()
    askables: tuple[tuple[str, int], ...] = ()

    def is_askable(self, atom: Atom) -> bool:
        return atom.indicator in self.askables

    def with_fact(self, atom: Atom) -> "KnowledgeBase":
        return replace(self, facts=self.facts + (Clause(atom),))

    def with_constraint(self, body: tuple[Atom, ...]) -> "KnowledgeBase":
        return replace(self, constraints=self.constraints + (Constraint(body),))


@dataclass(frozen=True, slots=True)
class Diagnostic:
    severity: str  # "error" | "warning"
    message: str

    def __str__(self) -> str:
        return f"{self.severity}: {self.message}"


def _schema_matching(kb: KnowledgeBase, atom: Atom) -> HypothesisSchema | None:
    from .terms import unify

    for schema in kb.hypotheses:
        if schema.pattern.indicator == atom.indicator:
            if unify(schema.pattern, atom, {}) is not None:
                return schema
    return None


def _conditional_coherence(kb: KnowledgeBase) -> list[Diagnostic]:
    """Preferring-fewer-assumptions must survive declared conditionals.

    Adding an atom c to an assumption set multiplies the chain value by
    c's own factor and switches each declared target t of c from its
    base factor (override or prior) to P(t|c).  The worst-case ratio

        U(c) = F(c) * prod over boosted targets of P(t|c) / base(t)

    must stay <= 1, else some superset would outvalue its subset, which
    also means the declarations are probabilistically incoherent.  A
    conditional whose condition does not precede its target in the
    canonical chain order can never fire and is flagged as a warning.
    """
    out: list[Diagnostic] = []
    schemas = kb.hypotheses

    def schema_index(atom: Atom) -> int | None:
        from .terms import unify

        for i, schema in enumerate(schemas):
            if schema.pattern.indicator == atom.indicator and unify(schema.pattern, atom, {}) is not None:
                return i
        return None

    def base(atom: Atom) -> float | None:
        for decl in kb.prob_decls:
            if isinstance(decl, PriorOverride) and decl.atom == atom:
                return decl.prob
        i = schema_index(atom)
        return None if i is None else schemas[i].prior

    def order_key(atom: Atom):
        i = schema_index(atom)
        return None if i is None else (i, str(atom))

    conditionals = [d for d in kb.prob_decls if isinstance(d, Conditional)]
    seen_pairs: set[tuple[str, str]] = set()
    applicable: list[Conditional] = []
    for decl in conditionals:
        kt, kc = order_key(decl.target), order_key(decl.condition)
        if kt is None or kc is None:
            continue  # undeclared-hypothesis errors already reported
        pair = (str(decl.target), str(decl.condition))
        if pair in seen_pairs:
            out.append(Diagnostic("error", f"duplicate conditional for '{decl.target} | {decl.condition}'"))
            continue
        seen_pairs.add(pair)
        if not kc < kt:
            out.append(
                Diagnostic(
                    "warning",
                    f"conditional '{decl.target} | {decl.condition}' can never apply: "
                    "its condition does not precede its target in chain order",
                )
            )
            continue
        applicable.append(decl)

    by_condition: dict[str, list[Conditional]] = {}
    for decl in applicable:
        by_condition.setdefault(str(decl.condition), []).append(decl)
    for key, decls in sorted(by_condition.items()):
        condition = decls[0].condition
        own = base(condition)
        incoming = [d.prob for d in applicable if d.target == condition]
        factor_bound = max([own] + incoming)
        u = factor_bound
        for d in decls:
            b = base(d.target)
            if d.prob > b:
                u *= d.prob / b
        if u > 1.0 + 1e-9:
            out.append(
                Diagnostic(
                    "error",
                    f"conditionals on '{condition}' are incoherent: adding it could "
                    f"raise a chain product by a factor of {u:.6g} (> 1), so a larger "
                    "assumption set would outvalue a smaller one",
                )
            )
    return out


def validate(kb: KnowledgeBase) -> list[Diagnostic]:
    """Errors make the KB unusable; warnings are advisory."""
    out: list[Diagnostic] = []
    err = lambda m: out.append(Diagnostic("error", m))
    warn = lambda m: out.append(Diagnostic("warning", m))

    seen_names: set[str] = set()
    for schema in kb.hypotheses:
        if schema.name in seen_names:
            err(f"duplicate hypothesis name '{schema.name}'")
        seen_names.add(schema.name)
        if not (0.0 < schema.prior <= 1.0):
            err(f"hypothesis '{schema.name}' prior {schema.prior:g} outside (0,1]")
        if schema.pattern.indicator in kb.askables:
            err(f"hypothesis pattern '{schema.pattern}' is also declared askable")

    # arity consistency across all predicate uses
    arities: dict[str, set[int]] = {}

    def note(atom: Atom):
        arities.setdefault(atom.pred, set()).add(atom.arity)

    for clause in kb.facts:
        note(clause.head)
        for a in clause.body:
            note(a)
    for c in kb.constraints:
        for a in c.body:
            note(a)
    for schema in kb.hypotheses:
        note(schema.pattern)
    for name, arity in kb.askables:
        arities.setdefault(name, set()).add(arity)
    for pred, seen in sorted(arities.items()):
        if len(seen) > 1:
            err(f"predicate '{pred}' used with multiple arities {sorted(seen)}")

    head_preds = {clause.head.indicator for clause in kb.facts}
    for name, arity in kb.askables:
        if (name, arity) in head_preds:
            err(f"askable predicate '{name}/{arity}' also appears in a clause head")

    seen_priors: set[str] = set()
    for decl in kb.prob_decls:
        atoms = (decl.atom,) if isinstance(decl, PriorOverride) else (decl.target, decl.condition)
        for a in atoms:
            if not is_ground(a):
                err(f"probability declaration over non-ground atom '{a}'")
            elif _schema_matching(kb, a) is None:
                err(f"probability declaration references '{a}', not an instance of any hypothesis")
        if not (0.0 < decl.prob <= 1.0):
            err(f"probability {decl.prob:g} for '{atoms[0]}' outside (0,1]")
        if isinstance(decl, PriorOverride):
            key = str(decl.atom)
            if key in seen_priors:
                err(f"duplicate prior declaration for '{decl.atom}'")
            seen_priors.add(key)

    out.extend(_conditional_coherence(kb))

    hyp_preds = {schema.pattern.indicator for schema in kb.hypotheses}
    defined = head_preds | hyp_preds | set(kb.askables)
    used: set[tuple[str, int]] = set()
    for clause in kb.facts:
        used.update(a.indicator for a in clause.body)
    for c in kb.constraints:
        used.update(a.indicator for a in c.body)
    for pred, arity in sorted(used - defined):
        warn(f"predicate '{pred}/{arity}' is used but never defined")
    for schema in kb.hypotheses:
        if schema.pattern.indicator not in used:
            warn(f"hypothesis '{schema.name}' is never referenced by any clause or constraint")

    return out


def has_errors(diagnostics: list[Diagnostic]) -> bool:
    return any(d.severity == "error" for d in diagnostics)


def format_kb(kb: KnowledgeBase) -> str:
    """Render a KB back to its textual form; reparsing yields an equal KB."""
    lines: list[str] = []
    for clause in kb.facts:
        lines.append(f"fact {clause}.")
    for c in kb.constraints:
        lines.append(f"{c}.")
    for schema in kb.hypotheses:
        lines.append(f"{schema}.")
    for decl in kb.prob_decls:
        lines.append(f"{decl}.")
    for name, arity in kb.askables:
        lines.append(f"askable {name}/{arity}.")
    return "\n".join(lines) + ("\n" if lines else "")
