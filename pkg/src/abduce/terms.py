"""Terms, atoms and substitutions.

Terms are immutable: a variable, a constant, or a compound term
(functor + arguments).  An atom is a predicate applied to terms.
Substitutions are plain dicts from Var to Term, kept idempotent by
construction (binding a variable resolves the bound term against the
current substitution first, then rewrites existing bindings).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Union


@dataclass(frozen=True, slots=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, slots=True)
class Const:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, slots=True)
class Struct:
    functor: str
    args: tuple["Term", ...]

    def __str__(self) -> str:
        return f"{self.functor}({','.join(str(a) for a in self.args)})"


Term = Union[Var, Const, Struct]


@dataclass(frozen=True, slots=True)
class Atom:
    pred: str
    args: tuple[Term, ...] = ()

    @property
    def arity(self) -> int:
        return len(self.args)

    @property
    def indicator(self) -> tuple[str, int]:
        return (self.pred, len(self.args))

    def __str__(self) -> str:
        if not self.args:
            return self.pred
        return f"{self.pred}({','.join(str(a) for a in self.args)})"


Subst = dict[Var, Term]


def walk(t: Term, s: Subst) -> Term:
    """Follow variable bindings until a non-variable or unbound variable."""
    while isinstance(t, Var) and t in s:
        t = s[t]
    return t


def apply_subst(x: Term | Atom, s: Subst):
    """Simultaneous replacement of bound variables in a term or atom."""
    if isinstance(x, Atom):
        return Atom(x.pred, tuple(apply_subst(a, s) for a in x.args))
    x = walk(x, s)
    if isinstance(x, Struct):
        return Struct(x.functor, tuple(apply_subst(a, s) for a in x.args))
    return x


def _occurs(v: Var, t: Term, s: Subst) -> bool:
    t = walk(t, s)
    if isinstance(t, Var):
        return t == v
    if isinstance(t, Struct):
        return any(_occurs(v, a, s) for a in t.args)
    return False


def _bind(v: Var, t: Term, s: Subst) -> Subst | None:
    t = apply_subst(t, s)
    if t == v:
        return s
    if _occurs(v, t, s):
        return None
    one = {v: t}
    out = {u: apply_subst(tu, one) for u, tu in s.items()}
    out[v] = t
    return out


def unify(a: Term | Atom, b: Term | Atom, s: Subst) -> Subst | None:
    """Most general unifier extending s, with occurs-check. None on failure."""
    if isinstance(a, Atom) or isinstance(b, Atom):
        if not (isinstance(a, Atom) and isinstance(b, Atom)):
            return None
        if a.pred != b.pred or len(a.args) != len(b.args):
            return None
        for x, y in zip(a.args, b.args):
            s = unify(x, y, s)
            if s is None:
                return None
        return s
    a, b = walk(a, s), walk(b, s)
    if a == b:
        return s
    if isinstance(a, Var):
        return _bind(a, b, s)
    if isinstance(b, Var):
        return _bind(b, a, s)
    if isinstance(a, Struct) and isinstance(b, Struct):
        if a.functor != b.functor or len(a.args) != len(b.args):
            return None
        for x, y in zip(a.args, b.args):
            s = unify(x, y, s)
            if s is None:
                return None
        return s
    return None


def is_ground(x: Term | Atom) -> bool:
    if isinstance(x, Atom):
        return all(is_ground(a) for a in x.args)
    if isinstance(x, Var):
        return False
    if isinstance(x, Struct):
        return all(is_ground(a) for a in x.args)
    return True


def variables_of(x: Term | Atom) -> Iterator[Var]:
    if isinstance(x, Atom) or isinstance(x, Struct):
        for a in x.args:
            yield from variables_of(a)
    elif isinstance(x, Var):
        yield x


def rename(x: Term | Atom, index: int):
    """Rename every variable in x to a fresh one tagged with index."""
    mapping: dict[Var, Var] = {}

    def go(t):
        if isinstance(t, Atom):
            return Atom(t.pred, tuple(go(a) for a in t.args))
        if isinstance(t, Var):
            if t not in mapping:
                mapping[t] = Var(f"_{index}#{t.name}")
            return mapping[t]
        if isinstance(t, Struct):
            return Struct(t.functor, tuple(go(a) for a in t.args))
        return t

    return go(x)
