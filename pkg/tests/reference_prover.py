"""Independently written depth-bounded SLD resolution, used as the
reference for the plain-proving acceptance check.

Shares only the KB data model with the package; terms are converted to
plain tuples and unification, renaming and the search loop are all
reimplemented here.  Clause order, leftmost selection and the
steps-along-derivation depth measure follow the same written contract.
"""

from __future__ import annotations

from abduce.kb import KnowledgeBase
from abduce.terms import Atom, Const, Struct, Var

# term encodings: ('v', name) | ('c', name) | ('f', functor, args)


def conv_term(t):
    if isinstance(t, Var):
        return ("v", t.name)
    if isinstance(t, Const):
        return ("c", t.name)
    assert isinstance(t, Struct)
    return ("f", t.functor, tuple(conv_term(a) for a in t.args))


def conv_atom(a: Atom):
    return (a.pred, tuple(conv_term(t) for t in a.args))


def walk(t, s):
    while t[0] == "v" and t in s:
        t = s[t]
    return t


def occurs(v, t, s):
    t = walk(t, s)
    if t[0] == "v":
        return t == v
    if t[0] == "f":
        return any(occurs(v, a, s) for a in t[2])
    return False


def unify_terms(a, b, s):
    a, b = walk(a, s), walk(b, s)
    if a == b:
        return s
    if a[0] == "v":
        if occurs(a, b, s):
            return None
        return {**s, a: b}
    if b[0] == "v":
        if occurs(b, a, s):
            return None
        return {**s, b: a}
    if a[0] == "f" and b[0] == "f" and a[1] == b[1] and len(a[2]) == len(b[2]):
        for x, y in zip(a[2], b[2]):
            s = unify_terms(x, y, s)
            if s is None:
                return None
        return s
    return None


def unify_atoms(a, b, s):
    if a[0] != b[0] or len(a[1]) != len(b[1]):
        return None
    for x, y in zip(a[1], b[1]):
        s = unify_terms(x, y, s)
        if s is None:
            return None
    return s


def resolve_fully(t, s):
    t = walk(t, s)
    if t[0] == "f":
        return ("f", t[1], tuple(resolve_fully(a, s) for a in t[2]))
    return t


def rename_term(t, k):
    if t[0] == "v":
        return ("v", f"{t[1]}@{k}")
    if t[0] == "f":
        return ("f", t[1], tuple(rename_term(a, k) for a in t[2]))
    return t


def rename_atom(a, k):
    return (a[0], tuple(rename_term(t, k) for t in a[1]))


def show(t):
    if t[0] == "v":
        return t[1]
    if t[0] == "c":
        return t[1]
    return f"{t[1]}({','.join(show(a) for a in t[2])})"


def show_atom(a):
    if not a[1]:
        return a[0]
    return f"{a[0]}({','.join(show(t) for t in a[1])})"


def prove(goals, kb: KnowledgeBase, bound: int):
    """Returns ('proved', rendered goal instance) or 'exhausted' or 'depth'."""
    clauses = [(conv_atom(c.head), tuple(conv_atom(b) for b in c.body)) for c in kb.facts]
    goals = tuple(conv_atom(g) for g in goals)
    state = {"cut": False, "k": 0}

    def solve(stack, s, depth):
        if not stack:
            return s
        goal = (stack[0][0], tuple(resolve_fully(t, s) for t in stack[0][1]))
        rest = stack[1:]
        if depth >= bound:
            for head, _body in clauses:
                k = state["k"]
                state["k"] += 1
                if unify_atoms(goal, rename_atom(head, k), s) is not None:
                    state["cut"] = True
                    return None
            return None
        for head, body in clauses:
            k = state["k"]
            state["k"] += 1
            s2 = unify_atoms(goal, rename_atom(head, k), s)
            if s2 is None:
                continue
            result = solve(tuple(rename_atom(b, k) for b in body) + rest, s2, depth + 1)
            if result is not None:
                return result
        return None

    result = solve(goals, {}, 0)
    if result is not None:
        instance = ", ".join(
            show_atom((g[0], tuple(resolve_fully(t, result) for t in g[1]))) for g in goals
        )
        return ("proved", instance)
    return "depth" if state["cut"] else "exhausted"
