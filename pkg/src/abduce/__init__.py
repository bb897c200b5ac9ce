"""abduce: best-first abductive inference over definite-clause KBs.

Given facts, integrity constraints and hypothesis schemas with priors,
the engine searches for assumption sets that entail a goal while staying
consistent, most preferred first.
"""

from .errors import (
    AbduceError,
    AmbiguousDependence,
    GroundingExplosion,
    InvalidKB,
    NonGroundHypothesis,
    ParseError,
    StepBudgetExceeded,
    TagMismatch,
)
from .kb import (
    Clause,
    Conditional,
    Constraint,
    Diagnostic,
    HypothesisSchema,
    KnowledgeBase,
    PriorOverride,
    format_kb,
    validate,
)
from .parser import parse_atom, parse_goal, parse_kb
from .resolution import (
    DEPTH_BOUND_HIT,
    EXHAUSTED,
    INCONSISTENT,
    NO_REFUTATION,
    Proved,
    prove,
    refutes,
    resolve_step,
)
from .search import Explanation, Limits, SearchSession, renormalize, start
from .terms import Atom, Const, Struct, Var, apply_subst, unify
from .valuation import (
    CostValuator,
    CostVector,
    NullValuator,
    Ordering,
    Probability,
    ProbabilityValuator,
    Unit,
    Valuator,
    chain_probability,
    compare,
    make_valuator,
)

__all__ = [
    "AbduceError",
    "AmbiguousDependence",
    "Atom",
    "Clause",
    "Conditional",
    "Const",
    "Constraint",
    "CostValuator",
    "CostVector",
    "DEPTH_BOUND_HIT",
    "Diagnostic",
    "EXHAUSTED",
    "Explanation",
    "GroundingExplosion",
    "HypothesisSchema",
    "INCONSISTENT",
    "InvalidKB",
    "KnowledgeBase",
    "Limits",
    "NO_REFUTATION",
    "NonGroundHypothesis",
    "NullValuator",
    "Ordering",
    "ParseError",
    "PriorOverride",
    "Probability",
    "ProbabilityValuator",
    "Proved",
    "SearchSession",
    "StepBudgetExceeded",
    "Struct",
    "TagMismatch",
    "Unit",
    "Valuator",
    "Var",
    "apply_subst",
    "chain_probability",
    "compare",
    "format_kb",
    "make_valuator",
    "parse_atom",
    "parse_goal",
    "parse_kb",
    "prove",
    "refutes",
    "renormalize",
    "resolve_step",
    "start",
    "unify",
    "validate",
]
