"""Exception types shared across the engine."""

from __future__ import annotations


class AbduceError(Exception):
    pass


class ParseError(AbduceError):
    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column
        self.message = message


class InvalidKB(AbduceError):
    def __init__(self, diagnostics):
        super().__init__("; ".join(str(d) for d in diagnostics))
        self.diagnostics = list(diagnostics)


class NonGroundHypothesis(AbduceError):
    pass


class AmbiguousDependence(AbduceError):
    pass


class UndeclaredHypothesis(AbduceError):
    pass


class TagMismatch(AbduceError):
    pass


class StepBudgetExceeded(AbduceError):
    pass


class GroundingExplosion(AbduceError):
    pass
