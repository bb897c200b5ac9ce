"""Parser for the knowledge-base language.

Grammar (statements end with '.', '%' starts a comment to end of line):

    stmt   := "fact" clause "."
            | "false" "<-" atoms "."
            | "hypothesis" atom ":" number "."
            | "prior" ground_atom "=" number "."
            | "prob" ground_atom "|" ground_atom "=" number "."
            | "askable" name "/" arity "."
    clause := atom [ "<-" atoms ]
    atoms  := atom { "," atom }
    atom   := name [ "(" term { "," term } ")" ]
    term   := VARIABLE | INTEGER | name [ "(" term { "," term } ")" ]

Variables begin with an uppercase letter; constants and functors begin
lowercase.  Integers are allowed as constants so circuit-style KBs can
talk about bit values.  Parsing is deterministic and reports the first
syntax error with line and column.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParseError
from .kb import Clause, Conditional, Constraint, HypothesisSchema, KnowledgeBase, PriorOverride
from .terms import Atom, Const, Struct, Term, Var, is_ground


@dataclass(frozen=True, slots=True)
class Token:
    kind: str  # NAME VAR INT NUMBER PUNCT EOF
    text: str
    line: int
    column: int


_PUNCT = ("<-", "(", ")", ",", ".", ":", "|", "=", "/")


def _lex(text: str) -> list[Token]:
    tokens: list[Token] = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if c.isspace():
            i += 1
            col += 1
            continue
        if c == "%":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if text.startswith("<-", i):
            tokens.append(Token("PUNCT", "<-", line, col))
            i += 2
            col += 2
            continue
        if c in "(),.:|=/":
            tokens.append(Token("PUNCT", c, line, col))
            i += 1
            col += 1
            continue
        if c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            # a fraction only if digits follow the dot, so '1.' stays INT + '.'
            if j < n and text[j] == "." and j + 1 < n and text[j + 1].isdigit():
                j += 1
                while j < n and text[j].isdigit():
                    j += 1
                tokens.append(Token("NUMBER", text[i:j], line, col))
            else:
                tokens.append(Token("INT", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            kind = "VAR" if word[0].isupper() or word[0] == "_" else "NAME"
            tokens.append(Token(kind, word, line, col))
            col += j - i
            i = j
            continue
        raise ParseError(line, col, f"unexpected character {c!r}")
    tokens.append(Token("EOF", "", line, col))
    return tokens


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        t = self.tokens[self.pos]
        self.pos += 1
        return t

    def fail(self, expected: str):
        t = self.peek()
        got = "end of input" if t.kind == "EOF" else repr(t.text)
        raise ParseError(t.line, t.column, f"expected {expected}, got {got}")

    def expect(self, text: str) -> Token:
        t = self.peek()
        if t.kind == "PUNCT" and t.text == text:
            return self.next()
        self.fail(f"'{text}'")

    def name(self, what: str = "a name") -> Token:
        t = self.peek()
        if t.kind == "NAME":
            return self.next()
        self.fail(what)

    def term(self) -> Term:
        t = self.peek()
        if t.kind == "VAR":
            self.next()
            return Var(t.text)
        if t.kind == "INT":
            self.next()
            return Const(t.text)
        if t.kind == "NAME":
            self.next()
            if self.peek().kind == "PUNCT" and self.peek().text == "(":
                self.next()
                args = [self.term()]
                while self.peek().text == ",":
                    self.next()
                    args.append(self.term())
                self.expect(")")
                return Struct(t.text, tuple(args))
            return Const(t.text)
        self.fail("a term")

    def atom(self) -> Atom:
        t = self.name("a predicate name")
        if self.peek().kind == "PUNCT" and self.peek().text == "(":
            self.next()
            args = [self.term()]
            while self.peek().text == ",":
                self.next()
                args.append(self.term())
            self.expect(")")
            return Atom(t.text, tuple(args))
        return Atom(t.text)

    def atoms(self) -> tuple[Atom, ...]:
        out = [self.atom()]
        while self.peek().kind == "PUNCT" and self.peek().text == ",":
            self.next()
            out.append(self.atom())
        return tuple(out)

    def number(self) -> tuple[float, Token]:
        t = self.peek()
        if t.kind in ("NUMBER", "INT"):
            self.next()
            return float(t.text), t
        self.fail("a number")

    def probability(self) -> float:
        value, tok = self.number()
        if not (0.0 < value <= 1.0):
            raise ParseError(tok.line, tok.column, f"probability {tok.text} outside (0,1]")
        return value

    def ground_atom(self, context: str) -> Atom:
        t = self.peek()
        a = self.atom()
        if not is_ground(a):
            raise ParseError(t.line, t.column, f"{context} must be ground, got '{a}'")
        return a

    def statement(self, kb: dict) -> None:
        t = self.peek()
        if t.kind != "NAME":
            self.fail("a statement keyword (fact, false, hypothesis, prior, prob, askable)")
        if t.text == "fact":
            self.next()
            head = self.atom()
            body: tuple[Atom, ...] = ()
            if self.peek().kind == "PUNCT" and self.peek().text == "<-":
                self.next()
                body = self.atoms()
            kb["facts"].append(Clause(head, body))
        elif t.text == "false":
            self.next()
            self.expect("<-")
            kb["constraints"].append(Constraint(self.atoms()))
        elif t.text == "hypothesis":
            self.next()
            pattern = self.atom()
            self.expect(":")
            prior = self.probability()
            kb["hypotheses"].append(HypothesisSchema(pattern.pred, pattern, prior))
        elif t.text == "prior":
            self.next()
            atom = self.ground_atom("prior atom")
            self.expect("=")
            kb["prob_decls"].append(PriorOverride(atom, self.probability()))
        elif t.text == "prob":
            self.next()
            target = self.ground_atom("conditional target")
            self.expect("|")
            condition = self.ground_atom("conditional condition")
            self.expect("=")
            kb["prob_decls"].append(Conditional(target, condition, self.probability()))
        elif t.text == "askable":
            self.next()
            name = self.name("an askable predicate name")
            self.expect("/")
            arity = self.peek()
            if arity.kind != "INT":
                self.fail("an arity")
            self.next()
            kb["askables"].append((name.text, int(arity.text)))
        else:
            self.fail("a statement keyword (fact, false, hypothesis, prior, prob, askable)")
        self.expect(".")


def parse_kb(text: str) -> KnowledgeBase:
    """Parse a whole KB; raises ParseError at the first syntax error."""
    parser = _Parser(_lex(text))
    parts = {"facts": [], "constraints": [], "hypotheses": [], "prob_decls": [], "askables": []}
    while parser.peek().kind != "EOF":
        parser.statement(parts)
    return KnowledgeBase(
        facts=tuple(parts["facts"]),
        constraints=tuple(parts["constraints"]),
        hypotheses=tuple(parts["hypotheses"]),
        prob_decls=tuple(parts["prob_decls"]),
        askables=tuple(parts["askables"]),
    )


def parse_atom(text: str) -> Atom:
    """Parse a single atom, e.g. an observation typed by a user."""
    parser = _Parser(_lex(text))
    a = parser.atom()
    if parser.peek().kind != "EOF":
        parser.fail("end of input")
    return a


def parse_goal(text: str) -> tuple[Atom, ...]:
    """Parse a comma-separated atom conjunction."""
    parser = _Parser(_lex(text))
    out = parser.atoms()
    if parser.peek().kind != "EOF":
        parser.fail("end of input")
    return out
