"""Command-line front door.

Subcommands:

  explain --kb FILE --goal "a, b" [--valuator prob|null|cost] [--top-k N]
          [--max-depth N] [--interactive] [--trace FILE]
  check   --kb FILE
  oracle  --kb FILE --goal G --max-size K

Exit codes: 0 when at least one explanation was emitted, 1 when the
search exhausted without one, 2 on usage or KB errors.

In interactive mode the engine speaks the NDJSON session protocol on
stdout and reads client lines from stdin whenever a question is pending;
observe lines received while waiting for an answer are injected before
the answer is applied.
"""

from __future__ import annotations

import argparse
import csv
import sys

from . import protocol
from .errors import AbduceError, InvalidKB, ParseError, StepBudgetExceeded
from .kb import KnowledgeBase, validate
from .parser import parse_goal, parse_kb
from .search import Explanation, Limits, SearchSession, renormalize
from .terms import Atom
from .valuation import Probability, make_valuator


def _load_kb(path: str) -> KnowledgeBase:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_kb(fh.read())


def _depth_schedule(max_depth: int) -> tuple[int, ...]:
    bounds = []
    bound = 16
    while bound < max_depth:
        bounds.append(bound)
        bound *= 2
    bounds.append(max_depth)
    return tuple(bounds)


def _halt_explanations(session: SearchSession) -> list[dict]:
    out = []
    probs = [e.value for e in session.emitted if isinstance(e.value, Probability)]
    weights = renormalize(probs) if probs and len(probs) == len(session.emitted) else None
    for i, e in enumerate(session.emitted):
        row = {
            "assumptions": e.assumption_strs(),
            "value": e.value.json(),
            "posterior": weights[i] if weights else None,
        }
        if e.binding:
            row["binding"] = e.binding
        out.append(row)
    return out


class _InteractiveIO:
    """Engine side of the stdio protocol: writes one JSON object per
    line, and blocks for client lines while a question is pending."""

    def __init__(self, session_ref, out=None, inp=None):
        self.session_ref = session_ref
        self.out = out or sys.stdout
        self.inp = inp or sys.stdin

    def send(self, message: dict) -> None:
        self.out.write(protocol.emit_event(message) + "\n")
        self.out.flush()

    def ask(self, atom: Atom) -> str:
        session = self.session_ref[0]
        self.send(protocol.frontier_message(session.frontier_snapshot()))
        self.send(protocol.ask_message(atom))
        while True:
            line = self.inp.readline()
            if not line:
                return "unknown"
            action = protocol.read_command(line)
            if isinstance(action, protocol.Malformed):
                self.send(protocol.error_message(action.message))
                continue
            if isinstance(action, protocol.Observe):
                session.inject_observation(action.atom)
                self.send(protocol.frontier_message(session.frontier_snapshot()))
                continue
            if str(action.atom) != str(atom):
                self.send(protocol.error_message(f"no pending question about '{action.atom}'"))
                continue
            return action.value


def _run_explain(args) -> int:
    try:
        kb = _load_kb(args.kb)
        goal = parse_goal(args.goal)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    limits = Limits(depth_schedule=_depth_schedule(args.max_depth), step_budget=args.step_budget)
    session_ref: list[SearchSession | None] = [None]
    io = _InteractiveIO(session_ref) if args.interactive else None
    try:
        valuator = make_valuator(args.valuator, kb)
        session = SearchSession(
            goal, kb, valuator, limits, ask_handler=io.ask if io else None
        )
    except (InvalidKB, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    session_ref[0] = session

    budget_hit = False
    try:
        for explanation in session.run(top_k=args.top_k):
            if io:
                posterior = None
                if isinstance(explanation.value, Probability):
                    posterior = renormalize(
                        [e.value for e in session.emitted if isinstance(e.value, Probability)]
                    )[-1]
                io.send(
                    protocol.emitted_message(
                        explanation.assumption_strs(), explanation.value.json(), posterior
                    )
                )
                io.send(protocol.frontier_message(session.frontier_snapshot()))
            else:
                _print_explanation(explanation)
    except StepBudgetExceeded as exc:
        budget_hit = True
        if io:
            io.send(protocol.error_message(str(exc)))
        else:
            print(f"error: {exc}", file=sys.stderr)

    if not session.emitted and not budget_hit:
        if io:
            io.send(protocol.exhausted_message())
        else:
            print("no explanation", file=sys.stderr)
    if io:
        io.send(protocol.halt_message(_halt_explanations(session)))
    elif len(session.emitted) > 1 and all(
        isinstance(e.value, Probability) for e in session.emitted
    ):
        weights = renormalize([e.value for e in session.emitted])
        print("posteriors: " + ", ".join(f"{w:.6f}" for w in weights))

    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as fh:
            for event in session.events:
                fh.write(protocol.emit_event(event) + "\n")

    return 0 if session.emitted else 1


def _print_explanation(e: Explanation) -> None:
    assumptions = ", ".join(e.assumption_strs()) or "(nothing assumed)"
    value = e.value.json()
    line = f"value={value} assuming {{{assumptions}}}"
    if e.binding:
        line += "  where " + ", ".join(f"{k}={v}" for k, v in sorted(e.binding.items()))
    print(line)


def _run_check(args) -> int:
    try:
        kb = _load_kb(args.kb)
    except (OSError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    diagnostics = validate(kb)
    for d in diagnostics:
        print(d)
    if any(d.severity == "error" for d in diagnostics):
        return 2
    print(f"ok: {len(kb.facts)} clauses, {len(kb.constraints)} constraints, "
          f"{len(kb.hypotheses)} hypotheses")
    return 0


def _run_oracle(args) -> int:
    from .oracle import enumerate_explanations

    try:
        kb = _load_kb(args.kb)
        goal = parse_goal(args.goal)
    except (OSError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        result = enumerate_explanations(kb, goal, args.max_size)
    except AbduceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    writer = csv.writer(sys.stdout)
    writer.writerow(["assumptions", "value"])
    for assumed, value in result.entries:
        writer.writerow([", ".join(sorted(str(a) for a in assumed)), repr(value)])
    return 0 if result.entries else 1


def build_arg_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="abduce", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    explain = sub.add_parser("explain", help="search for explanations of a goal")
    explain.add_argument("--kb", required=True)
    explain.add_argument("--goal", required=True, help='atom conjunction, e.g. "a, b(X)"')
    explain.add_argument("--valuator", choices=("prob", "null", "cost"), default="prob")
    explain.add_argument("--top-k", type=int, default=1)
    explain.add_argument("--max-depth", type=int, default=128)
    explain.add_argument("--step-budget", type=int, default=1_000_000)
    explain.add_argument("--interactive", action="store_true")
    explain.add_argument("--trace", help="write the event log to this file")
    explain.set_defaults(fn=_run_explain)

    check = sub.add_parser("check", help="validate a knowledge base")
    check.add_argument("--kb", required=True)
    check.set_defaults(fn=_run_check)

    oracle = sub.add_parser("oracle", help="brute-force explanation table as CSV")
    oracle.add_argument("--kb", required=True)
    oracle.add_argument("--goal", required=True)
    oracle.add_argument("--max-size", type=int, default=6)
    oracle.set_defaults(fn=_run_oracle)

    return ap


def main(argv=None) -> int:
    args = build_arg_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
