"""Newline-delimited JSON session protocol.

Engine to client: ask, frontier, emitted, exhausted, error, halt.
Client to engine: answer, observe.  One JSON object per line, flushed
immediately; a malformed client line produces an error message and is
otherwise ignored.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import ParseError
from .parser import parse_atom
from .terms import Atom

ENGINE_TYPES = ("ask", "frontier", "emitted", "exhausted", "error", "halt")
CLIENT_TYPES = ("observe", "answer")


def ask_message(atom: Atom | str) -> dict:
    return {"type": "ask", "atom": str(atom)}


def frontier_message(states: list[dict]) -> dict:
    return {"type": "frontier", "states": states}


def emitted_message(assumptions: list[str], value, posterior) -> dict:
    return {"type": "emitted", "assumptions": assumptions, "value": value, "posterior": posterior}


def exhausted_message() -> dict:
    return {"type": "exhausted"}


def error_message(message: str) -> dict:
    return {"type": "error", "message": message}


def halt_message(explanations: list[dict], reason: str = "done") -> dict:
    return {"type": "halt", "reason": reason, "explanations": explanations}


def emit_event(event: dict) -> str:
    """Serialize one engine event to exactly one protocol line."""
    return json.dumps(event, separators=(",", ":"), ensure_ascii=False)


@dataclass(frozen=True, slots=True)
class Answer:
    atom: Atom
    value: str  # yes | no | unknown


@dataclass(frozen=True, slots=True)
class Observe:
    atom: Atom


@dataclass(frozen=True, slots=True)
class Malformed:
    message: str


def read_command(line: str):
    """Parse one client line into an engine action."""
    line = line.strip()
    if not line:
        return Malformed("empty line")
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        return Malformed(f"not valid JSON: {exc}")
    if not isinstance(obj, dict) or "type" not in obj:
        return Malformed("expected an object with a 'type' field")
    kind = obj["type"]
    if kind == "answer":
        if obj.get("value") not in ("yes", "no", "unknown"):
            return Malformed("answer value must be yes, no or unknown")
        try:
            atom = parse_atom(str(obj.get("atom", "")))
        except ParseError as exc:
            return Malformed(f"bad atom: {exc}")
        return Answer(atom, obj["value"])
    if kind == "observe":
        try:
            atom = parse_atom(str(obj.get("atom", "")))
        except ParseError as exc:
            return Malformed(f"bad atom: {exc}")
        return Observe(atom)
    return Malformed(f"unknown client message type {kind!r}")
