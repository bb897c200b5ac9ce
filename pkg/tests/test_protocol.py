import json

from abduce import protocol
from abduce.terms import Atom, Const


def test_ask_message_exact_bytes():
    msg = protocol.ask_message(Atom("symptom", (Const("fever"),)))
    assert protocol.emit_event(msg) == '{"type":"ask","atom":"symptom(fever)"}'


def test_emitted_message_exact_bytes():
    msg = protocol.emitted_message(["h2", "h3"], 0.25, 0.25 / 0.35)
    line = protocol.emit_event(msg)
    assert line == (
        '{"type":"emitted","assumptions":["h2","h3"],"value":0.25,'
        '"posterior":0.7142857142857143}'
    )


def test_exhausted_message_exact_bytes():
    assert protocol.emit_event(protocol.exhausted_message()) == '{"type":"exhausted"}'


def test_halt_message_shape():
    msg = protocol.halt_message([{"assumptions": ["h1"], "value": 0.1, "posterior": 1.0}])
    parsed = json.loads(protocol.emit_event(msg))
    assert parsed["type"] == "halt"
    assert parsed["explanations"][0]["value"] == 0.1


def test_read_answer():
    action = protocol.read_command('{"type":"answer","atom":"fever(john)","value":"yes"}')
    assert isinstance(action, protocol.Answer)
    assert str(action.atom) == "fever(john)"
    assert action.value == "yes"


def test_read_observe():
    action = protocol.read_command('{"type":"observe","atom":"vaccinated(john)"}')
    assert isinstance(action, protocol.Observe)
    assert str(action.atom) == "vaccinated(john)"


def test_read_bad_answer_value():
    action = protocol.read_command('{"type":"answer","atom":"a","value":"maybe"}')
    assert isinstance(action, protocol.Malformed)


def test_read_bad_atom():
    action = protocol.read_command('{"type":"observe","atom":"Fever("}')
    assert isinstance(action, protocol.Malformed)


def test_read_garbage_line():
    assert isinstance(protocol.read_command("not json at all"), protocol.Malformed)
    assert isinstance(protocol.read_command("[1, 2]"), protocol.Malformed)
    assert isinstance(protocol.read_command('{"type":"launch"}'), protocol.Malformed)
    assert isinstance(protocol.read_command(""), protocol.Malformed)


def test_round_trip_engine_messages():
    messages = [
        protocol.ask_message("a(b)"),
        protocol.frontier_message([{"seq": 0, "assumptions": [], "value": 1.0, "status": "suspended"}]),
        protocol.emitted_message(["h1"], 0.1, 1.0),
        protocol.exhausted_message(),
        protocol.error_message("boom"),
        protocol.halt_message([]),
    ]
    for msg in messages:
        assert json.loads(protocol.emit_event(msg)) == msg
        assert msg["type"] in protocol.ENGINE_TYPES


def test_round_trip_client_messages():
    for original in (
        {"type": "answer", "atom": "fever(john)", "value": "no"},
        {"type": "observe", "atom": "wet(grass)"},
    ):
        line = json.dumps(original)
        action = protocol.read_command(line)
        rebuilt = (
            {"type": "answer", "atom": str(action.atom), "value": action.value}
            if isinstance(action, protocol.Answer)
            else {"type": "observe", "atom": str(action.atom)}
        )
        assert rebuilt == original
