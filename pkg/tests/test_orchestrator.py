"""Session state, mode gating, tool dispatch, scripted and remote clients."""

from __future__ import annotations

import json
import random

import httpx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import wire_bench
from protobench.agent.clients import (
    AgentReply,
    RemoteAgentClient,
    ScriptedAgentClient,
    ToolCall,
    check_tape,
    load_tape,
)
from protobench.agent.session import Role, Session, StatusEvent
from protobench.agent.tools import Mode, ToolRegistry, default_tool_schemas
from protobench.errors import (
    AgentUnavailable,
    ModeViolation,
    NoSchematic,
    ParamOutOfBounds,
    UnknownComponent,
    UnknownTool,
)
from protobench.netlist import parse_netlist_xml


class TestSessionState:
    def test_new_session_defaults(self):
        session, *_ = wire_bench({})
        assert session.mode is Mode.ASK
        assert session.turns[0].role is Role.SYSTEM
        assert "breadboard" in session.turns[0].content

    def test_set_mode_appends_developer_turn_each_call(self):
        session, *_ = wire_bench({})
        session.set_mode(Mode.TEST)
        session.set_mode(Mode.TEST)
        mode_turns = [
            t for t in session.turns
            if t.role is Role.DEVELOPER
            and isinstance(t.content, dict)
            and t.content.get("kind") == "mode_change"
        ]
        assert len(mode_turns) == 2
        assert session.mode is Mode.TEST

    def test_sync_schematic_increments_revision(self, loveometer):
        session, *_ = wire_bench({})
        session.sync_schematic(loveometer)
        assert session.schematic.revision == 1
        session.sync_schematic(loveometer)
        assert session.schematic.revision == 2

    def test_sync_twice_appends_two_turns(self, loveometer):
        session, *_ = wire_bench({})
        session.sync_schematic(loveometer)
        session.sync_schematic(loveometer)
        schematic_turns = [
            t for t in session.turns
            if isinstance(t.content, dict) and t.content.get("kind") == "schematic"
        ]
        assert len(schematic_turns) == 2

    def test_select_context_requires_schematic(self):
        session, *_ = wire_bench({})
        with pytest.raises(NoSchematic):
            session.select_context(["LED1"])

    def test_select_unknown_component(self, loveometer):
        session, *_ = wire_bench({})
        session.sync_schematic(loveometer)
        with pytest.raises(UnknownComponent):
            session.select_context(["GHOST"])

    def test_select_empty_clears(self, loveometer):
        session, *_ = wire_bench({})
        session.sync_schematic(loveometer)
        session.select_context(["LED1"])
        assert [e.id for e in session.selected_context] == ["LED1"]
        session.select_context([])
        assert session.selected_context == []


class TestSubmitQuery:
    def test_text_only_reply(self):
        session, *_ = wire_bench({0: {"text": "All good.", "calls": ()}})
        events = []
        session.add_listener(lambda e: events.append(e) if isinstance(e, StatusEvent) else None)
        outcome = session.submit_query("Is the wiring fine?")
        assert outcome.text == "All good."
        assert outcome.actions == ()
        assert [e.kind for e in events] == [StatusEvent.THINKING, StatusEvent.RESPONDED]

    def test_empty_query_rejected(self):
        session, *_ = wire_bench({})
        with pytest.raises(ValueError):
            session.submit_query("   ")

    def test_context_turn_immediately_before_user_turn(self, loveometer):
        tape = {0: {"text": "Anode row 4, cathode row 5: connected.", "calls": ()}}
        session, engine, device, client = wire_bench(tape)
        session.sync_schematic(loveometer)
        session.select_context(["LED1"])
        session.submit_query("Is it properly connected?")
        seen = client.transcript[0]["turns"]
        assert seen[-1].role is Role.USER
        context_turn = seen[-2]
        assert context_turn.role is Role.DEVELOPER
        entry = context_turn.content["components"][0]
        assert entry["rows"] == {"anode": 4, "cathode": 5}

    def test_latest_developer_turn_carries_yaml_after_sync(self, loveometer):
        tape = {0: {"text": "ok", "calls": ()}}
        session, engine, device, client = wire_bench(tape)
        session.sync_schematic(loveometer)
        session.submit_query("What changed?")
        seen = client.transcript[0]["turns"]
        developer_turns = [t for t in seen if t.role is Role.DEVELOPER]
        assert developer_turns[-1].content["yaml"] == session.schematic_yaml

    def test_highlight_executes_in_ask_mode(self):
        tape = {0: {"text": "Those sit on rows 4 and 7.",
                    "calls": (ToolCall("highlight_rows", {"rows": [4, 7]}),)}}
        session, engine, device, client = wire_bench(tape)
        outcome = session.submit_query("Where does the resistor go?")
        assert len(outcome.actions) == 1
        assert device.frames == [
            b'{"cmd":"led","row":4,"pattern":"blink"}\n',
            b'{"cmd":"led","row":7,"pattern":"blink"}\n',
        ]

    def test_test_creation_rejected_in_ask_mode(self):
        tape = {0: {"text": "Adding a test.",
                    "calls": (ToolCall("create_voltage_test",
                                       {"probe_pin": "A0", "probe_rows": [12]}),)}}
        session, engine, device, client = wire_bench(tape)
        outcome = session.submit_query("Check the node voltage")
        assert outcome.actions == ()
        assert engine.artifacts == {}
        tool_turn = [t for t in session.turns if t.role is Role.TOOL][-1]
        assert tool_turn.content["ok"] is False
        assert tool_turn.content["error"] == "ModeViolation"

    def test_adding_tests_event_emitted_in_test_mode(self):
        tape = {0: {"text": "Test created.",
                    "calls": (ToolCall("create_voltage_test",
                                       {"probe_pin": "A0", "probe_rows": [12]}),)}}
        session, engine, device, client = wire_bench(tape)
        session.set_mode(Mode.TEST)
        events = []
        session.add_listener(lambda e: events.append(e.kind) if isinstance(e, StatusEvent) else None)
        outcome = session.submit_query("Test the node")
        assert events == [StatusEvent.THINKING, StatusEvent.ADDING_TESTS, StatusEvent.RESPONDED]
        assert len(engine.artifacts) == 1
        assert outcome.actions[0].payload["test_id"] in engine.artifacts

    def test_agent_failure_keeps_user_turn(self):
        session, *_ = wire_bench({})  # empty tape -> AgentUnavailable
        events = []
        session.add_listener(lambda e: events.append(e) if isinstance(e, StatusEvent) else None)
        with pytest.raises(AgentUnavailable):
            session.submit_query("hello?")
        assert session.turns[-1].role is Role.USER
        assert [e.kind for e in events] == [StatusEvent.THINKING, StatusEvent.FAILED]
        assert events[-1].reason


class TestDispatch:
    def test_unknown_tool(self):
        session, *_ = wire_bench({})
        with pytest.raises(UnknownTool):
            session.dispatch_tool_call(ToolCall("warp_core", {}))

    def test_param_out_of_bounds_before_any_device_command(self):
        session, engine, device, _ = wire_bench({})
        with pytest.raises(ParamOutOfBounds):
            session.dispatch_tool_call(ToolCall("highlight_rows", {"rows": [51]}))
        assert device.frames == []

    def test_get_schematic_returns_yaml(self, loveometer):
        session, *_ = wire_bench({})
        session.sync_schematic(loveometer)
        result = session.dispatch_tool_call(ToolCall("get_schematic", {}))
        assert result.payload["yaml"] == session.schematic_yaml

    def test_get_schematic_without_sync(self):
        session, *_ = wire_bench({})
        with pytest.raises(NoSchematic):
            session.dispatch_tool_call(ToolCall("get_schematic", {}))

    def test_connection_suggestion_allowed_in_ask(self):
        session, engine, *_ = wire_bench({})
        result = session.dispatch_tool_call(
            ToolCall("create_connection_suggestion",
                     {"from_row": 4, "to_row": 9, "description": "swap the jumper"})
        )
        assert result.payload["suggestion_id"] in engine.artifacts

    def test_suggestion_rejected_in_test_mode(self):
        session, engine, *_ = wire_bench({})
        session.set_mode(Mode.TEST)
        with pytest.raises(ModeViolation):
            session.dispatch_tool_call(
                ToolCall("create_connection_suggestion",
                         {"from_row": 4, "to_row": 9, "description": "swap"})
            )

    def test_schema_filtering_by_mode(self):
        session, *_ = wire_bench({})
        ask_tools = {s.name for s in session.registry.schemas(Mode.ASK)}
        test_tools = {s.name for s in session.registry.schemas(Mode.TEST)}
        assert "create_voltage_test" not in ask_tools
        assert "create_connection_suggestion" not in test_tools
        assert {"highlight_rows", "get_schematic"} <= ask_tools & test_tools


ADVERSARIAL_CALLS = [
    ToolCall("highlight_rows", {"rows": [0]}),
    ToolCall("highlight_rows", {"rows": [51]}),
    ToolCall("highlight_rows", {"rows": [-3, 4]}),
    ToolCall("highlight_rows", {"rows": []}),
    ToolCall("highlight_rows", {"rows": [4], "pattern": "strobe"}),
    ToolCall("create_voltage_test", {"probe_pin": "D0", "probe_rows": [4]}),
    ToolCall("create_voltage_test", {"probe_pin": "A0", "probe_rows": [4], "expected_mv": [100, 9000]}),
    ToolCall("create_signal_test", {"drive_pin": "A0", "steps": [{"mv": 100, "duration_ms": 10}], "observe": "A0"}),
    ToolCall("create_signal_test", {"drive_pin": "D0", "steps": [{"mv": 5001, "duration_ms": 10}], "observe": "A0"}),
    ToolCall("create_signal_test", {"drive_pin": "D0", "steps": [{"mv": 500, "duration_ms": 0}], "observe": "A0"}),
    ToolCall("create_signal_test", {"drive_pin": "D0", "steps": [], "observe": "A0"}),
    ToolCall("create_connection_suggestion", {"from_row": 0, "to_row": 4, "description": "x"}),
    ToolCall("create_component_suggestion", {"component_kind": "resistor", "rows": [99], "description": "x"}),
]


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=50, deadline=None)
def test_no_out_of_bounds_call_reaches_the_device(seed):
    rng = random.Random(seed)
    calls = tuple(rng.choices(ADVERSARIAL_CALLS, k=rng.randint(1, 6)))
    tape = {0: {"text": "trying something sneaky", "calls": calls}}
    session, engine, device, _ = wire_bench(tape)
    session.set_mode(rng.choice([Mode.ASK, Mode.TEST]))
    outcome = session.submit_query("go")
    assert outcome.actions == ()
    assert device.frames == []
    assert engine.artifacts == {}


class TestTape:
    def test_load_and_check(self, fixtures_dir):
        tape = load_tape(str(fixtures_dir / "tape-demo.yaml"))
        registry = ToolRegistry()
        for schema in default_tool_schemas():
            registry.register(schema, lambda p: {})
        check_tape(tape, registry)
        assert set(tape) == {0, 1}

    def test_check_rejects_unknown_tool(self):
        tape = load_tape("0:\n  calls:\n    - tool: not_a_tool\n      args: {}\n")
        registry = ToolRegistry()
        for schema in default_tool_schemas():
            registry.register(schema, lambda p: {})
        with pytest.raises(UnknownTool):
            check_tape(tape, registry)

    def test_scripted_client_cursor_is_assistant_count(self):
        tape = {0: {"text": "first", "calls": ()}, 1: {"text": "second", "calls": ()}}
        session, *_ = wire_bench(tape)
        assert session.submit_query("one").text == "first"
        assert session.submit_query("two").text == "second"

    def test_exhausted_tape_raises(self):
        session, *_ = wire_bench({0: {"text": "only", "calls": ()}})
        session.submit_query("one")
        with pytest.raises(AgentUnavailable):
            session.submit_query("two")


class TestRemoteClient:
    def _client(self, handler) -> RemoteAgentClient:
        return RemoteAgentClient(
            endpoint="http://agent.local/v1/chat/completions",
            model="bench-model",
            transport=httpx.MockTransport(handler),
        )

    def test_round_trip_with_tool_calls(self, monkeypatch):
        monkeypatch.setenv("PROTOBENCH_AGENT_KEY", "sekrit")
        captured = {}

        def handler(request: httpx.Request) -> httpx.Response:
            captured["body"] = json.loads(request.content)
            captured["auth"] = request.headers.get("authorization")
            return httpx.Response(200, json={
                "choices": [{
                    "message": {
                        "content": "Highlighting now.",
                        "tool_calls": [{
                            "function": {
                                "name": "highlight_rows",
                                "arguments": '{"rows": [4]}',
                            }
                        }],
                    }
                }]
            })

        session, *_ = wire_bench({})
        client = self._client(handler)
        reply = client.complete(tuple(session.turns), session.registry.schemas(Mode.ASK))
        assert reply.text == "Highlighting now."
        assert reply.calls == (ToolCall("highlight_rows", {"rows": [4]}),)
        assert captured["auth"] == "Bearer sekrit"
        assert captured["body"]["model"] == "bench-model"
        assert captured["body"]["messages"][0]["role"] == "system"
        names = [t["function"]["name"] for t in captured["body"]["tools"]]
        assert "highlight_rows" in names

    def test_http_failure_is_agent_unavailable(self):
        client = self._client(lambda request: httpx.Response(500, text="boom"))
        with pytest.raises(AgentUnavailable):
            client.complete((), ())

    def test_malformed_payload_is_agent_unavailable(self):
        client = self._client(lambda request: httpx.Response(200, json={"nope": 1}))
        with pytest.raises(AgentUnavailable):
            client.complete((), ())


class TestTurnOrdering:
    def test_all_developer_turns_precede_the_user_turn(self, loveometer):
        tape = {0: {"text": "ok", "calls": ()}, 1: {"text": "ok again", "calls": ()}}
        session, engine, device, client = wire_bench(tape)
        session.submit_query("first")
        # three developer turns from three different state changes
        session.set_mode(Mode.TEST)
        session.sync_schematic(loveometer)
        session.select_context(["R1"])
        session.submit_query("second")
        seen = client.transcript[1]["turns"]
        user_index = max(i for i, t in enumerate(seen) if t.role is Role.USER)
        developer_kinds = [
            t.content.get("kind")
            for t in seen[:user_index]
            if t.role is Role.DEVELOPER and isinstance(t.content, dict)
        ]
        assert developer_kinds[-3:] == ["mode_change", "schematic", "selected_components"]
        assert all(t.role is not Role.DEVELOPER for t in seen[user_index:])


class TestReplayDeterminism:
    def test_same_tape_same_state(self, loveometer_xml):
        def run():
            tape = {
                0: {"text": "looking", "calls": (ToolCall("highlight_rows", {"rows": [4, 7]}),)},
                1: {"text": "done", "calls": ()},
            }
            session, engine, device, _ = wire_bench(tape)
            session.sync_schematic(parse_netlist_xml(loveometer_xml))
            session.select_context(["LED1"])
            session.submit_query("Is it properly connected?")
            session.set_mode(Mode.TEST)
            session.submit_query("anything else?")
            return session.state_dict()

        assert run() == run()
