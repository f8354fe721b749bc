"""Composition root: one session wired to a device, an agent, and a log.

Everything the HTTP API and CLI can do goes through here, so the same
behavior is reachable in-process for tests. All mutations funnel into the
append-only session log; a workbench can be rebuilt from that log after a
crash and continue where it stopped.
"""

from __future__ import annotations

import json
import threading
import time
import uuid
from typing import Callable

from protobench.agent.clients import RemoteAgentClient, ScriptedAgentClient
from protobench.agent.session import (
    ModeChanged,
    SchematicSynced,
    Session,
    StatusEvent,
    TurnAppended,
)
from protobench.agent.tools import Mode, ToolRegistry, default_tool_schemas
from protobench.board.protocol import Led, LedPattern, decode_command
from protobench.board.device import DeviceHandle
from protobench.board.fixtures import fixture_from_yaml
from protobench.board.serial import open_stream
from protobench.board.sim import open_sim
from protobench.errors import NoSchematic
from protobench.netlist import parse_netlist_xml, rows_for_component
from protobench.service.config import Config
from protobench.service.sessionlog import SessionLog, replay
from protobench.testing.engine import ArtifactCreated, ArtifactStateChanged, TestEngine


def build_device(config: Config) -> DeviceHandle:
    if config.device.kind == "sim":
        with open(config.device.fixture_path, encoding="utf-8") as fh:
            fixture = fixture_from_yaml(fh.read())
        return open_sim(fixture, latency_ms=config.device.latency_ms)
    return open_stream(config.device.endpoint)


def build_agent_client(config: Config):
    if config.agent.kind == "scripted":
        return ScriptedAgentClient.from_file(config.agent.tape_path)
    return RemoteAgentClient(
        endpoint=config.agent.endpoint,
        model=config.agent.model,
        api_key_env=config.agent.api_key_env,
    )


def build_registry(session: Session, engine: TestEngine, device: DeviceHandle) -> None:
    """Register the standard tool set against this session's effects."""

    def highlight_rows(params: dict) -> dict:
        rows = sorted(set(params["rows"]))
        pattern = LedPattern(params.get("pattern", "blink"))
        for row in rows:
            device.execute(Led(row, pattern))
        return {"rows": rows, "pattern": pattern.value}

    def get_schematic(params: dict) -> dict:
        return {"yaml": session.current_yaml()}

    handlers = {
        "highlight_rows": highlight_rows,
        "get_schematic": get_schematic,
        "create_voltage_test": engine.create_voltage_test,
        "create_signal_test": engine.create_signal_test,
        "create_inspection_test": engine.create_inspection_test,
        "create_connection_suggestion": engine.create_connection_suggestion,
        "create_component_suggestion": engine.create_component_suggestion,
    }
    for schema in default_tool_schemas():
        session.registry.register(schema, handlers[schema.name])


def log_event(log: SessionLog, event) -> None:
    """Map a live event object onto its log record."""
    if isinstance(event, TurnAppended):
        log.append({"type": "turn_appended", "turn": event.turn.to_dict()})
    elif isinstance(event, ModeChanged):
        log.append({"type": "mode_changed", "mode": event.mode.value})
    elif isinstance(event, SchematicSynced):
        log.append(
            {"type": "schematic_synced", "revision": event.revision, "yaml": event.yaml}
        )
    elif isinstance(event, StatusEvent):
        log.append({"type": "status", "kind": event.kind, "reason": event.reason})
    elif isinstance(event, ArtifactCreated):
        log.append(
            {"type": "artifact_created", "artifact": event.artifact, "group": event.group}
        )
    elif isinstance(event, ArtifactStateChanged):
        log.append({
            "type": "artifact_state_changed",
            "artifact_id": event.artifact_id,
            "state": event.state,
            "result": event.result,
            "verdict": event.verdict,
            "interpretation": event.interpretation,
        })


def log_frame(log: SessionLog, frame: bytes) -> None:
    log.append({"type": "device_command", "frame": frame.decode("utf-8").rstrip("\n")})


class Workbench:
    def __init__(
        self,
        session: Session,
        engine: TestEngine,
        device: DeviceHandle,
        log: SessionLog,
    ):
        self.session = session
        self.engine = engine
        self.device = device
        self.log = log
        self.lock = threading.RLock()  # serializes requests for this session

    # --- construction ---------------------------------------------------

    @classmethod
    def create(
        cls,
        config: Config,
        session_id: str | None = None,
        clock: Callable[[], float] = time.time,
        log_path: str | None = None,
    ) -> "Workbench":
        session_id = session_id or uuid.uuid4().hex[:12]
        log_path = log_path or f"{config.log_dir}/{session_id}.jsonl"
        log = SessionLog(log_path, session_id, clock=clock)
        device = build_device(config)
        device.add_frame_observer(lambda frame: log_frame(log, frame))
        client = build_agent_client(config)
        session = Session(
            session_id,
            client,
            ToolRegistry(),
            clock=clock,
            listeners=[lambda event: log_event(log, event)],
        )
        engine = TestEngine(
            device,
            session,
            listeners=[lambda event: log_event(log, event)],
            id_prefix=f"{session_id}-",
        )
        build_registry(session, engine, device)
        return cls(session, engine, device, log)

    @classmethod
    def resume(
        cls,
        config: Config,
        log_path: str,
        clock: Callable[[], float] = time.time,
    ) -> "Workbench":
        """Rebuild live state from the log and keep appending to it."""
        state = replay(log_path)
        log = SessionLog.resume(log_path, clock=clock)
        device = build_device(config)
        device.add_frame_observer(lambda frame: log_frame(log, frame))
        client = build_agent_client(config)
        session = Session.restore(
            state["session"],
            client,
            ToolRegistry(),
            clock=clock,
            listeners=[lambda event: log_event(log, event)],
        )
        engine = TestEngine(device, session, id_prefix=f"{session.id}-")
        engine.restore(state)
        engine.add_listener(lambda event: log_event(log, event))
        build_registry(session, engine, device)
        return cls(session, engine, device, log)

    # --- operations ---------------------------------------------------------

    def set_mode(self, mode: str) -> dict:
        with self.lock:
            self.session.set_mode(Mode(mode))
            return {"mode": self.session.mode.value}

    def sync_schematic_xml(self, xml: bytes) -> dict:
        with self.lock:
            netlist = parse_netlist_xml(xml)
            self.session.sync_schematic(netlist)
            return {"revision": self.session.schematic.revision}

    def select_context(self, ids: list[str]) -> dict:
        with self.lock:
            self.session.select_context(ids)
            return {"selected": [e.id for e in self.session.selected_context]}

    def submit_query(self, text: str) -> dict:
        with self.lock:
            outcome = self.session.submit_query(text)
            return {
                "text": outcome.text,
                "actions": [
                    {"tool": a.tool, "result": a.payload} for a in outcome.actions
                ],
            }

    def highlight_component(self, component_id: str) -> dict:
        with self.lock:
            if self.session.schematic is None:
                raise NoSchematic("sync a schematic before highlighting")
            rows = sorted(rows_for_component(self.session.schematic, component_id))
            for row in rows:
                self.device.execute(Led(row, LedPattern.BLINK))
            return {"component_id": component_id, "rows": rows}

    def board_command(self, doc: dict) -> dict:
        """Direct board control (frontend probes, drives, LED tweaks)."""
        with self.lock:
            line = json.dumps(doc, separators=(",", ":")) + "\n"
            cmd = decode_command(line)
            resp = self.device.execute(cmd)
            out: dict = {"ok": resp.ok}
            if resp.value_mv is not None:
                out["mv"] = resp.value_mv
            if resp.floating:
                out["floating"] = True
            if resp.error is not None:
                out["error"] = resp.error
            return out

    def stop_pin(self, pin: str) -> dict:
        with self.lock:
            self.device.stop(pin)
            return {"pin": pin, "stopped": True}

    # test/suggestion passthroughs

    def highlight_test(self, test_id: str) -> dict:
        with self.lock:
            return self.engine.highlight_probes(test_id)

    def run_test(self, test_id: str) -> dict:
        with self.lock:
            return self.engine.run_test(test_id)

    def submit_result(self, test_id: str, observation: str | None = None) -> dict:
        with self.lock:
            return self.engine.submit_result(test_id, observation)

    def interpret(self, test_id: str) -> dict:
        with self.lock:
            return {"interpretation": self.engine.interpret(test_id)}

    def highlight_suggestion(self, suggestion_id: str) -> dict:
        with self.lock:
            return self.engine.highlight_suggestion(suggestion_id)

    def complete_suggestion(self, suggestion_id: str) -> dict:
        with self.lock:
            return self.engine.complete_suggestion(suggestion_id)

    # --- snapshots -------------------------------------------------------------

    def state_dict(self) -> dict:
        with self.lock:
            engine_state = self.engine.state_dict()
            return {
                "session": self.session.state_dict(),
                "artifacts": engine_state["artifacts"],
                "groups": engine_state["groups"],
                "last_seq": self.log.records[-1].seq if self.log.records else 0,
            }

    def close(self) -> None:
        self.device.close()
        self.log.close()
