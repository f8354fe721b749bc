"""Conversation session: turns, mode, schematic context, tool dispatch.

A session owns the ordered turn list and the two-mode state machine the
whole system hangs off. Context changes (mode flips, schematic syncs,
component selections) are recorded as developer turns so the agent always
sees state changes inline with the dialogue. Tool calls coming back from
the agent are dispatched here, mode-gated and bounds-validated before any
side effect; rejected calls become tool turns carrying the error, never
actions.
"""

from __future__ import annotations

import threading
import time
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from typing import Callable, Iterable

from protobench.agent.tools import Mode, ToolCall, ToolRegistry
from protobench.errors import (
    AgentUnavailable,
    ModeViolation,
    NoSchematic,
    ProtoBenchError,
)
from protobench.netlist import (
    CanonicalNetlist,
    ComponentContextEntry,
    emit_yaml,
    extract_component_context,
    parse_yaml,
)
from protobench.netlist.model import with_revision

INSTRUCTIONS_VERSION = "v1"


def default_instructions() -> str:
    ref = resources.files("protobench.agent") / f"instructions_{INSTRUCTIONS_VERSION}.txt"
    return ref.read_text(encoding="utf-8")


class Role(str, Enum):
    SYSTEM = "system"
    DEVELOPER = "developer"
    USER = "user"
    ASSISTANT = "assistant"
    TOOL = "tool"


@dataclass(frozen=True)
class Turn:
    role: Role
    content: str | dict
    at: float

    def to_dict(self) -> dict:
        return {"role": self.role.value, "content": self.content, "at": self.at}

    @classmethod
    def from_dict(cls, doc: dict) -> "Turn":
        return cls(Role(doc["role"]), doc["content"], doc["at"])


@dataclass(frozen=True)
class StatusEvent:
    THINKING = "thinking"
    ADDING_TESTS = "adding_tests"
    RESPONDED = "responded"
    FAILED = "failed"

    kind: str
    reason: str | None = None


@dataclass(frozen=True)
class ToolResult:
    tool: str
    payload: dict


@dataclass(frozen=True)
class AgentOutcome:
    text: str
    actions: tuple[ToolResult, ...] = ()


# Listener events (the session log turns these into records).

@dataclass(frozen=True)
class TurnAppended:
    turn: Turn


@dataclass(frozen=True)
class ModeChanged:
    mode: Mode


@dataclass(frozen=True)
class SchematicSynced:
    revision: int
    yaml: str


class Session:
    """One conversation bound to one agent client and one tool registry."""

    def __init__(
        self,
        session_id: str,
        client,
        registry: ToolRegistry,
        instructions: str | None = None,
        clock: Callable[[], float] = time.time,
        listeners: Iterable[Callable] = (),
    ):
        self.id = session_id
        self.client = client
        self.registry = registry
        self.clock = clock
        self._listeners: list[Callable] = list(listeners)
        self._query_lock = threading.Lock()

        self.turns: list[Turn] = []
        self.mode = Mode.ASK
        self.schematic: CanonicalNetlist | None = None
        self.schematic_yaml: str | None = None
        self.selected_context: list[ComponentContextEntry] = []
        self.pending_artifacts: list[str] = []

        self._append_turn(
            Role.SYSTEM,
            instructions if instructions is not None else default_instructions(),
        )

    # --- listeners ------------------------------------------------------

    def add_listener(self, fn: Callable) -> None:
        self._listeners.append(fn)

    def _notify(self, event) -> None:
        for fn in self._listeners:
            fn(event)

    def _append_turn(self, role: Role, content: str | dict) -> Turn:
        turn = Turn(role, content, self.clock())
        self.turns.append(turn)
        self._notify(TurnAppended(turn))
        return turn

    def _status(self, kind: str, reason: str | None = None) -> None:
        self._notify(StatusEvent(kind, reason))

    # --- state changes ----------------------------------------------------

    def set_mode(self, mode: Mode) -> None:
        """Switch ask/test mode; explicit even when redundant."""
        self.mode = mode
        self._notify(ModeChanged(mode))
        self._append_turn(Role.DEVELOPER, {"kind": "mode_change", "mode": mode.value})

    def sync_schematic(self, netlist: CanonicalNetlist) -> None:
        """Replace the schematic snapshot; the agent sees the fresh YAML."""
        revision = (self.schematic.revision if self.schematic else 0) + 1
        self.schematic = with_revision(netlist, revision)
        self.schematic_yaml = emit_yaml(self.schematic)
        self._notify(SchematicSynced(revision, self.schematic_yaml))
        self._append_turn(
            Role.DEVELOPER,
            {"kind": "schematic", "revision": revision, "yaml": self.schematic_yaml},
        )

    def select_context(self, ids: list[str]) -> None:
        """Replace the selected-component context (empty list clears it)."""
        if self.schematic is None:
            raise NoSchematic("select_context requires a synced schematic")
        entries = extract_component_context(self.schematic, ids)
        self.selected_context = entries
        self._append_turn(
            Role.DEVELOPER,
            {
                "kind": "selected_components",
                "ids": list(ids),
                "components": [e.to_dict() for e in entries],
            },
        )

    # --- query cycle ------------------------------------------------------

    def submit_query(self, text: str) -> AgentOutcome:
        if not isinstance(text, str) or not text.strip():
            raise ValueError("query text must be non-empty")
        with self._query_lock:
            self._status(StatusEvent.THINKING)
            self._append_turn(Role.USER, text)
            tools = self.registry.schemas(self.mode)
            try:
                reply = self.client.complete(tuple(self.turns), tools)
            except AgentUnavailable as exc:
                self._status(StatusEvent.FAILED, reason=str(exc))
                raise
            except Exception as exc:
                self._status(StatusEvent.FAILED, reason=str(exc))
                raise AgentUnavailable(f"agent client error: {exc}") from exc

            actions: list[ToolResult] = []
            for call in reply.calls:
                try:
                    result = self.dispatch_tool_call(call)
                except ProtoBenchError as exc:
                    self._append_turn(
                        Role.TOOL,
                        {
                            "tool": call.tool,
                            "ok": False,
                            "error": exc.code,
                            "detail": str(exc),
                        },
                    )
                    continue
                schema, _ = self.registry.get(call.tool)
                if schema.artifact_kind == "test":
                    self._status(StatusEvent.ADDING_TESTS)
                self._append_turn(
                    Role.TOOL,
                    {"tool": call.tool, "ok": True, "result": result.payload},
                )
                actions.append(result)

            self._append_turn(Role.ASSISTANT, reply.text)
            self._status(StatusEvent.RESPONDED)
            return AgentOutcome(reply.text, tuple(actions))

    def dispatch_tool_call(self, call: ToolCall) -> ToolResult:
        """Validate and execute one tool call.

        Mode gating happens here, not only in schema filtering: a
        test-creating call arriving in ask mode is rejected even if a
        misbehaving client saw the schema.
        """
        schema, handler = self.registry.get(call.tool)
        if self.mode not in schema.modes:
            raise ModeViolation(
                f"tool {call.tool!r} is not available in {self.mode.value} mode"
            )
        params = schema.validate(call.args)
        return ToolResult(call.tool, handler(params))

    # --- tool effects over session state -----------------------------------

    def current_yaml(self) -> str:
        if self.schematic_yaml is None:
            raise NoSchematic("no schematic has been synced")
        return self.schematic_yaml

    # --- snapshots ----------------------------------------------------------

    def state_dict(self) -> dict:
        return {
            "session_id": self.id,
            "mode": self.mode.value,
            "turns": [t.to_dict() for t in self.turns],
            "schematic_yaml": self.schematic_yaml,
            "schematic_revision": self.schematic.revision if self.schematic else 0,
            "selected_context": [e.to_dict() for e in self.selected_context],
            "pending_artifacts": list(self.pending_artifacts),
        }

    @classmethod
    def restore(
        cls,
        state: dict,
        client,
        registry: ToolRegistry,
        clock: Callable[[], float] = time.time,
        listeners: Iterable[Callable] = (),
    ) -> "Session":
        session = cls.__new__(cls)
        session.id = state["session_id"]
        session.client = client
        session.registry = registry
        session.clock = clock
        session._listeners = list(listeners)
        session._query_lock = threading.Lock()
        session.turns = [Turn.from_dict(t) for t in state["turns"]]
        session.mode = Mode(state["mode"])
        yaml_text = state.get("schematic_yaml")
        if yaml_text is None:
            session.schematic = None
            session.schematic_yaml = None
        else:
            session.schematic = with_revision(
                parse_yaml(yaml_text), state.get("schematic_revision", 0)
            )
            session.schematic_yaml = yaml_text
        session.selected_context = [
            ComponentContextEntry(
                id=e["id"], label=e["label"], kind=e["kind"], value=e["value"],
                rows=dict(e["rows"]), nets=dict(e["nets"]),
            )
            for e in state.get("selected_context", [])
        ]
        session.pending_artifacts = list(state.get("pending_artifacts", []))
        return session
