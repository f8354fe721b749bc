"""Agent clients: a deterministic scripted tape and a remote chat service.

The scripted client plays a pre-authored tape so the whole system can run
and be tested offline; the remote client speaks a chat-completions style
HTTP API with function calling. Both return the same reply shape.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from typing import Protocol, Sequence

import httpx
import yaml

from protobench.agent.tools import ToolCall, ToolRegistry, ToolSchema
from protobench.agent.session import Role, Turn
from protobench.errors import AgentUnavailable, UnknownTool


@dataclass(frozen=True)
class AgentReply:
    text: str
    calls: tuple[ToolCall, ...] = ()


class AgentClient(Protocol):
    def complete(self, turns: Sequence[Turn], tools: Sequence[ToolSchema]) -> AgentReply:
        """Produce the next assistant reply; raise AgentUnavailable on failure."""


def load_tape(path_or_text: str) -> dict[int, dict]:
    """Load a tape: a mapping of query index -> {text, calls}."""
    text = path_or_text
    if "\n" not in path_or_text and os.path.exists(path_or_text):
        with open(path_or_text, encoding="utf-8") as fh:
            text = fh.read()
    doc = yaml.safe_load(text) or {}
    if not isinstance(doc, dict):
        raise ValueError("tape must be a mapping of query index -> entry")
    tape = {}
    for key, entry in doc.items():
        index = int(key)
        entry = entry or {}
        if not isinstance(entry, dict) or set(entry) - {"text", "calls"}:
            raise ValueError(f"tape entry {index}: expected {{text, calls}}")
        calls = tuple(
            ToolCall(tool=c["tool"], args=c.get("args") or {})
            for c in (entry.get("calls") or [])
        )
        tape[index] = {"text": entry.get("text") or "", "calls": calls}
    return tape


def check_tape(tape: dict[int, dict], registry: ToolRegistry) -> None:
    """Validate every tape call against the registered tool schemas.

    Mode gating is runtime state and is deliberately not checked here.
    """
    for index in sorted(tape):
        for call in tape[index]["calls"]:
            if call.tool not in registry:
                raise UnknownTool(f"tape entry {index}: no tool named {call.tool!r}")
            schema, _ = registry.get(call.tool)
            schema.validate(call.args)


class ScriptedAgentClient:
    """Replays a tape deterministically.

    The cursor is the number of assistant turns already in the conversation,
    so a resumed session continues at the right entry without client state.
    """

    def __init__(self, tape: dict[int, dict]):
        self.tape = tape
        self.transcript: list[dict] = []  # captured inputs, for tests and debugging

    @classmethod
    def from_file(cls, path: str) -> "ScriptedAgentClient":
        return cls(load_tape(path))

    def complete(self, turns: Sequence[Turn], tools: Sequence[ToolSchema]) -> AgentReply:
        index = sum(1 for t in turns if t.role is Role.ASSISTANT)
        self.transcript.append(
            {"turns": list(turns), "tools": [s.name for s in tools], "index": index}
        )
        entry = self.tape.get(index)
        if entry is None:
            raise AgentUnavailable(f"tape has no entry for query index {index}")
        return AgentReply(text=entry["text"], calls=entry["calls"])


def render_content(turn: Turn) -> str:
    """Flatten structured turn content into text for a chat wire format."""
    if isinstance(turn.content, str):
        return turn.content
    content = turn.content
    kind = content.get("kind")
    if kind == "mode_change":
        return f"Mode is now {content['mode']}."
    if kind == "schematic":
        return f"Schematic context (revision {content['revision']}):\n{content['yaml']}"
    if kind == "selected_components":
        return "Selected components:\n" + json.dumps(content["components"], indent=2)
    return json.dumps(content)


@dataclass
class RemoteAgentClient:
    """Chat-with-tools HTTP client (OpenAI-style chat completions shape).

    The credential comes from the environment (never from config files);
    endpoint and model name come from config.
    """

    endpoint: str
    model: str
    api_key_env: str = "PROTOBENCH_AGENT_KEY"
    timeout_s: float = 60.0
    transport: httpx.BaseTransport | None = field(default=None, repr=False)

    def _wire_role(self, role: Role) -> str:
        # tool-result turns ride along as developer notes: the remote API ties
        # "tool" messages to its own call ids, which we do not replay
        return {Role.TOOL: "developer"}.get(role, role.value)

    def complete(self, turns: Sequence[Turn], tools: Sequence[ToolSchema]) -> AgentReply:
        messages = [
            {"role": self._wire_role(t.role), "content": render_content(t)}
            for t in turns
        ]
        body = {
            "model": self.model,
            "messages": messages,
            "tools": [
                {"type": "function", "function": schema.to_json_schema()}
                for schema in tools
            ],
        }
        headers = {}
        key = os.environ.get(self.api_key_env)
        if key:
            headers["Authorization"] = f"Bearer {key}"
        try:
            with httpx.Client(transport=self.transport, timeout=self.timeout_s) as client:
                response = client.post(self.endpoint, json=body, headers=headers)
                response.raise_for_status()
                payload = response.json()
        except (httpx.HTTPError, ValueError) as exc:
            raise AgentUnavailable(f"remote agent failed: {exc}") from exc
        try:
            message = payload["choices"][0]["message"]
            calls = tuple(
                ToolCall(
                    tool=c["function"]["name"],
                    args=json.loads(c["function"].get("arguments") or "{}"),
                )
                for c in (message.get("tool_calls") or [])
            )
            return AgentReply(text=message.get("content") or "", calls=calls)
        except (KeyError, IndexError, TypeError, json.JSONDecodeError) as exc:
            raise AgentUnavailable(f"malformed agent response: {exc}") from exc
