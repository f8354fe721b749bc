"""Conversation state, mode gating, tool schemas, and tool-call dispatch."""

from protobench.agent.session import (
    Mode,
    Role,
    Session,
    StatusEvent,
    Turn,
    AgentOutcome,
)
from protobench.agent.tools import Param, ToolRegistry, ToolSchema, default_tool_schemas
from protobench.agent.clients import (
    AgentClient,
    AgentReply,
    RemoteAgentClient,
    ScriptedAgentClient,
    ToolCall,
    check_tape,
    load_tape,
)

__all__ = [
    "Mode",
    "Role",
    "Turn",
    "StatusEvent",
    "AgentOutcome",
    "Session",
    "Param",
    "ToolSchema",
    "ToolRegistry",
    "default_tool_schemas",
    "AgentClient",
    "AgentReply",
    "ToolCall",
    "ScriptedAgentClient",
    "RemoteAgentClient",
    "load_tape",
    "check_tape",
]
