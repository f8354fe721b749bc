"""Thin stdio transport: one JSON request per line in, one response out.

Alternative to the HTTP API for embedding the workbench as a child process
of another tool. Requests name an op plus its arguments; responses carry
``{"ok": true, ...result}`` or ``{"ok": false, "error": code}``. The ops
mirror the HTTP endpoints one to one.
"""

from __future__ import annotations

import json
from typing import IO

from protobench.errors import ProtoBenchError
from protobench.workbench import Workbench


def _dispatch(wb: Workbench, request: dict) -> dict:
    op = request.get("op")
    if op == "state":
        return wb.state_dict()
    if op == "mode":
        return wb.set_mode(request["mode"])
    if op == "schematic":
        return wb.sync_schematic_xml(request["xml"].encode("utf-8"))
    if op == "context":
        return wb.select_context(request["ids"])
    if op == "query":
        return wb.submit_query(request["text"])
    if op == "highlight":
        return wb.highlight_component(request["component_id"])
    if op == "board":
        return wb.board_command(request["command"])
    if op == "stop":
        return wb.stop_pin(request["pin"])
    if op == "test_highlight":
        return wb.highlight_test(request["test_id"])
    if op == "test_run":
        return wb.run_test(request["test_id"])
    if op == "test_submit":
        return wb.submit_result(request["test_id"], request.get("observation"))
    if op == "test_interpret":
        return wb.interpret(request["test_id"])
    if op == "suggestion_highlight":
        return wb.highlight_suggestion(request["suggestion_id"])
    if op == "suggestion_complete":
        return wb.complete_suggestion(request["suggestion_id"])
    raise ValueError(f"unknown op {op!r}")


def serve_stdio(wb: Workbench, reader: IO[str], writer: IO[str]) -> None:
    writer.write(json.dumps({"ok": True, "session_id": wb.session.id}) + "\n")
    writer.flush()
    for line in reader:
        line = line.strip()
        if not line:
            continue
        try:
            response = {"ok": True, **_dispatch(wb, json.loads(line))}
        except ProtoBenchError as exc:
            response = {"ok": False, "error": exc.code, "detail": str(exc)}
        except (ValueError, KeyError, json.JSONDecodeError) as exc:
            response = {"ok": False, "error": "InvalidRequest", "detail": str(exc)}
        writer.write(json.dumps(response, separators=(",", ":")) + "\n")
        writer.flush()
