"""Append-only session log (JSON lines) and state reconstruction.

One record per line: ``{"seq", "at", "session_id", "event"}`` with strictly
increasing seq. Replaying a log folds the records back into the exact
session + artifact state the live system held, which is both the crash
recovery story and the determinism check.

Event types mirror what the live objects emit:

    turn_appended, mode_changed, schematic_synced, status,
    artifact_created, artifact_state_changed, device_command
"""

from __future__ import annotations

import json
import os
import threading
import time
from dataclasses import dataclass
from typing import Callable, Iterable

from protobench.errors import LogCorrupt


@dataclass(frozen=True)
class SessionLogRecord:
    seq: int
    at: float
    session_id: str
    event: dict

    def to_json(self) -> str:
        return json.dumps(
            {"seq": self.seq, "at": self.at, "session_id": self.session_id, "event": self.event},
            separators=(",", ":"),
        )

    @classmethod
    def from_json(cls, line: str) -> "SessionLogRecord":
        try:
            doc = json.loads(line)
            return cls(doc["seq"], doc["at"], doc["session_id"], doc["event"])
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise LogCorrupt(f"undecodable record: {exc}") from exc


class SessionLog:
    """Writer plus in-memory tail with change notification for streaming."""

    def __init__(self, path: str, session_id: str, clock: Callable[[], float] = time.time):
        self.path = path
        self.session_id = session_id
        self.clock = clock
        self.records: list[SessionLogRecord] = []
        self._cond = threading.Condition()
        directory = os.path.dirname(path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        self._fh = open(path, "a", encoding="utf-8")

    @classmethod
    def resume(cls, path: str, clock: Callable[[], float] = time.time) -> "SessionLog":
        records = read_log(path)
        if not records:
            raise LogCorrupt(f"cannot resume from empty log {path!r}")
        log = cls(path, records[-1].session_id, clock)
        log.records = records
        return log

    @property
    def next_seq(self) -> int:
        return self.records[-1].seq + 1 if self.records else 1

    def append(self, event: dict) -> SessionLogRecord:
        with self._cond:
            record = SessionLogRecord(self.next_seq, self.clock(), self.session_id, event)
            self._fh.write(record.to_json() + "\n")
            self._fh.flush()
            os.fsync(self._fh.fileno())
            self.records.append(record)
            self._cond.notify_all()
        return record

    def wait_for(self, seq: int, timeout: float | None = None) -> bool:
        """Block until a record with sequence >= seq exists."""
        with self._cond:
            return self._cond.wait_for(
                lambda: self.records and self.records[-1].seq >= seq, timeout=timeout
            )

    def close(self) -> None:
        self._fh.close()


def read_log(path: str) -> list[SessionLogRecord]:
    records = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                records.append(SessionLogRecord.from_json(line))
    _check_contiguous(records)
    return records


def _check_contiguous(records: list[SessionLogRecord]) -> None:
    for i, record in enumerate(records):
        if record.seq != i + 1:
            raise LogCorrupt(f"sequence gap: expected {i + 1}, found {record.seq}")


def fresh_state() -> dict:
    return {
        "session": {
            "session_id": None,
            "mode": "ask",
            "turns": [],
            "schematic_yaml": None,
            "schematic_revision": 0,
            "selected_context": [],
            "pending_artifacts": [],
        },
        "artifacts": {},
        "groups": {},
        "last_seq": 0,
    }


_TERMINAL_ARTIFACT_STATES = {"interpreted", "completed"}


def replay_records(records: Iterable[SessionLogRecord]) -> dict:
    """Fold records into the state snapshot the live system would report."""
    state = fresh_state()
    session = state["session"]
    for record in records:
        session["session_id"] = record.session_id
        event = record.event
        kind = event.get("type")
        if kind == "turn_appended":
            turn = event["turn"]
            session["turns"].append(turn)
            content = turn.get("content")
            if (
                turn.get("role") == "developer"
                and isinstance(content, dict)
                and content.get("kind") == "selected_components"
            ):
                session["selected_context"] = content["components"]
        elif kind == "mode_changed":
            session["mode"] = event["mode"]
        elif kind == "schematic_synced":
            session["schematic_yaml"] = event["yaml"]
            session["schematic_revision"] = event["revision"]
        elif kind == "artifact_created":
            artifact = event["artifact"]
            state["artifacts"][artifact["id"]] = artifact
            if event.get("group"):
                state["groups"][event["group"]["id"]] = event["group"]
            session["pending_artifacts"].append(artifact["id"])
            group_id = artifact.get("group_id")
            if group_id and group_id in state["groups"]:
                ids = state["groups"][group_id]["test_ids"]
                if artifact["id"] not in ids:
                    ids.append(artifact["id"])
        elif kind == "artifact_state_changed":
            artifact = state["artifacts"].get(event["artifact_id"])
            if artifact is None:
                raise LogCorrupt(f"state change for unknown artifact {event['artifact_id']!r}")
            artifact["state"] = event["state"]
            for key in ("result", "verdict", "interpretation"):
                if event.get(key) is not None:
                    artifact[key] = event[key]
            if event["state"] in _TERMINAL_ARTIFACT_STATES:
                if event["artifact_id"] in session["pending_artifacts"]:
                    session["pending_artifacts"].remove(event["artifact_id"])
        elif kind in ("status", "device_command"):
            pass  # audit trail; no session state
        else:
            raise LogCorrupt(f"unknown event type {kind!r}")
        state["last_seq"] = record.seq
    for artifact in state["artifacts"].values():
        # a crash mid-run leaves no result; the test must be runnable again
        if artifact.get("state") == "running":
            artifact["state"] = "created"
    return state


def replay(path: str) -> dict:
    """Reconstruct state from a log file (empty file folds to fresh state)."""
    if not os.path.exists(path):
        raise LogCorrupt(f"no such log: {path!r}")
    return replay_records(read_log(path))
