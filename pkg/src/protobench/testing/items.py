"""Test and suggestion artifact types, lifecycle machine, local verdicts.

Three in-situ test kinds (voltage measurement, signal pattern, visual
inspection) and two suggestion kinds (connection fix, component fix). Tests
walk a monotone lifecycle; the local pass/fail verdict is a pure function
computed before any agent interpretation so the narrative has a fixed
anchor.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Union

from protobench.board.device import Sample, TimeSeries


class Lifecycle(str, Enum):
    CREATED = "created"
    PROBES_HIGHLIGHTED = "probes_highlighted"
    RUNNING = "running"
    RESULT_CAPTURED = "result_captured"
    SUBMITTED = "submitted"
    INTERPRETED = "interpreted"

    @property
    def rank(self) -> int:
        return _LIFECYCLE_ORDER[self]


_LIFECYCLE_ORDER = {state: i for i, state in enumerate(Lifecycle)}


class SuggestionState(str, Enum):
    OPEN = "open"
    HIGHLIGHT_SHOWN = "highlight_shown"
    COMPLETED = "completed"


class Verdict(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    INCONCLUSIVE = "inconclusive"


# --- test kinds -------------------------------------------------------------

@dataclass(frozen=True)
class ProbeTarget:
    """What a signal test watches: an analog pin or a placed component."""

    kind: str   # "pin" | "component"
    value: str


@dataclass(frozen=True)
class VoltageMeasurement:
    probe_pin: str
    probe_rows: tuple[int, ...]
    expected_mv: tuple[int, int] | None = None


@dataclass(frozen=True)
class SignalPattern:
    drive_pin: str
    steps: tuple[tuple[int, int], ...]   # (mv, duration_ms)
    observe: ProbeTarget


@dataclass(frozen=True)
class VisualInspection:
    instruction: str
    prompt: str


TestKind = Union[VoltageMeasurement, SignalPattern, VisualInspection]


# --- results ----------------------------------------------------------------

@dataclass(frozen=True)
class Reading:
    value_mv: int
    floating: bool = False


@dataclass(frozen=True)
class Series:
    series: TimeSeries


@dataclass(frozen=True)
class Observation:
    text: str


TestResult = Union[Reading, Series, Observation]


def result_to_dict(result: TestResult) -> dict:
    if isinstance(result, Reading):
        return {"type": "reading", "value_mv": result.value_mv, "floating": result.floating}
    if isinstance(result, Series):
        ts = result.series
        return {
            "type": "series",
            "pin": ts.pin,
            "interval_ms": ts.interval_ms,
            "samples": [[s.t_ms, s.value_mv] for s in ts.samples],
        }
    return {"type": "observation", "text": result.text}


def result_from_dict(doc: dict) -> TestResult:
    if doc["type"] == "reading":
        return Reading(doc["value_mv"], doc.get("floating", False))
    if doc["type"] == "series":
        return Series(TimeSeries(
            pin=doc["pin"],
            samples=tuple(Sample(t, mv) for t, mv in doc["samples"]),
            interval_ms=doc["interval_ms"],
        ))
    return Observation(doc["text"])


def result_matches_kind(result: TestResult, kind: TestKind) -> bool:
    if isinstance(kind, VoltageMeasurement):
        return isinstance(result, Reading)
    if isinstance(kind, SignalPattern):
        return isinstance(result, Series)
    return isinstance(result, Observation)


# --- artifacts ----------------------------------------------------------------

@dataclass
class TestItem:
    id: str
    title: str
    kind: TestKind
    group_id: str
    state: Lifecycle = Lifecycle.CREATED
    result: TestResult | None = None
    verdict: Verdict | None = None
    interpretation: str | None = None

    def to_dict(self) -> dict:
        if isinstance(self.kind, VoltageMeasurement):
            test_kind = "voltage"
            spec = {
                "probe_pin": self.kind.probe_pin,
                "probe_rows": list(self.kind.probe_rows),
                "expected_mv": list(self.kind.expected_mv) if self.kind.expected_mv else None,
            }
        elif isinstance(self.kind, SignalPattern):
            test_kind = "signal"
            spec = {
                "drive_pin": self.kind.drive_pin,
                "steps": [{"mv": mv, "duration_ms": ms} for mv, ms in self.kind.steps],
                "observe": {"kind": self.kind.observe.kind, "value": self.kind.observe.value},
            }
        else:
            test_kind = "inspection"
            spec = {"instruction": self.kind.instruction, "prompt": self.kind.prompt}
        return {
            "id": self.id,
            "type": "test",
            "test_kind": test_kind,
            "title": self.title,
            "group_id": self.group_id,
            "state": self.state.value,
            "spec": spec,
            "result": result_to_dict(self.result) if self.result else None,
            "verdict": self.verdict.value if self.verdict else None,
            "interpretation": self.interpretation,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "TestItem":
        spec = doc["spec"]
        if doc["test_kind"] == "voltage":
            kind: TestKind = VoltageMeasurement(
                probe_pin=spec["probe_pin"],
                probe_rows=tuple(spec["probe_rows"]),
                expected_mv=tuple(spec["expected_mv"]) if spec.get("expected_mv") else None,
            )
        elif doc["test_kind"] == "signal":
            kind = SignalPattern(
                drive_pin=spec["drive_pin"],
                steps=tuple((s["mv"], s["duration_ms"]) for s in spec["steps"]),
                observe=ProbeTarget(spec["observe"]["kind"], spec["observe"]["value"]),
            )
        else:
            kind = VisualInspection(spec["instruction"], spec["prompt"])
        return cls(
            id=doc["id"],
            title=doc["title"],
            kind=kind,
            group_id=doc["group_id"],
            state=Lifecycle(doc["state"]),
            result=result_from_dict(doc["result"]) if doc.get("result") else None,
            verdict=Verdict(doc["verdict"]) if doc.get("verdict") else None,
            interpretation=doc.get("interpretation"),
        )


@dataclass
class TestGroup:
    id: str
    title: str
    test_ids: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"id": self.id, "title": self.title, "test_ids": list(self.test_ids)}

    @classmethod
    def from_dict(cls, doc: dict) -> "TestGroup":
        return cls(doc["id"], doc["title"], list(doc["test_ids"]))


@dataclass(frozen=True)
class ConnectionFix:
    from_row: int
    to_row: int


@dataclass(frozen=True)
class ComponentFix:
    component_kind: str
    rows: tuple[int, ...]


@dataclass
class Suggestion:
    id: str
    kind: ConnectionFix | ComponentFix
    description: str
    state: SuggestionState = SuggestionState.OPEN

    def rows(self) -> tuple[int, ...]:
        if isinstance(self.kind, ConnectionFix):
            return (self.kind.from_row, self.kind.to_row)
        return self.kind.rows

    def to_dict(self) -> dict:
        if isinstance(self.kind, ConnectionFix):
            suggestion_kind = "connection"
            spec = {"from_row": self.kind.from_row, "to_row": self.kind.to_row}
        else:
            suggestion_kind = "component"
            spec = {"component_kind": self.kind.component_kind, "rows": list(self.kind.rows)}
        return {
            "id": self.id,
            "type": "suggestion",
            "suggestion_kind": suggestion_kind,
            "state": self.state.value,
            "description": self.description,
            "spec": spec,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "Suggestion":
        spec = doc["spec"]
        if doc["suggestion_kind"] == "connection":
            kind: ConnectionFix | ComponentFix = ConnectionFix(spec["from_row"], spec["to_row"])
        else:
            kind = ComponentFix(spec["component_kind"], tuple(spec["rows"]))
        return cls(
            id=doc["id"],
            kind=kind,
            description=doc["description"],
            state=SuggestionState(doc["state"]),
        )


def artifact_from_dict(doc: dict) -> TestItem | Suggestion:
    return TestItem.from_dict(doc) if doc["type"] == "test" else Suggestion.from_dict(doc)


# --- verdicts -----------------------------------------------------------------

def local_verdict(result: TestResult, expected_mv: tuple[int, int] | None) -> Verdict:
    """Deterministic pass/fail anchor; inconclusive when nothing is thresholded."""
    if isinstance(result, Reading) and expected_mv is not None:
        lo, hi = expected_mv
        return Verdict.PASS if lo <= result.value_mv <= hi else Verdict.FAIL
    return Verdict.INCONCLUSIVE


def fallback_interpretation(
    result: TestResult, verdict: Verdict, expected_mv: tuple[int, int] | None
) -> str:
    """Non-agent interpretation: the local verdict, verbatim."""
    if isinstance(result, Reading):
        if expected_mv is not None:
            lo, hi = expected_mv
            relation = "within" if verdict is Verdict.PASS else "outside"
            return f"measured {result.value_mv} mV {relation} [{lo},{hi}]: {verdict.value}"
        return f"measured {result.value_mv} mV: {verdict.value}"
    if isinstance(result, Series):
        ts = result.series
        return f"captured {len(ts.samples)} samples on {ts.pin}: {verdict.value}"
    return f"observed: {result.text}: {verdict.value}"
