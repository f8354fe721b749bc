"""Tool schemas with explicit hardware bounds, and their validation.

Every parameter the agent can pass is bounds-checked here before any side
effect runs: breadboard rows stay in 1..50, voltages in 0..5000 mV, timing
in 1..60000 ms. Schema filtering by mode is advisory (it shapes what the
agent sees); the dispatcher re-checks mode on every call.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable

from protobench.board.protocol import (
    ANALOG_IN_PINS,
    DUTY_MAX,
    MS_MAX,
    MS_MIN,
    MV_MAX,
    MV_MIN,
    ROW_MAX,
    ROW_MIN,
    SIGNAL_OUT_PINS,
    LedPattern,
)
from protobench.errors import ParamOutOfBounds, UnknownTool


class Mode(str, Enum):
    ASK = "ask"
    TEST = "test"


@dataclass(frozen=True)
class ToolCall:
    tool: str
    args: dict


@dataclass(frozen=True)
class Param:
    """One tool parameter: a kind from a small closed set, plus bounds."""

    kind: str                  # int | string | row | row_list | pin_in | pin_out | mv_range | steps
    required: bool = True
    min: int | None = None
    max: int | None = None
    choices: tuple[str, ...] | None = None
    min_len: int = 0
    default: object = None
    description: str = ""


def _bad(name: str, why: str):
    raise ParamOutOfBounds(f"parameter {name!r}: {why}")


def _check_int(name: str, value, lo: int, hi: int) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        _bad(name, f"expected an integer, got {value!r}")
    if not lo <= value <= hi:
        _bad(name, f"{value} outside {lo}..{hi}")
    return value


def validate_param(name: str, spec: Param, value):
    if spec.kind == "int":
        lo = spec.min if spec.min is not None else -(2**31)
        hi = spec.max if spec.max is not None else 2**31
        return _check_int(name, value, lo, hi)
    if spec.kind == "string":
        if not isinstance(value, str):
            _bad(name, f"expected a string, got {value!r}")
        if len(value) < spec.min_len:
            _bad(name, "must be non-empty")
        if spec.choices and value not in spec.choices:
            _bad(name, f"{value!r} not one of {list(spec.choices)}")
        return value
    if spec.kind == "row":
        return _check_int(name, value, ROW_MIN, ROW_MAX)
    if spec.kind == "row_list":
        if not isinstance(value, list):
            _bad(name, f"expected a list of rows, got {value!r}")
        if len(value) < spec.min_len:
            _bad(name, f"needs at least {spec.min_len} row(s)")
        return [_check_int(name, row, ROW_MIN, ROW_MAX) for row in value]
    if spec.kind == "pin_in":
        if value not in ANALOG_IN_PINS:
            _bad(name, f"{value!r} is not an analog-in pin ({'/'.join(ANALOG_IN_PINS)})")
        return value
    if spec.kind == "pin_out":
        if value not in SIGNAL_OUT_PINS:
            _bad(name, f"{value!r} is not a signal-out pin ({'/'.join(SIGNAL_OUT_PINS)})")
        return value
    if spec.kind == "mv_range":
        if (
            not isinstance(value, (list, tuple))
            or len(value) != 2
        ):
            _bad(name, f"expected [low_mv, high_mv], got {value!r}")
        lo = _check_int(name, value[0], MV_MIN, MV_MAX)
        hi = _check_int(name, value[1], MV_MIN, MV_MAX)
        if lo > hi:
            _bad(name, f"low bound {lo} above high bound {hi}")
        return [lo, hi]
    if spec.kind == "steps":
        if not isinstance(value, list) or not value:
            _bad(name, "expected a non-empty list of {mv, duration_ms} steps")
        steps = []
        for i, step in enumerate(value):
            if not isinstance(step, dict):
                _bad(name, f"step {i} must be a mapping, got {step!r}")
            unknown = set(step) - {"mv", "duration_ms"}
            if unknown:
                _bad(name, f"step {i} has unknown keys {sorted(unknown)}")
            steps.append({
                "mv": _check_int(f"{name}[{i}].mv", step.get("mv"), MV_MIN, MV_MAX),
                "duration_ms": _check_int(
                    f"{name}[{i}].duration_ms", step.get("duration_ms"), MS_MIN, MS_MAX
                ),
            })
        return steps
    raise AssertionError(f"unhandled param kind {spec.kind!r}")


_JSON_TYPES = {
    "int": {"type": "integer"},
    "string": {"type": "string"},
    "row": {"type": "integer", "minimum": ROW_MIN, "maximum": ROW_MAX},
    "row_list": {
        "type": "array",
        "items": {"type": "integer", "minimum": ROW_MIN, "maximum": ROW_MAX},
    },
    "pin_in": {"type": "string", "enum": list(ANALOG_IN_PINS)},
    "pin_out": {"type": "string", "enum": list(SIGNAL_OUT_PINS)},
    "mv_range": {
        "type": "array",
        "minItems": 2,
        "maxItems": 2,
        "items": {"type": "integer", "minimum": MV_MIN, "maximum": MV_MAX},
    },
    "steps": {
        "type": "array",
        "minItems": 1,
        "items": {
            "type": "object",
            "properties": {
                "mv": {"type": "integer", "minimum": MV_MIN, "maximum": MV_MAX},
                "duration_ms": {"type": "integer", "minimum": MS_MIN, "maximum": MS_MAX},
            },
            "required": ["mv", "duration_ms"],
        },
    },
}


@dataclass(frozen=True)
class ToolSchema:
    name: str
    description: str
    params: dict[str, Param] = field(default_factory=dict)
    modes: frozenset = frozenset({Mode.ASK, Mode.TEST})
    artifact_kind: str | None = None  # "test" | "suggestion" | None

    def validate(self, args: dict) -> dict:
        """Normalize *args* or raise ParamOutOfBounds; no side effects."""
        if not isinstance(args, dict):
            raise ParamOutOfBounds(f"tool {self.name}: arguments must be an object")
        unknown = set(args) - set(self.params)
        if unknown:
            raise ParamOutOfBounds(f"tool {self.name}: unknown parameters {sorted(unknown)}")
        out = {}
        for name, spec in self.params.items():
            if name not in args or args[name] is None:
                if spec.required:
                    raise ParamOutOfBounds(f"tool {self.name}: missing parameter {name!r}")
                if spec.default is not None:
                    out[name] = spec.default
                continue
            out[name] = validate_param(name, spec, args[name])
        return out

    def to_json_schema(self) -> dict:
        properties = {}
        for name, spec in self.params.items():
            fragment = dict(_JSON_TYPES[spec.kind])
            if spec.kind == "int":
                if spec.min is not None:
                    fragment["minimum"] = spec.min
                if spec.max is not None:
                    fragment["maximum"] = spec.max
            if spec.choices:
                fragment["enum"] = list(spec.choices)
            if spec.description:
                fragment["description"] = spec.description
            properties[name] = fragment
        return {
            "name": self.name,
            "description": self.description,
            "parameters": {
                "type": "object",
                "properties": properties,
                "required": [n for n, s in self.params.items() if s.required],
            },
        }


def default_tool_schemas() -> list[ToolSchema]:
    both = frozenset({Mode.ASK, Mode.TEST})
    test_only = frozenset({Mode.TEST})
    ask_only = frozenset({Mode.ASK})
    patterns = tuple(p.value for p in LedPattern)
    return [
        ToolSchema(
            "highlight_rows",
            "Light the indicator LEDs on the given breadboard rows.",
            {
                "rows": Param("row_list", min_len=1, description="breadboard rows, 1..50"),
                "pattern": Param("string", required=False, choices=patterns, default="blink"),
            },
            modes=both,
        ),
        ToolSchema(
            "get_schematic",
            "Return the current schematic as canonical YAML.",
            {},
            modes=both,
        ),
        ToolSchema(
            "create_voltage_test",
            "Create a voltage measurement test probing one circuit location.",
            {
                "title": Param("string", required=False),
                "group": Param("string", required=False),
                "probe_pin": Param("pin_in", description="board pin the probe wire connects to"),
                "probe_rows": Param("row_list", min_len=1, description="rows to probe"),
                "expected_mv": Param("mv_range", required=False, description="[low, high] expected reading"),
            },
            modes=test_only,
            artifact_kind="test",
        ),
        ToolSchema(
            "create_signal_test",
            "Create a high/low signal pattern test driving a pin over time.",
            {
                "title": Param("string", required=False),
                "group": Param("string", required=False),
                "drive_pin": Param("pin_out"),
                "steps": Param("steps", description="timed voltage steps, ms granularity"),
                "observe": Param("string", min_len=1, description="analog pin or component id to watch"),
            },
            modes=test_only,
            artifact_kind="test",
        ),
        ToolSchema(
            "create_inspection_test",
            "Create a visual inspection test the user answers by observing.",
            {
                "title": Param("string", required=False),
                "group": Param("string", required=False),
                "instruction": Param("string", min_len=1),
                "prompt": Param("string", min_len=1),
            },
            modes=test_only,
            artifact_kind="test",
        ),
        ToolSchema(
            "create_connection_suggestion",
            "Suggest rewiring between two breadboard rows.",
            {
                "from_row": Param("row"),
                "to_row": Param("row"),
                "description": Param("string", min_len=1),
            },
            modes=ask_only,
            artifact_kind="suggestion",
        ),
        ToolSchema(
            "create_component_suggestion",
            "Suggest adding a component at the given rows.",
            {
                "component_kind": Param("string", min_len=1),
                "rows": Param("row_list", min_len=1),
                "description": Param("string", min_len=1),
            },
            modes=ask_only,
            artifact_kind="suggestion",
        ),
    ]


class ToolRegistry:
    """Schema + handler pairs; handlers run only after validation."""

    def __init__(self):
        self._tools: dict[str, tuple[ToolSchema, Callable[[dict], dict]]] = {}

    def register(self, schema: ToolSchema, handler: Callable[[dict], dict]) -> None:
        self._tools[schema.name] = (schema, handler)

    def get(self, name: str) -> tuple[ToolSchema, Callable[[dict], dict]]:
        try:
            return self._tools[name]
        except KeyError:
            raise UnknownTool(f"no tool named {name!r}") from None

    def schemas(self, mode: Mode | None = None) -> list[ToolSchema]:
        schemas = [schema for schema, _ in self._tools.values()]
        if mode is not None:
            schemas = [s for s in schemas if mode in s.modes]
        return schemas

    def __contains__(self, name: str) -> bool:
        return name in self._tools
