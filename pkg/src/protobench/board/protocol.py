"""Bit-exact JSON wire protocol for the augmented breadboard.

Frames are LF-delimited minified JSON, UTF-8, with fixed key order:

    {"cmd":"led","row":<1..50>,"pattern":"on"|"off"|"blink"|"blink_slow"}
    {"cmd":"out_v","pin":"D0".."D3","mv":<0..5000>[,"ms":<1..60000>]}
    {"cmd":"out_pwm","pin":"D0".."D3","duty":<0..255>[,"ms":<1..60000>]}
    {"cmd":"read","pin":"A0".."A3"}

Responses:

    {"ok":true[,"mv":<0..5000>][,"floating":true]}
    {"ok":false,"error":"<code>"}

The ``floating`` flag is carried on reads of an open (unconnected) pin so
upstream layers can surface it; decoders ignore any other extra keys for
forward compatibility.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Union

from protobench.errors import (
    ContractViolation,
    DurationOutOfRange,
    DutyOutOfRange,
    FrameMalformed,
    MillivoltsOutOfRange,
    RowOutOfRange,
    UnknownPin,
)

ANALOG_IN_PINS = ("A0", "A1", "A2", "A3")
SIGNAL_OUT_PINS = ("D0", "D1", "D2", "D3")

ROW_MIN, ROW_MAX = 1, 50
MV_MIN, MV_MAX = 0, 5000
DUTY_MIN, DUTY_MAX = 0, 255
MS_MIN, MS_MAX = 1, 60000


class LedPattern(str, Enum):
    ON = "on"
    OFF = "off"
    BLINK = "blink"
    BLINK_SLOW = "blink_slow"


@dataclass(frozen=True)
class Led:
    row: int
    pattern: LedPattern


@dataclass(frozen=True)
class OutputVoltage:
    pin: str
    millivolts: int
    duration_ms: int | None = None  # absent means hold until changed


@dataclass(frozen=True)
class OutputPwm:
    pin: str
    duty: int
    duration_ms: int | None = None


@dataclass(frozen=True)
class ReadAnalog:
    pin: str


BoardCommand = Union[Led, OutputVoltage, OutputPwm, ReadAnalog]


@dataclass(frozen=True)
class BoardResponse:
    ok: bool
    value_mv: int | None = None
    error: str | None = None
    floating: bool = False


def _check_int(value, lo: int, hi: int, exc_type, what: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise exc_type(f"{what} must be an integer, got {value!r}")
    if not lo <= value <= hi:
        raise exc_type(f"{what} {value} outside {lo}..{hi}")
    return value


def validate_command(cmd: BoardCommand) -> None:
    """Raise the matching bounds error unless every field is in range."""
    if isinstance(cmd, Led):
        if not isinstance(cmd.row, int) or isinstance(cmd.row, bool) \
                or not ROW_MIN <= cmd.row <= ROW_MAX:
            raise RowOutOfRange(cmd.row)
        if not isinstance(cmd.pattern, LedPattern):
            raise FrameMalformed(f"bad LED pattern {cmd.pattern!r}")
    elif isinstance(cmd, OutputVoltage):
        if cmd.pin not in SIGNAL_OUT_PINS:
            raise UnknownPin(f"{cmd.pin!r} is not a signal-out pin")
        _check_int(cmd.millivolts, MV_MIN, MV_MAX, MillivoltsOutOfRange, "mv")
        if cmd.duration_ms is not None:
            _check_int(cmd.duration_ms, MS_MIN, MS_MAX, DurationOutOfRange, "ms")
    elif isinstance(cmd, OutputPwm):
        if cmd.pin not in SIGNAL_OUT_PINS:
            raise UnknownPin(f"{cmd.pin!r} is not a signal-out pin")
        _check_int(cmd.duty, DUTY_MIN, DUTY_MAX, DutyOutOfRange, "duty")
        if cmd.duration_ms is not None:
            _check_int(cmd.duration_ms, MS_MIN, MS_MAX, DurationOutOfRange, "ms")
    elif isinstance(cmd, ReadAnalog):
        if cmd.pin not in ANALOG_IN_PINS:
            raise UnknownPin(f"{cmd.pin!r} is not an analog-in pin")
    else:
        raise FrameMalformed(f"not a board command: {cmd!r}")


def _frame(obj: dict) -> bytes:
    return json.dumps(obj, separators=(",", ":")).encode("utf-8") + b"\n"


def encode_command(cmd: BoardCommand) -> bytes:
    """One minified JSON frame + LF. Input must already be validated."""
    validate_command(cmd)
    if isinstance(cmd, Led):
        return _frame({"cmd": "led", "row": cmd.row, "pattern": cmd.pattern.value})
    if isinstance(cmd, OutputVoltage):
        obj = {"cmd": "out_v", "pin": cmd.pin, "mv": cmd.millivolts}
        if cmd.duration_ms is not None:
            obj["ms"] = cmd.duration_ms
        return _frame(obj)
    if isinstance(cmd, OutputPwm):
        obj = {"cmd": "out_pwm", "pin": cmd.pin, "duty": cmd.duty}
        if cmd.duration_ms is not None:
            obj["ms"] = cmd.duration_ms
        return _frame(obj)
    return _frame({"cmd": "read", "pin": cmd.pin})


def _parse_frame(line: bytes | str) -> dict:
    if isinstance(line, bytes):
        try:
            line = line.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise FrameMalformed(f"frame is not UTF-8: {exc}") from exc
    line = line[:-1] if line.endswith("\n") else line
    if "\n" in line:
        raise FrameMalformed("frame contains an embedded newline")
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise FrameMalformed(f"frame is not JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise FrameMalformed("frame must be a JSON object")
    return obj


def decode_command(line: bytes | str) -> BoardCommand:
    """Parse and bounds-check one command frame (the firmware-side view)."""
    obj = _parse_frame(line)
    kind = obj.get("cmd")
    if kind == "led":
        try:
            pattern = LedPattern(obj.get("pattern"))
        except ValueError:
            raise FrameMalformed(f"bad LED pattern {obj.get('pattern')!r}") from None
        cmd: BoardCommand = Led(obj.get("row"), pattern)
    elif kind == "out_v":
        cmd = OutputVoltage(obj.get("pin"), obj.get("mv"), obj.get("ms"))
    elif kind == "out_pwm":
        cmd = OutputPwm(obj.get("pin"), obj.get("duty"), obj.get("ms"))
    elif kind == "read":
        cmd = ReadAnalog(obj.get("pin"))
    else:
        raise FrameMalformed(f"unknown cmd {kind!r}")
    validate_command(cmd)
    return cmd


def encode_response(resp: BoardResponse) -> bytes:
    if resp.ok and resp.error is not None:
        raise ContractViolation("ok response must not carry an error")
    if not resp.ok and resp.error is None:
        raise ContractViolation("error response must carry an error code")
    obj: dict = {"ok": resp.ok}
    if resp.value_mv is not None:
        obj["mv"] = resp.value_mv
    if resp.floating:
        obj["floating"] = True
    if resp.error is not None:
        obj["error"] = resp.error
    return _frame(obj)


def decode_response(line: bytes | str) -> BoardResponse:
    """Parse one response frame; unknown extra keys are ignored."""
    obj = _parse_frame(line)
    ok = obj.get("ok")
    if not isinstance(ok, bool):
        raise FrameMalformed(f"response 'ok' must be a boolean, got {ok!r}")
    value_mv = obj.get("mv")
    if value_mv is not None:
        if not isinstance(value_mv, int) or isinstance(value_mv, bool):
            raise FrameMalformed(f"response 'mv' must be an integer, got {value_mv!r}")
        if not MV_MIN <= value_mv <= MV_MAX:
            raise ContractViolation(f"response mv {value_mv} outside {MV_MIN}..{MV_MAX}")
    error = obj.get("error")
    if error is not None and not isinstance(error, str):
        raise FrameMalformed(f"response 'error' must be a string, got {error!r}")
    floating = obj.get("floating", False)
    if not isinstance(floating, bool):
        raise FrameMalformed("response 'floating' must be a boolean")
    if ok and error is not None:
        raise ContractViolation("ok=true with error present")
    if not ok and error is None:
        raise ContractViolation("ok=false without an error code")
    return BoardResponse(ok=ok, value_mv=value_mv, error=error, floating=floating)
