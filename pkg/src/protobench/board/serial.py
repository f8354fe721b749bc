"""Byte-stream transport for a real augmented breadboard.

Carries the exact frames defined in :mod:`protobench.board.protocol` over
any LF-framed byte stream: a serial port device path or a host:port socket.
One command frame out, one response frame back. Sampling paces on wall time
(the simulator is the deterministic twin of this backend).
"""

from __future__ import annotations

import socket
import time
from typing import BinaryIO

from protobench.board.device import (
    DeviceHandle,
    Sample,
    SequenceStep,
    TimeSeries,
    check_sampling,
)
from protobench.board.protocol import (
    ANALOG_IN_PINS,
    BoardCommand,
    BoardResponse,
    OutputVoltage,
    ReadAnalog,
    decode_response,
    encode_command,
    validate_command,
)
from protobench.errors import DeviceGone, DurationOutOfRange, PinBusy, UnknownPin


class SerialDevice(DeviceHandle):
    def __init__(self, reader: BinaryIO, writer: BinaryIO, sleep=time.sleep):
        super().__init__()
        self._reader = reader
        self._writer = writer
        self._sleep = sleep
        self._closed = False

    def _check_open(self) -> None:
        if self._closed:
            raise DeviceGone("transport is closed")

    def _roundtrip(self, cmd: BoardCommand) -> BoardResponse:
        frame = encode_command(cmd)
        try:
            self._writer.write(frame)
            self._writer.flush()
            self._record_frame(frame)
            line = self._reader.readline()
        except (OSError, ValueError) as exc:
            raise DeviceGone(f"transport error: {exc}") from exc
        if not line:
            raise DeviceGone("transport closed by peer")
        resp = decode_response(line)
        if resp.error == "pin_busy":
            raise PinBusy(resp.error)
        return resp

    def execute(self, cmd: BoardCommand) -> BoardResponse:
        with self._lock:
            self._check_open()
            validate_command(cmd)
            return self._roundtrip(cmd)

    def sample_series(self, pin: str, interval_ms: int, duration_ms: int) -> TimeSeries:
        with self._lock:
            self._check_open()
            if pin not in ANALOG_IN_PINS:
                raise UnknownPin(f"{pin!r} is not an analog-in pin")
            check_sampling(interval_ms, duration_ms)
            start = time.monotonic()
            samples = []
            for k in range(duration_ms // interval_ms + 1):
                target = start + (k * interval_ms) / 1000.0
                delay = target - time.monotonic()
                if delay > 0:
                    self._sleep(delay)
                resp = self._roundtrip(ReadAnalog(pin))
                # nominal timestamps: the board answers when it answers, the
                # grid is what the schedule asked for
                samples.append(Sample(t_ms=k * interval_ms, value_mv=resp.value_mv or 0))
            return TimeSeries(pin=pin, samples=tuple(samples), interval_ms=interval_ms)

    def play_sequence(self, pin: str, steps: list[SequenceStep]) -> None:
        with self._lock:
            self._check_open()
            for step in steps:
                if step.duration_ms is None:
                    raise DurationOutOfRange("sequence steps need a duration")
                validate_command(OutputVoltage(pin, step.mv, step.duration_ms))
            for step in steps:
                self._roundtrip(OutputVoltage(pin, step.mv, step.duration_ms))
                self._sleep(step.duration_ms / 1000.0)

    def stop(self, pin: str) -> None:
        with self._lock:
            self._check_open()
            self._roundtrip(OutputVoltage(pin, 0, None))

    def close(self) -> None:
        with self._lock:
            self._closed = True
            for stream in (self._writer, self._reader):
                try:
                    stream.close()
                except OSError:
                    pass


def open_stream(target: str) -> SerialDevice:
    """Open ``host:port`` or a serial device path as a board transport."""
    host, sep, port = target.rpartition(":")
    if sep and port.isdigit():
        sock = socket.create_connection((host, int(port)))
        return SerialDevice(sock.makefile("rb"), sock.makefile("wb"))
    raw = open(target, "r+b", buffering=0)
    return SerialDevice(raw, raw)
