"""Simulated augmented breadboard.

The simulator runs on a virtual clock that advances only through sampling
(and an optional per-command latency injector), never wall time, so test
runs are fast and bit-deterministic. Timed outputs are kept as absolute-time
segments; a pin with a segment still ahead of the clock is busy. When a
timed output or sequence expires the pin returns to 0 mV.
"""

from __future__ import annotations

from fractions import Fraction

from protobench.board.device import (
    DeviceHandle,
    Sample,
    SequenceStep,
    TimeSeries,
    check_sampling,
)
from protobench.board.fixtures import VirtualFixture, evaluate_model, _round_half_up
from protobench.board.protocol import (
    ANALOG_IN_PINS,
    MV_MAX,
    SIGNAL_OUT_PINS,
    BoardCommand,
    BoardResponse,
    Led,
    LedPattern,
    OutputPwm,
    OutputVoltage,
    ReadAnalog,
    encode_command,
    validate_command,
)
from protobench.errors import DeviceGone, DurationOutOfRange, PinBusy, UnknownPin


class _Segment:
    __slots__ = ("start", "end", "mv")

    def __init__(self, start: int, end: int, mv: int):
        self.start = start
        self.end = end  # exclusive
        self.mv = mv


class SimDevice(DeviceHandle):
    def __init__(self, fixture: VirtualFixture, latency_ms: int = 0):
        super().__init__()
        self.pin_models = fixture.completed()
        self.latency_ms = latency_ms
        self.clock_ms = 0
        self.led_rows: dict[int, LedPattern] = {}
        self._base: dict[str, int] = {pin: 0 for pin in SIGNAL_OUT_PINS}
        self._segments: dict[str, list[_Segment]] = {pin: [] for pin in SIGNAL_OUT_PINS}
        self._closed = False

    # --- clock and drive state ----------------------------------------

    def advance(self, ms: int) -> None:
        """Move the virtual clock forward (lets timed outputs expire)."""
        with self._lock:
            self._check_open()
            if ms < 0:
                raise ValueError("cannot move the clock backwards")
            self.clock_ms += ms

    def drive_level(self, pin: str, t_ms: int | None = None) -> int:
        """Current (or historic) level of a signal-out pin in mV."""
        if pin not in SIGNAL_OUT_PINS:
            raise UnknownPin(f"{pin!r} is not a signal-out pin")
        t = self.clock_ms if t_ms is None else t_ms
        for seg in self._segments[pin]:
            if seg.start <= t < seg.end:
                return seg.mv
        return self._base[pin]

    def _busy(self, pin: str) -> bool:
        return any(seg.end > self.clock_ms for seg in self._segments[pin])

    def _prune(self, pin: str) -> None:
        self._segments[pin] = [s for s in self._segments[pin] if s.end > self.clock_ms]

    def _check_open(self) -> None:
        if self._closed:
            raise DeviceGone("simulated device is closed")

    def _read(self, pin: str) -> tuple[int, bool]:
        value, floating = evaluate_model(
            self.pin_models[pin], lambda p: self.drive_level(p), self.clock_ms
        )
        return value, floating

    def _drive(self, pin: str, level: int, duration_ms: int | None) -> None:
        self._prune(pin)
        if self._busy(pin):
            raise PinBusy(f"timed output still running on {pin}")
        if duration_ms is None:
            self._base[pin] = level
        else:
            self._segments[pin].append(
                _Segment(self.clock_ms, self.clock_ms + duration_ms, level)
            )
            self._base[pin] = 0  # timed outputs fall back to 0 mV on expiry

    # --- DeviceHandle -------------------------------------------------

    def execute(self, cmd: BoardCommand) -> BoardResponse:
        with self._lock:
            self._check_open()
            validate_command(cmd)
            self._record_frame(encode_command(cmd))
            self.clock_ms += self.latency_ms
            if isinstance(cmd, Led):
                self.led_rows[cmd.row] = cmd.pattern
                return BoardResponse(ok=True)
            if isinstance(cmd, OutputVoltage):
                self._drive(cmd.pin, cmd.millivolts, cmd.duration_ms)
                return BoardResponse(ok=True)
            if isinstance(cmd, OutputPwm):
                # an ADC sampling a fast PWM sees the duty-cycle mean
                level = _round_half_up(Fraction(cmd.duty * MV_MAX, 255))
                self._drive(cmd.pin, level, cmd.duration_ms)
                return BoardResponse(ok=True)
            assert isinstance(cmd, ReadAnalog)
            value, floating = self._read(cmd.pin)
            return BoardResponse(ok=True, value_mv=value, floating=floating)

    def sample_series(self, pin: str, interval_ms: int, duration_ms: int) -> TimeSeries:
        with self._lock:
            self._check_open()
            if pin not in ANALOG_IN_PINS:
                raise UnknownPin(f"{pin!r} is not an analog-in pin")
            check_sampling(interval_ms, duration_ms)
            start = self.clock_ms
            samples = []
            for k in range(duration_ms // interval_ms + 1):
                self.clock_ms = start + k * interval_ms
                self._record_frame(encode_command(ReadAnalog(pin)))
                value, _ = self._read(pin)
                samples.append(Sample(t_ms=k * interval_ms, value_mv=value))
            return TimeSeries(pin=pin, samples=tuple(samples), interval_ms=interval_ms)

    def play_sequence(self, pin: str, steps: list[SequenceStep]) -> None:
        with self._lock:
            self._check_open()
            for step in steps:
                if step.duration_ms is None:
                    raise DurationOutOfRange("sequence steps need a duration")
                validate_command(OutputVoltage(pin, step.mv, step.duration_ms))
            self._prune(pin)
            if self._busy(pin):
                raise PinBusy(f"timed output still running on {pin}")
            if not steps:
                return
            t = self.clock_ms
            for step in steps:
                self._record_frame(
                    encode_command(OutputVoltage(pin, step.mv, step.duration_ms))
                )
                self._segments[pin].append(_Segment(t, t + step.duration_ms, step.mv))
                t += step.duration_ms
            self._base[pin] = 0

    def stop(self, pin: str) -> None:
        with self._lock:
            self._check_open()
            if pin not in SIGNAL_OUT_PINS:
                raise UnknownPin(f"{pin!r} is not a signal-out pin")
            self._segments[pin] = []
            self._base[pin] = 0

    def close(self) -> None:
        with self._lock:
            self._closed = True


def open_sim(fixture: VirtualFixture, latency_ms: int = 0) -> SimDevice:
    """Open a simulated board: clock at 0, outputs at 0 mV, LEDs off."""
    return SimDevice(fixture, latency_ms=latency_ms)
