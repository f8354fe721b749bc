"""Device handle interface shared by the simulator and the serial transport."""

from __future__ import annotations

import threading
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Callable

from protobench.board.protocol import BoardCommand, BoardResponse
from protobench.errors import DurationOutOfRange


@dataclass(frozen=True)
class Sample:
    t_ms: int       # since series start
    value_mv: int


@dataclass(frozen=True)
class TimeSeries:
    pin: str
    samples: tuple[Sample, ...]
    interval_ms: int

    def values(self) -> list[int]:
        return [s.value_mv for s in self.samples]

    def to_csv(self) -> str:
        lines = ["t_ms,value_mv"]
        lines += [f"{s.t_ms},{s.value_mv}" for s in self.samples]
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class SequenceStep:
    mv: int
    duration_ms: int


def check_sampling(interval_ms: int, duration_ms: int) -> None:
    if not isinstance(interval_ms, int) or interval_ms < 1:
        raise DurationOutOfRange(f"interval_ms must be >= 1, got {interval_ms!r}")
    if not isinstance(duration_ms, int) or duration_ms < interval_ms:
        raise DurationOutOfRange(
            f"duration_ms must be >= interval_ms, got {duration_ms!r}"
        )


class DeviceHandle(ABC):
    """Uniform access to one augmented breadboard (simulated or real).

    All commands on a handle execute strictly in order: public methods
    serialize through one lock, so the handle may be shared across threads.
    Every command frame written to the device is recorded in ``frames`` and
    offered to registered observers (the session log hooks in there).
    """

    def __init__(self) -> None:
        self._lock = threading.RLock()
        self.frames: list[bytes] = []
        self._frame_observers: list[Callable[[bytes], None]] = []

    def add_frame_observer(self, fn: Callable[[bytes], None]) -> None:
        self._frame_observers.append(fn)

    def _record_frame(self, frame: bytes) -> None:
        self.frames.append(frame)
        for fn in self._frame_observers:
            fn(frame)

    @abstractmethod
    def execute(self, cmd: BoardCommand) -> BoardResponse:
        """Run one validated command and return the board's response."""

    @abstractmethod
    def sample_series(self, pin: str, interval_ms: int, duration_ms: int) -> TimeSeries:
        """Read *pin* every interval for the duration (inclusive endpoints)."""

    @abstractmethod
    def play_sequence(self, pin: str, steps: list[SequenceStep]) -> None:
        """Drive *pin* through timed voltage steps, then back to 0 mV."""

    @abstractmethod
    def stop(self, pin: str) -> None:
        """Cancel any running output on *pin* and drive it to 0 mV."""

    @abstractmethod
    def close(self) -> None:
        """Release the device; later operations raise DeviceGone."""
