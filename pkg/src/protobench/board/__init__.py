"""Breadboard wire protocol, virtual fixtures, and device backends."""

from protobench.board.protocol import (
    ANALOG_IN_PINS,
    SIGNAL_OUT_PINS,
    BoardCommand,
    BoardResponse,
    Led,
    LedPattern,
    OutputPwm,
    OutputVoltage,
    ReadAnalog,
    decode_command,
    decode_response,
    encode_command,
    encode_response,
    validate_command,
)
from protobench.board.fixtures import (
    Constant,
    Divider,
    Noisy,
    Open,
    TransferModel,
    VirtualFixture,
    fixture_from_yaml,
)
from protobench.board.device import DeviceHandle, Sample, TimeSeries
from protobench.board.sim import SimDevice, open_sim
from protobench.board.serial import SerialDevice, open_stream

__all__ = [
    "ANALOG_IN_PINS",
    "SIGNAL_OUT_PINS",
    "LedPattern",
    "Led",
    "OutputVoltage",
    "OutputPwm",
    "ReadAnalog",
    "BoardCommand",
    "BoardResponse",
    "encode_command",
    "decode_command",
    "encode_response",
    "decode_response",
    "validate_command",
    "TransferModel",
    "Constant",
    "Divider",
    "Noisy",
    "Open",
    "VirtualFixture",
    "fixture_from_yaml",
    "Sample",
    "TimeSeries",
    "DeviceHandle",
    "SimDevice",
    "open_sim",
    "SerialDevice",
    "open_stream",
]
