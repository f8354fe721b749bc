"""Shared error hierarchy.

Every domain error carries a stable machine-readable ``code`` (its class
name) so the HTTP layer and the CLI can surface errors verbatim without
string matching.
"""


class ProtoBenchError(Exception):
    """Base class for all domain errors raised by this package."""

    @property
    def code(self) -> str:
        return type(self).__name__


# --- netlist ---------------------------------------------------------------

class MalformedXml(ProtoBenchError):
    """Input is not well-formed XML."""


class SchemaViolation(ProtoBenchError):
    """XML is well-formed but breaks the netlist schema or its invariants."""


class DanglingReference(ProtoBenchError):
    """A net member or assignment names a component/pin that does not exist."""


class RowOutOfRange(ProtoBenchError):
    """A breadboard row index lies outside the valid 1..50 range."""

    def __init__(self, row):
        super().__init__(f"row {row} outside valid range 1..50")
        self.row = row


class UnknownComponent(ProtoBenchError):
    """A component id does not resolve in the current netlist."""


# --- board protocol --------------------------------------------------------

class MillivoltsOutOfRange(ProtoBenchError):
    """Voltage outside 0..5000 mV."""


class DutyOutOfRange(ProtoBenchError):
    """PWM duty outside 0..255."""


class DurationOutOfRange(ProtoBenchError):
    """Timing parameter outside 1..60000 ms."""


class UnknownPin(ProtoBenchError):
    """Pin name outside the fixed namespace, or wrong class for the operation."""


class FrameMalformed(ProtoBenchError):
    """A wire frame could not be parsed."""


class ContractViolation(ProtoBenchError):
    """A parsed frame breaks the response invariants (e.g. ok plus error)."""


# --- board device ----------------------------------------------------------

class InvalidFixture(ProtoBenchError):
    """A virtual circuit fixture breaks its invariants."""


class DeviceGone(ProtoBenchError):
    """The device transport is closed or unreachable."""


class PinBusy(ProtoBenchError):
    """A timed output is still running on the pin."""


# --- agent orchestration ---------------------------------------------------

class ModeViolation(ProtoBenchError):
    """A tool call arrived in a mode it is not available in."""


class ParamOutOfBounds(ProtoBenchError):
    """A tool-call parameter failed schema bounds validation."""


class UnknownTool(ProtoBenchError):
    """Tool call names no registered tool schema."""


class NoSchematic(ProtoBenchError):
    """Operation requires a synced schematic and none is present."""


class AgentUnavailable(ProtoBenchError):
    """The agent client failed to produce a reply."""


# --- test engine -----------------------------------------------------------

class UnknownTest(ProtoBenchError):
    """Artifact id does not resolve."""


class InvalidState(ProtoBenchError):
    """Operation not permitted in the artifact's current lifecycle state."""


class MissingObservation(ProtoBenchError):
    """Visual inspection submitted without observation text."""


# --- service ---------------------------------------------------------------

class LogCorrupt(ProtoBenchError):
    """Session log has a sequence gap or an undecodable record."""


class UnknownSession(ProtoBenchError):
    """Session id does not resolve to a live session."""
