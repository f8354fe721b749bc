"""In-situ test and suggestion artifacts with their full lifecycle."""

from protobench.testing.items import (
    ConnectionFix,
    ComponentFix,
    Lifecycle,
    Observation,
    ProbeTarget,
    Reading,
    Series,
    SignalPattern,
    Suggestion,
    SuggestionState,
    TestGroup,
    TestItem,
    Verdict,
    VisualInspection,
    VoltageMeasurement,
    fallback_interpretation,
    local_verdict,
)
from protobench.testing.engine import ArtifactCreated, ArtifactStateChanged, TestEngine

__all__ = [
    "Lifecycle",
    "Verdict",
    "SuggestionState",
    "VoltageMeasurement",
    "SignalPattern",
    "VisualInspection",
    "ProbeTarget",
    "Reading",
    "Series",
    "Observation",
    "TestItem",
    "TestGroup",
    "Suggestion",
    "ConnectionFix",
    "ComponentFix",
    "local_verdict",
    "fallback_interpretation",
    "TestEngine",
    "ArtifactCreated",
    "ArtifactStateChanged",
]
