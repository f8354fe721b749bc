"""Virtual circuit fixtures.

A fixture stands in for the physical circuit under test: it gives every
analog-in pin a transfer function over the driven signal-out pins, so the
simulated board can answer reads deterministically.

Fixture file format (YAML):

    pins:
      A0: {divider: {source: D0, ratio: "1/2"}}
      A1: {constant: {mv: 2000}}
      A2: {noisy: {base: {constant: {mv: 1000}}, amplitude_mv: 50, seed: 7}}
      A3: {open: {}}

Pins left out default to open (floating). Ratios accept "p/q" strings or
plain numbers and are kept exact as rationals.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Union

import yaml

from protobench.board.protocol import ANALOG_IN_PINS, MV_MAX, MV_MIN, SIGNAL_OUT_PINS
from protobench.errors import InvalidFixture


@dataclass(frozen=True)
class Constant:
    mv: int


@dataclass(frozen=True)
class Divider:
    source_pin: str
    ratio: Fraction


@dataclass(frozen=True)
class Noisy:
    base: "TransferModel"
    amplitude_mv: int
    seed: int


@dataclass(frozen=True)
class Open:
    pass


TransferModel = Union[Constant, Divider, Noisy, Open]


@dataclass(frozen=True)
class VirtualFixture:
    """Per-pin transfer models for the analog-in pins."""

    pin_models: dict[str, TransferModel] = field(default_factory=dict)

    @classmethod
    def from_pairs(cls, pairs: list[tuple[str, TransferModel]]) -> "VirtualFixture":
        models: dict[str, TransferModel] = {}
        for pin, model in pairs:
            if pin in models:
                raise InvalidFixture(f"pin {pin!r} mapped twice")
            models[pin] = model
        return cls(models)

    def completed(self) -> dict[str, TransferModel]:
        """Validated model map with every analog-in pin present (Open default)."""
        for pin in self.pin_models:
            if pin not in ANALOG_IN_PINS:
                raise InvalidFixture(f"{pin!r} is not an analog-in pin")
        for pin, model in self.pin_models.items():
            _validate_model(model, pin)
        return {pin: self.pin_models.get(pin, Open()) for pin in ANALOG_IN_PINS}


def _validate_model(model: TransferModel, pin: str) -> None:
    if isinstance(model, Constant):
        if not isinstance(model.mv, int) or not MV_MIN <= model.mv <= MV_MAX:
            raise InvalidFixture(f"{pin}: constant mv {model.mv!r} outside {MV_MIN}..{MV_MAX}")
    elif isinstance(model, Divider):
        if model.source_pin not in SIGNAL_OUT_PINS:
            raise InvalidFixture(f"{pin}: divider source {model.source_pin!r} is not a signal-out pin")
        if not 0 <= model.ratio <= 1:
            raise InvalidFixture(f"{pin}: divider ratio {model.ratio} outside [0, 1]")
    elif isinstance(model, Noisy):
        if model.amplitude_mv < 0:
            raise InvalidFixture(f"{pin}: noise amplitude must be >= 0")
        _validate_model(model.base, pin)
    elif not isinstance(model, Open):
        raise InvalidFixture(f"{pin}: not a transfer model: {model!r}")


def _round_half_up(value: Fraction) -> int:
    # value is never negative here (mv and ratios are non-negative)
    return int(value + Fraction(1, 2))


def evaluate_model(
    model: TransferModel, drive_level: Callable[[str], int], t_ms: int
) -> tuple[int, bool]:
    """Evaluate a transfer model at virtual time *t_ms*.

    Returns (value_mv, floating). Values are quantized to the 1 mV grid and
    clamped to the ADC range. Noise is a pure function of (seed, t_ms) so a
    fixed command schedule always reproduces the same series.
    """
    if isinstance(model, Constant):
        return model.mv, False
    if isinstance(model, Divider):
        return _round_half_up(Fraction(drive_level(model.source_pin)) * model.ratio), False
    if isinstance(model, Noisy):
        base, floating = evaluate_model(model.base, drive_level, t_ms)
        rng = random.Random(f"{model.seed}:{t_ms}")
        noise = rng.randint(-model.amplitude_mv, model.amplitude_mv)
        return min(max(base + noise, MV_MIN), MV_MAX), floating
    return 0, True  # open pin: deterministic 0 mV, flagged floating


def _parse_ratio(raw) -> Fraction:
    try:
        if isinstance(raw, str):
            return Fraction(raw.strip())
        if isinstance(raw, (int, float)):
            return Fraction(raw).limit_denominator(10**6)
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidFixture(f"bad ratio {raw!r}: {exc}") from exc
    raise InvalidFixture(f"bad ratio {raw!r}")


def _parse_model(doc, pin: str) -> TransferModel:
    if not isinstance(doc, dict) or len(doc) != 1:
        raise InvalidFixture(f"{pin}: model must be a single-key mapping, got {doc!r}")
    kind, body = next(iter(doc.items()))
    body = body or {}
    if not isinstance(body, dict):
        raise InvalidFixture(f"{pin}: model body must be a mapping")
    try:
        if kind == "constant":
            return Constant(mv=body["mv"])
        if kind == "divider":
            return Divider(source_pin=body["source"], ratio=_parse_ratio(body["ratio"]))
        if kind == "noisy":
            return Noisy(
                base=_parse_model(body["base"], pin),
                amplitude_mv=body["amplitude_mv"],
                seed=body["seed"],
            )
        if kind == "open":
            return Open()
    except KeyError as exc:
        raise InvalidFixture(f"{pin}: {kind} model missing key {exc}") from exc
    raise InvalidFixture(f"{pin}: unknown model kind {kind!r}")


class _StrictLoader(yaml.SafeLoader):
    """SafeLoader that rejects duplicate mapping keys."""


def _construct_mapping(loader: _StrictLoader, node, deep=False):
    mapping = {}
    for key_node, value_node in node.value:
        key = loader.construct_object(key_node, deep=deep)
        if key in mapping:
            raise InvalidFixture(f"duplicate key {key!r} in fixture file")
        mapping[key] = loader.construct_object(value_node, deep=deep)
    return mapping


_StrictLoader.add_constructor(
    yaml.resolver.BaseResolver.DEFAULT_MAPPING_TAG, _construct_mapping
)


def fixture_from_yaml(text: str) -> VirtualFixture:
    try:
        doc = yaml.load(text, Loader=_StrictLoader)
    except yaml.YAMLError as exc:
        raise InvalidFixture(f"bad fixture YAML: {exc}") from exc
    if doc is None:
        doc = {}
    if not isinstance(doc, dict):
        raise InvalidFixture("fixture file must be a mapping")
    pins = doc.get("pins") or {}
    if not isinstance(pins, dict):
        raise InvalidFixture("'pins' must be a mapping")
    fixture = VirtualFixture({pin: _parse_model(model, pin) for pin, model in pins.items()})
    fixture.completed()  # validate eagerly
    return fixture
