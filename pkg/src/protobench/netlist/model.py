"""Netlist data model and canonicalization.

A netlist is the circuit's connectivity truth: components with named pins,
nets joining those pins, and assignments mapping pins to breadboard rows.
Canonical form is fully deterministic (sorted, deduplicated, pruned) so two
semantically equal inputs serialize byte-identically.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from protobench.errors import (
    DanglingReference,
    RowOutOfRange,
    SchemaViolation,
    UnknownComponent,
)

# Breadboard rows are numbered 1..50 everywhere in the system: netlist
# assignments, LED indicator commands, and test probe locations.
ROW_MIN = 1
ROW_MAX = 50


def check_row(row: int) -> int:
    if not isinstance(row, int) or isinstance(row, bool) or not ROW_MIN <= row <= ROW_MAX:
        raise RowOutOfRange(row)
    return row


@dataclass(frozen=True, order=True)
class PinRef:
    """One pin of one component, e.g. ("LED1", "anode")."""

    component_id: str
    pin_name: str


@dataclass(frozen=True)
class Component:
    id: str
    label: str
    kind: str
    value: str | None = None
    pins: tuple[str, ...] = ()


@dataclass(frozen=True)
class Net:
    """An electrically connected set of pins, plus the rows they occupy."""

    id: str
    members: tuple[PinRef, ...] = ()
    rows: tuple[int, ...] = ()


@dataclass(frozen=True)
class RowAssignment:
    pin: PinRef
    row: int


@dataclass(frozen=True)
class CanonicalNetlist:
    components: tuple[Component, ...] = ()
    nets: tuple[Net, ...] = ()
    assignments: tuple[RowAssignment, ...] = ()
    # Revision is caller context (bumped on each schematic sync); it is
    # deliberately excluded from equality so YAML round-trips compare clean.
    revision: int = field(default=0, compare=False)

    def component(self, component_id: str) -> Component:
        for comp in self.components:
            if comp.id == component_id:
                return comp
        raise UnknownComponent(f"no component with id {component_id!r}")


@dataclass(frozen=True)
class ComponentContextEntry:
    """Per-component payload injected into the conversation as context."""

    id: str
    label: str
    kind: str
    value: str | None
    rows: dict[str, int]      # pin name -> assigned row
    nets: dict[str, str]      # pin name -> net id

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "label": self.label,
            "kind": self.kind,
            "value": self.value,
            "rows": dict(self.rows),
            "nets": dict(self.nets),
        }


def canonicalize(raw: CanonicalNetlist) -> CanonicalNetlist:
    """Return the deterministic canonical form of *raw*.

    Duplicate net members are merged, nets left with fewer than two members
    are pruned, net rows are derived from the assignments, and everything is
    sorted (components and nets by id, members by (component, pin),
    assignments by (component, pin)). Rows outside 1..50 are rejected, not
    clamped. Idempotent on already-canonical input.
    """
    by_id: dict[str, Component] = {}
    for comp in raw.components:
        if comp.id in by_id:
            raise SchemaViolation(f"duplicate component id {comp.id!r}")
        if not comp.pins:
            raise SchemaViolation(f"component {comp.id!r} has no pins")
        if len(set(comp.pins)) != len(comp.pins):
            raise SchemaViolation(f"component {comp.id!r} has duplicate pin names")
        by_id[comp.id] = comp

    def check_ref(ref: PinRef, origin: str) -> None:
        comp = by_id.get(ref.component_id)
        if comp is None:
            raise DanglingReference(
                f"{origin} references unknown component {ref.component_id!r}"
            )
        if ref.pin_name not in comp.pins:
            raise DanglingReference(
                f"{origin} references unknown pin "
                f"{ref.component_id!r}.{ref.pin_name!r}"
            )

    row_by_pin: dict[PinRef, int] = {}
    for assign in raw.assignments:
        check_ref(assign.pin, "assignment")
        check_row(assign.row)
        seen = row_by_pin.get(assign.pin)
        if seen is not None and seen != assign.row:
            raise SchemaViolation(
                f"pin {assign.pin.component_id}.{assign.pin.pin_name} "
                f"assigned to both row {seen} and row {assign.row}"
            )
        row_by_pin[assign.pin] = assign.row

    assignments = tuple(
        RowAssignment(pin, row)
        for pin, row in sorted(row_by_pin.items())
    )

    net_ids = [net.id for net in raw.nets]
    if len(set(net_ids)) != len(net_ids):
        raise SchemaViolation("duplicate net id")
    nets = []
    for net in raw.nets:
        members = sorted(set(net.members))
        for ref in members:
            check_ref(ref, f"net {net.id!r}")
        if len(members) < 2:
            continue  # singleton and empty nets carry no connectivity
        rows = sorted({row_by_pin[ref] for ref in members if ref in row_by_pin})
        nets.append(Net(net.id, tuple(members), tuple(rows)))
    nets.sort(key=lambda n: n.id)

    components = tuple(sorted(by_id.values(), key=lambda c: c.id))
    return CanonicalNetlist(components, tuple(nets), assignments, revision=raw.revision)


def rows_for_component(netlist: CanonicalNetlist, component_id: str) -> set[int]:
    """Rows occupied by the component's pins; empty if it is unplaced."""
    netlist.component(component_id)
    return {
        assign.row
        for assign in netlist.assignments
        if assign.pin.component_id == component_id
    }


def extract_component_context(
    netlist: CanonicalNetlist, ids: list[str]
) -> list[ComponentContextEntry]:
    """Context entries for *ids*, in input order (duplicates preserved)."""
    net_by_pin: dict[PinRef, str] = {}
    for net in netlist.nets:
        for ref in net.members:
            # Nets are sorted by id, so a pin listed in several nets maps to
            # the lexicographically first one.
            net_by_pin.setdefault(ref, net.id)
    entries = []
    for component_id in ids:
        comp = netlist.component(component_id)
        rows = {
            assign.pin.pin_name: assign.row
            for assign in netlist.assignments
            if assign.pin.component_id == component_id
        }
        nets = {
            pin: net_by_pin[PinRef(component_id, pin)]
            for pin in comp.pins
            if PinRef(component_id, pin) in net_by_pin
        }
        entries.append(
            ComponentContextEntry(comp.id, comp.label, comp.kind, comp.value, rows, nets)
        )
    return entries


def with_revision(netlist: CanonicalNetlist, revision: int) -> CanonicalNetlist:
    return replace(netlist, revision=revision)
