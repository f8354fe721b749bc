"""Deterministic YAML form of a canonical netlist.

This is the text injected into the agent conversation as schematic context.
Top-level keys are always ``components``, ``nets``, ``assignments`` in that
order; entries are sorted by id; 2-space indent, LF line endings, UTF-8.
Canonical input makes the output a pure function of circuit content, so two
semantically equal schematics serialize byte-identically.
"""

from __future__ import annotations

import yaml

from protobench.errors import SchemaViolation
from protobench.netlist.model import (
    CanonicalNetlist,
    Component,
    Net,
    PinRef,
    RowAssignment,
    canonicalize,
)


def netlist_to_dict(netlist: CanonicalNetlist) -> dict:
    components = []
    for comp in netlist.components:
        entry: dict = {"id": comp.id, "label": comp.label, "kind": comp.kind}
        if comp.value is not None:
            entry["value"] = comp.value
        entry["pins"] = list(comp.pins)
        components.append(entry)
    nets = [
        {
            "id": net.id,
            "members": [
                {"component": ref.component_id, "pin": ref.pin_name}
                for ref in net.members
            ],
            "rows": list(net.rows),
        }
        for net in netlist.nets
    ]
    assignments = [
        {"component": a.pin.component_id, "pin": a.pin.pin_name, "row": a.row}
        for a in netlist.assignments
    ]
    return {"components": components, "nets": nets, "assignments": assignments}


def emit_yaml(netlist: CanonicalNetlist) -> str:
    """Serialize a canonical netlist; inverse of :func:`parse_yaml`."""
    return yaml.safe_dump(
        netlist_to_dict(netlist),
        sort_keys=False,
        default_flow_style=False,
        allow_unicode=True,
        width=10**6,
    )


def netlist_from_dict(doc: dict) -> CanonicalNetlist:
    if not isinstance(doc, dict):
        raise SchemaViolation("netlist document must be a mapping")
    try:
        components = tuple(
            Component(
                id=entry["id"],
                label=entry["label"],
                kind=entry["kind"],
                value=entry.get("value"),
                pins=tuple(entry["pins"]),
            )
            for entry in doc.get("components", [])
        )
        nets = tuple(
            Net(
                id=entry["id"],
                members=tuple(
                    PinRef(m["component"], m["pin"]) for m in entry.get("members", [])
                ),
            )
            for entry in doc.get("nets", [])
        )
        assignments = tuple(
            RowAssignment(PinRef(entry["component"], entry["pin"]), entry["row"])
            for entry in doc.get("assignments", [])
        )
    except (KeyError, TypeError) as exc:
        raise SchemaViolation(f"bad netlist document: {exc}") from exc
    return canonicalize(CanonicalNetlist(components, nets, assignments))


def parse_yaml(text: str) -> CanonicalNetlist:
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise SchemaViolation(f"bad YAML: {exc}") from exc
    if doc is None:
        doc = {}
    return netlist_from_dict(doc)
