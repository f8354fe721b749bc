"""Netlist XML parsing.

Input schema (attribute order irrelevant):

    <netlist>
      <component id="LED1" label="Red LED" kind="LED" value="optional">
        <pin name="anode"/>
      </component>
      <net id="N1">
        <member component="LED1" pin="anode"/>
      </net>
      <assignment component="LED1" pin="anode" row="4"/>
    </netlist>

The parser is strict: unknown elements and missing required attributes are
schema violations rather than silently skipped, so a schematic export that
drifts from this schema fails loudly instead of producing a half-empty model.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET

from protobench.errors import MalformedXml, SchemaViolation
from protobench.netlist.model import (
    CanonicalNetlist,
    Component,
    Net,
    PinRef,
    RowAssignment,
    canonicalize,
)


def _attr(elem: ET.Element, name: str) -> str:
    value = elem.get(name)
    if value is None:
        raise SchemaViolation(f"<{elem.tag}> missing required attribute {name!r}")
    return value


def _parse_component(elem: ET.Element) -> Component:
    pins = []
    for child in elem:
        if child.tag != "pin":
            raise SchemaViolation(f"unknown element <{child.tag}> inside <component>")
        name = _attr(child, "name")
        if not name:
            raise SchemaViolation("<pin> name must be non-empty")
        pins.append(name)
    comp_id = _attr(elem, "id")
    if not comp_id:
        raise SchemaViolation("<component> id must be non-empty")
    return Component(
        id=comp_id,
        label=_attr(elem, "label"),
        kind=_attr(elem, "kind"),
        value=elem.get("value"),
        pins=tuple(pins),
    )


def _parse_net(elem: ET.Element) -> Net:
    members = []
    for child in elem:
        if child.tag != "member":
            raise SchemaViolation(f"unknown element <{child.tag}> inside <net>")
        members.append(PinRef(_attr(child, "component"), _attr(child, "pin")))
    return Net(id=_attr(elem, "id"), members=tuple(members))


def _parse_assignment(elem: ET.Element) -> RowAssignment:
    raw_row = _attr(elem, "row")
    try:
        row = int(raw_row)
    except ValueError:
        raise SchemaViolation(f"assignment row {raw_row!r} is not an integer") from None
    return RowAssignment(PinRef(_attr(elem, "component"), _attr(elem, "pin")), row)


def parse_netlist_xml(xml: bytes | str) -> CanonicalNetlist:
    """Parse netlist XML and return its canonical form (revision 0)."""
    try:
        root = ET.fromstring(xml)
    except ET.ParseError as exc:
        raise MalformedXml(str(exc)) from exc
    if root.tag != "netlist":
        raise SchemaViolation(f"root element must be <netlist>, got <{root.tag}>")

    components: list[Component] = []
    nets: list[Net] = []
    assignments: list[RowAssignment] = []
    for elem in root:
        if elem.tag == "component":
            components.append(_parse_component(elem))
        elif elem.tag == "net":
            nets.append(_parse_net(elem))
        elif elem.tag == "assignment":
            assignments.append(_parse_assignment(elem))
        else:
            raise SchemaViolation(f"unknown element <{elem.tag}> inside <netlist>")

    return canonicalize(
        CanonicalNetlist(tuple(components), tuple(nets), tuple(assignments))
    )
