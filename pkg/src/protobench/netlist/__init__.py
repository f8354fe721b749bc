"""Canonical netlist model: parse, canonicalize, emit YAML, answer row queries."""

from protobench.netlist.model import (
    ROW_MAX,
    ROW_MIN,
    CanonicalNetlist,
    Component,
    ComponentContextEntry,
    Net,
    PinRef,
    RowAssignment,
    canonicalize,
    extract_component_context,
    rows_for_component,
)
from protobench.netlist.parser import parse_netlist_xml
from protobench.netlist.yaml_io import emit_yaml, parse_yaml

__all__ = [
    "ROW_MIN",
    "ROW_MAX",
    "PinRef",
    "Component",
    "Net",
    "RowAssignment",
    "CanonicalNetlist",
    "ComponentContextEntry",
    "parse_netlist_xml",
    "canonicalize",
    "emit_yaml",
    "parse_yaml",
    "rows_for_component",
    "extract_component_context",
]
