"""Desk-scale breadboard prototyping assistant.

The package is organized around five cooperating parts:

- ``protobench.netlist``: schematic netlist XML parsing, canonicalization,
  and the YAML context form handed to the conversational agent.
- ``protobench.board``: the JSON wire protocol for the augmented breadboard,
  plus a simulated device driven by virtual circuit fixtures and a serial
  byte-stream transport for real hardware.
- ``protobench.agent``: conversation state, mode gating, tool schemas, and
  dispatch of agent tool calls.
- ``protobench.testing``: in-situ test and suggestion artifacts with their
  lifecycle (create, highlight, run, submit, interpret).
- ``protobench.service``: HTTP API, server-sent event stream, append-only
  session logs with replay, and the command-line interface.
"""

__version__ = "0.1.0"
