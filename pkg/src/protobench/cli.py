"""Command-line interface.

    protobench parse <xml> [--yaml out]     canonical YAML from netlist XML
    protobench serve --config <path>        run the HTTP service
    protobench sim --fixture <path>         interactive simulated-board REPL
    protobench replay <log>                 reconstruct state from a session log
    protobench tape-check <tape>            validate a scripted-agent tape

Exit codes: 2 for domain errors, 3 for tape violations; the machine-readable
error code goes to stderr.
"""

from __future__ import annotations

import json
import sys

import click

from protobench.agent.clients import check_tape, load_tape
from protobench.agent.tools import ToolRegistry, default_tool_schemas
from protobench.board.fixtures import fixture_from_yaml
from protobench.board.protocol import decode_command
from protobench.board.sim import open_sim
from protobench.errors import ProtoBenchError
from protobench.netlist import emit_yaml, parse_netlist_xml
from protobench.service.config import load_config
from protobench.service.sessionlog import replay as replay_log


def _fail(exc: ProtoBenchError, exit_code: int) -> None:
    click.echo(f"{exc.code}: {exc}", err=True)
    sys.exit(exit_code)


@click.group()
def main():
    """Breadboard prototyping workbench."""


@main.command()
@click.argument("xml_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--yaml", "yaml_out", type=click.Path(dir_okay=False), default=None,
              help="write the canonical YAML here instead of stdout")
def parse(xml_path, yaml_out):
    """Parse netlist XML and print its canonical YAML."""
    try:
        with open(xml_path, "rb") as fh:
            text = emit_yaml(parse_netlist_xml(fh.read()))
    except ProtoBenchError as exc:
        _fail(exc, 2)
    if yaml_out:
        with open(yaml_out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


@main.command()
@click.option("--config", "config_path", required=True,
              type=click.Path(exists=True, dir_okay=False))
def serve(config_path):
    """Run the HTTP service."""
    import uvicorn

    from protobench.service.api import create_app

    config = load_config(config_path)
    uvicorn.run(create_app(config), host=config.host, port=config.port)


@main.command()
@click.option("--config", "config_path", required=True,
              type=click.Path(exists=True, dir_okay=False))
def stdio(config_path):
    """Serve one session over stdin/stdout (JSON per line)."""
    from protobench.service.stdio import serve_stdio
    from protobench.workbench import Workbench

    wb = Workbench.create(load_config(config_path))
    serve_stdio(wb, sys.stdin, sys.stdout)


@main.command()
@click.option("--fixture", "fixture_path", required=True,
              type=click.Path(exists=True, dir_okay=False))
def sim(fixture_path):
    """Drive a simulated board from stdin: JSON command frames, one per line.

    Extra REPL verbs: "advance <ms>" moves the virtual clock, "quit" exits.
    """
    with open(fixture_path, encoding="utf-8") as fh:
        try:
            device = open_sim(fixture_from_yaml(fh.read()))
        except ProtoBenchError as exc:
            _fail(exc, 2)
    for line in sys.stdin:
        line = line.strip()
        if not line:
            continue
        if line == "quit":
            break
        if line.startswith("advance"):
            parts = line.split()
            if len(parts) != 2 or not parts[1].isdigit():
                click.echo('{"ok":false,"error":"InvalidRequest"}')
                continue
            device.advance(int(parts[1]))
            click.echo(f'{{"ok":true,"clock_ms":{device.clock_ms}}}')
            continue
        try:
            resp = device.execute(decode_command(line + "\n"))
        except ProtoBenchError as exc:
            click.echo(json.dumps({"ok": False, "error": exc.code}, separators=(",", ":")))
            continue
        out: dict = {"ok": resp.ok}
        if resp.value_mv is not None:
            out["mv"] = resp.value_mv
        if resp.floating:
            out["floating"] = True
        click.echo(json.dumps(out, separators=(",", ":")))


@main.command()
@click.argument("log_path", type=click.Path(exists=True, dir_okay=False))
def replay(log_path):
    """Rebuild session state from a log and print it as JSON."""
    try:
        state = replay_log(log_path)
    except ProtoBenchError as exc:
        _fail(exc, 2)
    click.echo(json.dumps(state, indent=2))


@main.command("tape-check")
@click.argument("tape_path", type=click.Path(exists=True, dir_okay=False))
def tape_check(tape_path):
    """Validate a scripted-agent tape against the tool schemas."""
    registry = ToolRegistry()
    for schema in default_tool_schemas():
        registry.register(schema, lambda params: {})
    try:
        tape = load_tape(tape_path)
        check_tape(tape, registry)
    except ProtoBenchError as exc:
        _fail(exc, 3)
    except ValueError as exc:
        click.echo(f"InvalidTape: {exc}", err=True)
        sys.exit(3)
    click.echo(f"tape ok: {len(tape)} entries")


if __name__ == "__main__":
    main()
