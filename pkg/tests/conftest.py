from __future__ import annotations

import itertools
import pathlib

import pytest

from protobench.agent.clients import ScriptedAgentClient
from protobench.agent.session import Session
from protobench.agent.tools import ToolRegistry
from protobench.board.fixtures import fixture_from_yaml
from protobench.board.sim import open_sim
from protobench.netlist import parse_netlist_xml
from protobench.testing.engine import TestEngine
from protobench.workbench import build_registry

REPO_ROOT = pathlib.Path(__file__).resolve().parent.parent
FIXTURES = REPO_ROOT / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> pathlib.Path:
    return FIXTURES


@pytest.fixture()
def loveometer_xml() -> bytes:
    return (FIXTURES / "loveometer-min.xml").read_bytes()


@pytest.fixture()
def loveometer(loveometer_xml):
    return parse_netlist_xml(loveometer_xml)


@pytest.fixture()
def pulse_timer():
    return parse_netlist_xml((FIXTURES / "pulse-timer.xml").read_bytes())


@pytest.fixture()
def half_divider_sim():
    return open_sim(fixture_from_yaml((FIXTURES / "divider-half.yaml").read_text()))


@pytest.fixture()
def unity_divider_sim():
    return open_sim(fixture_from_yaml((FIXTURES / "divider-unity.yaml").read_text()))


def make_config(tmp_path, fixture_name="divider-half.yaml", tape_name="tape-demo.yaml"):
    """Service config pointing at the repo fixtures, logging under tmp_path."""
    from protobench.service.config import load_config

    config_path = tmp_path / "config.yaml"
    config_path.write_text(
        "device:\n"
        f"  sim: {{fixture: {FIXTURES / fixture_name}}}\n"
        "agent:\n"
        f"  scripted: {{tape: {FIXTURES / tape_name}}}\n"
        f"log_dir: {tmp_path / 'logs'}\n"
    )
    return load_config(str(config_path))


def wire_bench(tape: dict, fixture_name: str = "divider-half.yaml", session_id: str = "sess1"):
    """Session + engine + sim device wired like the service does, no log."""
    device = open_sim(fixture_from_yaml((FIXTURES / fixture_name).read_text()))
    client = ScriptedAgentClient(tape)
    ticker = itertools.count()
    session = Session(
        session_id, client, ToolRegistry(), clock=lambda: float(next(ticker))
    )
    engine = TestEngine(device, session)
    build_registry(session, engine, device)
    return session, engine, device, client
