"""Service configuration: one device backend, one agent backend, HTTP, logs."""

from __future__ import annotations

import os
from dataclasses import dataclass

import yaml


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class DeviceConfig:
    kind: str                    # "sim" | "serial"
    fixture_path: str | None = None
    latency_ms: int = 0
    endpoint: str | None = None


@dataclass(frozen=True)
class AgentConfig:
    kind: str                    # "scripted" | "remote"
    tape_path: str | None = None
    endpoint: str | None = None
    model: str | None = None
    api_key_env: str = "PROTOBENCH_AGENT_KEY"


@dataclass(frozen=True)
class Config:
    device: DeviceConfig
    agent: AgentConfig
    host: str = "127.0.0.1"
    port: int = 8765
    log_dir: str = "logs"
    ui_dir: str | None = None  # serve a built frontend at /ui when set


def _one_of(section: dict, what: str, options: tuple[str, ...]) -> str:
    picked = [key for key in options if key in section]
    if len(picked) != 1:
        raise ConfigError(f"{what}: configure exactly one of {options}, found {picked}")
    return picked[0]


def load_config(path: str) -> Config:
    with open(path, encoding="utf-8") as fh:
        doc = yaml.safe_load(fh) or {}
    base = os.path.dirname(os.path.abspath(path))

    def resolve(p: str | None) -> str | None:
        if p is None:
            return None
        return p if os.path.isabs(p) else os.path.join(base, p)

    device_doc = doc.get("device") or {}
    kind = _one_of(device_doc, "device", ("sim", "serial"))
    if kind == "sim":
        sim = device_doc["sim"] or {}
        if "fixture" not in sim:
            raise ConfigError("device.sim needs a 'fixture' path")
        device = DeviceConfig(
            "sim", fixture_path=resolve(sim["fixture"]), latency_ms=sim.get("latency_ms", 0)
        )
    else:
        serial = device_doc["serial"] or {}
        if "endpoint" not in serial:
            raise ConfigError("device.serial needs an 'endpoint' (path or host:port)")
        device = DeviceConfig("serial", endpoint=serial["endpoint"])

    agent_doc = doc.get("agent") or {}
    kind = _one_of(agent_doc, "agent", ("scripted", "remote"))
    if kind == "scripted":
        scripted = agent_doc["scripted"] or {}
        if "tape" not in scripted:
            raise ConfigError("agent.scripted needs a 'tape' path")
        agent = AgentConfig("scripted", tape_path=resolve(scripted["tape"]))
    else:
        remote = agent_doc["remote"] or {}
        for key in ("endpoint", "model"):
            if key not in remote:
                raise ConfigError(f"agent.remote needs {key!r}")
        agent = AgentConfig(
            "remote",
            endpoint=remote["endpoint"],
            model=remote["model"],
            api_key_env=remote.get("api_key_env", "PROTOBENCH_AGENT_KEY"),
        )

    http = doc.get("http") or {}
    return Config(
        device=device,
        agent=agent,
        host=http.get("host", "127.0.0.1"),
        port=http.get("port", 8765),
        log_dir=resolve(doc.get("log_dir", "logs")),
        ui_dir=resolve(doc.get("ui_dir")),
    )
