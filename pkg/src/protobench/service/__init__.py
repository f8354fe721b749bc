"""HTTP API, event streaming, session-log persistence, configuration.

Import :func:`protobench.service.api.create_app` directly for the HTTP app;
it is not re-exported here to keep this package importable from the
workbench module without a cycle.
"""

from protobench.service.sessionlog import SessionLog, SessionLogRecord, replay, replay_records
from protobench.service.config import Config, load_config

__all__ = [
    "SessionLog",
    "SessionLogRecord",
    "replay",
    "replay_records",
    "Config",
    "load_config",
]
