"""HTTP surface: session lifecycle, queries, board control, artifacts, SSE.

Every mutation is a plain POST; the UI observes through one server-sent
event stream per session that mirrors the session log record for record,
so what a client sees over SSE is exactly what replay would fold.
"""

from __future__ import annotations

import json
import os
from typing import Iterator

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse, StreamingResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from protobench import errors as E
from protobench.netlist.yaml_io import netlist_to_dict
from protobench.service.config import Config
from protobench.testing.items import Series, TestItem
from protobench.workbench import Workbench

# Total mapping: every domain error resolves to exactly one HTTP status.
STATUS_BY_ERROR: dict[type, int] = {
    E.MalformedXml: 400,
    E.SchemaViolation: 400,
    E.DanglingReference: 400,
    E.RowOutOfRange: 400,
    E.UnknownComponent: 400,
    E.MillivoltsOutOfRange: 400,
    E.DutyOutOfRange: 400,
    E.DurationOutOfRange: 400,
    E.UnknownPin: 400,
    E.FrameMalformed: 400,
    E.ContractViolation: 400,
    E.InvalidFixture: 400,
    E.ParamOutOfBounds: 400,
    E.UnknownTool: 400,
    E.MissingObservation: 400,
    E.LogCorrupt: 400,
    E.UnknownTest: 404,
    E.UnknownSession: 404,
    E.InvalidState: 409,
    E.PinBusy: 409,
    E.ModeViolation: 409,
    E.NoSchematic: 409,
    E.AgentUnavailable: 502,
    E.DeviceGone: 503,
}


class QueryBody(BaseModel):
    text: str
    context_ids: list[str] | None = None


class ModeBody(BaseModel):
    mode: str


class ContextBody(BaseModel):
    ids: list[str]


class HighlightBody(BaseModel):
    component_id: str


class StopBody(BaseModel):
    pin: str


class SubmitBody(BaseModel):
    observation: str | None = None


def create_app(config: Config) -> FastAPI:
    app = FastAPI(title="protobench", version="0.1.0")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    app.state.config = config
    app.state.benches: dict[str, Workbench] = {}

    def bench(session_id: str) -> Workbench:
        try:
            return app.state.benches[session_id]
        except KeyError:
            raise E.UnknownSession(f"no session {session_id!r}") from None

    def bench_for_artifact(artifact_id: str) -> Workbench:
        for candidate in app.state.benches.values():
            if artifact_id in candidate.engine.artifacts:
                return candidate
        raise E.UnknownTest(f"no artifact {artifact_id!r}")

    @app.exception_handler(E.ProtoBenchError)
    async def domain_error(request: Request, exc: E.ProtoBenchError):
        status = STATUS_BY_ERROR.get(type(exc), 400)
        return JSONResponse(
            status_code=status, content={"error": exc.code, "detail": str(exc)}
        )

    @app.exception_handler(ValueError)
    async def value_error(request: Request, exc: ValueError):
        return JSONResponse(
            status_code=400, content={"error": "InvalidRequest", "detail": str(exc)}
        )

    # --- session lifecycle -------------------------------------------------

    @app.post("/session")
    def create_session():
        wb = Workbench.create(config)
        app.state.benches[wb.session.id] = wb
        return {"session_id": wb.session.id, "log_path": wb.log.path}

    @app.get("/session/{session_id}/state")
    def get_state(session_id: str):
        return bench(session_id).state_dict()

    @app.post("/session/{session_id}/mode")
    def set_mode(session_id: str, body: ModeBody):
        return bench(session_id).set_mode(body.mode)

    @app.post("/session/{session_id}/schematic")
    async def sync_schematic(session_id: str, request: Request):
        xml = await request.body()
        return bench(session_id).sync_schematic_xml(xml)

    @app.post("/session/{session_id}/context")
    def select_context(session_id: str, body: ContextBody):
        return bench(session_id).select_context(body.ids)

    @app.get("/session/{session_id}/schematic.json")
    def schematic_json(session_id: str):
        wb = bench(session_id)
        if wb.session.schematic is None:
            return {"components": [], "nets": [], "assignments": []}
        return netlist_to_dict(wb.session.schematic)

    @app.post("/session/{session_id}/query")
    def query(session_id: str, body: QueryBody):
        wb = bench(session_id)
        if body.context_ids is not None:
            current = [e.id for e in wb.session.selected_context]
            if body.context_ids != current:
                wb.select_context(body.context_ids)
        return wb.submit_query(body.text)

    @app.post("/session/{session_id}/highlight")
    def highlight(session_id: str, body: HighlightBody):
        return bench(session_id).highlight_component(body.component_id)

    @app.post("/session/{session_id}/board")
    async def board(session_id: str, request: Request):
        doc = await request.json()
        return bench(session_id).board_command(doc)

    @app.post("/session/{session_id}/stop")
    def stop(session_id: str, body: StopBody):
        return bench(session_id).stop_pin(body.pin)

    # --- event stream --------------------------------------------------------

    @app.get("/session/{session_id}/events")
    def events(session_id: str, after: int = 0, follow: bool = True):
        wb = bench(session_id)

        def stream() -> Iterator[str]:
            seq = after
            while True:
                for record in [r for r in wb.log.records if r.seq > seq]:
                    seq = record.seq
                    data = json.dumps(
                        {"seq": record.seq, "at": record.at, "event": record.event},
                        separators=(",", ":"),
                    )
                    yield f"event: {record.event['type']}\nid: {record.seq}\ndata: {data}\n\n"
                if not follow:
                    return
                if not wb.log.wait_for(seq + 1, timeout=20.0):
                    yield ": keepalive\n\n"

        return StreamingResponse(stream(), media_type="text/event-stream")

    # --- test artifacts ---------------------------------------------------------

    @app.post("/tests/{test_id}/highlight")
    def test_highlight(test_id: str):
        return bench_for_artifact(test_id).highlight_test(test_id)

    @app.post("/tests/{test_id}/run")
    def test_run(test_id: str):
        return bench_for_artifact(test_id).run_test(test_id)

    @app.post("/tests/{test_id}/submit")
    def test_submit(test_id: str, body: SubmitBody | None = None):
        observation = body.observation if body else None
        return bench_for_artifact(test_id).submit_result(test_id, observation)

    @app.post("/tests/{test_id}/interpret")
    def test_interpret(test_id: str):
        return bench_for_artifact(test_id).interpret(test_id)

    @app.get("/tests/{test_id}/series.csv")
    def test_series_csv(test_id: str):
        wb = bench_for_artifact(test_id)
        artifact = wb.engine.artifacts[test_id]
        if not isinstance(artifact, TestItem) or not isinstance(artifact.result, Series):
            raise E.InvalidState("test has no series result")
        return PlainTextResponse(artifact.result.series.to_csv(), media_type="text/csv")

    @app.post("/suggestions/{suggestion_id}/highlight")
    def suggestion_highlight(suggestion_id: str):
        return bench_for_artifact(suggestion_id).highlight_suggestion(suggestion_id)

    @app.post("/suggestions/{suggestion_id}/complete")
    def suggestion_complete(suggestion_id: str):
        return bench_for_artifact(suggestion_id).complete_suggestion(suggestion_id)

    @app.get("/healthz")
    def healthz():
        return {"ok": True}

    if config.ui_dir and os.path.isdir(config.ui_dir):
        app.mount("/ui", StaticFiles(directory=config.ui_dir, html=True), name="ui")

    return app
