"""HTTP/JSON service exposing the selector tree, sessions and audits.

The service is a thin shell over the library: one operator, in-memory
sessions with idle expiry, optional snapshot to disk. It adds no semantics
of its own; sequential answers to one session behave exactly like the
corresponding library calls.
"""

from __future__ import annotations

import json
import threading
import time
import uuid
from contextlib import asynccontextmanager
from pathlib import Path
from typing import Callable, Iterable

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, ConfigDict, Field

from . import compass as cp
from .definitions import parse_definition
from .errors import (
    AuditError,
    IncompleteSessionError,
    InputError,
    InvalidChoiceError,
    SessionCompleteError,
    SessionError,
)
from .ingest import SchemaMapping, parse_dataset
from .report import report_to_dict, run_audit


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str, **extra):
        self.status = status
        self.code = code
        self.message = message
        self.extra = extra
        super().__init__(message)


class SessionStore:
    """Thread-safe in-memory map of session/audit ids to their state."""

    def __init__(self, ttl: float = 1800.0, clock: Callable[[], float] = time.monotonic):
        self._lock = threading.Lock()
        self._ttl = ttl
        self._clock = clock
        self._sessions: dict[str, tuple[cp.CompassSession, float]] = {}
        self._audits: dict[str, dict] = {}

    def _purge(self) -> None:
        now = self._clock()
        stale = [sid for sid, (_, touched) in self._sessions.items() if now - touched > self._ttl]
        for sid in stale:
            del self._sessions[sid]

    def create(self, session: cp.CompassSession) -> str:
        with self._lock:
            self._purge()
            sid = uuid.uuid4().hex
            self._sessions[sid] = (session, self._clock())
            return sid

    def get(self, sid: str) -> cp.CompassSession:
        with self._lock:
            self._purge()
            if sid not in self._sessions:
                raise ApiError(404, "not_found", f"unknown session {sid!r}")
            session, _ = self._sessions[sid]
            self._sessions[sid] = (session, self._clock())
            return session

    def mutate(
        self, sid: str, fn: Callable[[cp.CompassSession], cp.CompassSession]
    ) -> cp.CompassSession:
        # One lock serialises concurrent answers to the same session.
        with self._lock:
            self._purge()
            if sid not in self._sessions:
                raise ApiError(404, "not_found", f"unknown session {sid!r}")
            session, _ = self._sessions[sid]
            session = fn(session)
            self._sessions[sid] = (session, self._clock())
            return session

    def put_audit(self, report: dict) -> str:
        with self._lock:
            aid = uuid.uuid4().hex
            self._audits[aid] = report
            return aid

    def get_audit(self, aid: str) -> dict:
        with self._lock:
            if aid not in self._audits:
                raise ApiError(404, "not_found", f"unknown audit {aid!r}")
            return self._audits[aid]

    def snapshot(self, tree: cp.CompassTree) -> dict:
        with self._lock:
            return {
                "tree_version": tree.version,
                "sessions": {
                    sid: [step.to_dict() for step in session.trail]
                    for sid, (session, _) in self._sessions.items()
                },
            }

    def restore(self, doc: dict, tree: cp.CompassTree) -> int:
        if doc.get("tree_version") != tree.version:
            return 0
        count = 0
        with self._lock:
            for sid, raw_trail in doc.get("sessions", {}).items():
                trail = tuple(
                    cp.TrailStep(
                        node=s["node"],
                        answer=s.get("answer", ""),
                        rationale=s.get("rationale", ""),
                        timestamp=s.get("timestamp", ""),
                    )
                    for s in raw_trail
                )
                try:
                    current = cp.replay(tree, trail)
                except InputError:
                    continue
                self._sessions[sid] = (
                    cp.CompassSession(tree=tree, current=current, trail=trail),
                    self._clock(),
                )
                count += 1
        return count


class AnswerBody(BaseModel):
    label: str
    rationale: str = ""
    node: str | None = None


class AuditBody(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    dataset: str
    schema_mapping: dict = Field(alias="schema")
    definitions: list[str]
    tolerance: float = 0.01
    favourable: int | None = None
    bins: int = 10
    min_support: int = 5


def _node_payload(node: cp.Node) -> dict:
    return {
        "id": node.id,
        "kind": node.kind.value,
        "prompt": node.prompt,
        "tooltip": node.tooltip,
        "choices": node.choices,
        "definition": node.definition.value if node.definition else None,
    }


def _session_payload(sid: str, session: cp.CompassSession) -> dict:
    node = session.tree.nodes[session.current]
    return {
        "id": sid,
        "tree_version": session.tree.version,
        "complete": session.complete,
        "current": _node_payload(node),
        "trail": [step.to_dict() for step in session.trail],
        "recommendation": node.definition.value if node.definition else None,
    }


def create_app(
    tree: cp.CompassTree | None = None,
    *,
    session_ttl: float = 1800.0,
    clock: Callable[[], float] = time.monotonic,
    cors_origins: Iterable[str] = ("*",),
    state_path: str | None = None,
) -> FastAPI:
    tree = tree or cp.default_tree()
    store = SessionStore(ttl=session_ttl, clock=clock)

    @asynccontextmanager
    async def lifespan(_: FastAPI):
        if state_path and Path(state_path).exists():
            store.restore(json.loads(Path(state_path).read_text("utf-8")), tree)
        yield
        if state_path:
            Path(state_path).write_text(
                json.dumps(store.snapshot(tree), indent=2), encoding="utf-8"
            )

    app = FastAPI(title="fairaudit service", lifespan=lifespan)
    app.state.store = store
    app.state.tree = tree
    app.add_middleware(
        CORSMiddleware,
        allow_origins=list(cors_origins),
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(ApiError)
    async def _api_error(_req: Request, exc: ApiError):
        body = {"code": exc.code, "message": exc.message, **exc.extra}
        return JSONResponse(status_code=exc.status, content=body)

    @app.exception_handler(RequestValidationError)
    async def _validation_error(_req: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400,
            content={"code": "invalid_body", "message": str(exc.errors()[:3])},
        )

    @app.get("/healthz")
    async def healthz():
        return {"status": "ok"}

    @app.get("/tree")
    async def get_tree():
        return cp.tree_to_dict(tree)

    @app.post("/sessions", status_code=201)
    async def create_session():
        session = cp.start_session(tree)
        sid = store.create(session)
        return _session_payload(sid, session)

    @app.get("/sessions/{sid}")
    async def get_session(sid: str):
        return _session_payload(sid, store.get(sid))

    @app.post("/sessions/{sid}/answers")
    async def post_answer(sid: str, body: AnswerBody):
        def apply(session: cp.CompassSession) -> cp.CompassSession:
            if body.node is not None and body.node != session.current:
                raise ApiError(
                    409,
                    "stale_node",
                    f"session is at {session.current!r}, not {body.node!r}",
                    current=session.current,
                )
            try:
                return cp.answer(session, body.label, body.rationale)
            except InvalidChoiceError as exc:
                raise ApiError(
                    400,
                    "invalid_choice",
                    str(exc),
                    valid_choices=exc.valid_choices,
                ) from exc
            except SessionCompleteError as exc:
                raise ApiError(409, "session_complete", str(exc)) from exc

        return _session_payload(sid, store.mutate(sid, apply))

    @app.post("/sessions/{sid}/undo")
    async def post_undo(sid: str):
        def apply(session: cp.CompassSession) -> cp.CompassSession:
            try:
                return cp.undo(session)
            except SessionError as exc:
                raise ApiError(409, "nothing_to_undo", str(exc)) from exc

        return _session_payload(sid, store.mutate(sid, apply))

    @app.get("/sessions/{sid}/record")
    async def get_record(sid: str, context: str = ""):
        session = store.get(sid)
        try:
            record = cp.export_record(session, context=context)
        except IncompleteSessionError as exc:
            raise ApiError(409, "incomplete_session", str(exc)) from exc
        return record.to_dict()

    @app.post("/audits", status_code=201)
    async def post_audit(body: AuditBody):
        try:
            mapping = SchemaMapping.from_dict(body.schema_mapping)
            favourable = body.favourable if body.favourable is not None else mapping.favourable
            if favourable is None:
                raise InputError(
                    "favourable outcome not specified: set 'favourable' in the body or schema"
                )
            definitions = [parse_definition(name) for name in body.definitions]
            if not definitions:
                raise InputError("no definitions requested")
            records = parse_dataset(body.dataset, mapping)
            report = run_audit(
                records,
                definitions,
                favourable=favourable,
                tolerance=body.tolerance,
                legitimate=mapping.legitimate or None,
                bins=body.bins,
                min_support=body.min_support,
            )
        except (InputError, AuditError) as exc:
            raise ApiError(400, "invalid_input", str(exc)) from exc
        payload = report_to_dict(report)
        aid = store.put_audit(payload)
        return {"id": aid, "report": payload}

    @app.get("/audits/{aid}")
    async def get_audit(aid: str):
        return {"id": aid, "report": store.get_audit(aid)}

    return app
