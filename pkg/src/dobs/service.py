"""HTTP/JSON API exposing sessions to remote clients.

One session is one knowledge base.  Mutating requests to a session are
serialized behind a per-session lock; distinct sessions are independent.
Sessions expire after an idle timeout and are never persisted (snapshots
via the command language cover that).
"""

from __future__ import annotations

import threading
import time
import uuid
from dataclasses import dataclass, field

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .revision import CoverageError
from .session import Session
from .terms import UnknownTermError


@dataclass
class ServiceConfig:
    max_sessions: int = 64
    idle_timeout: float = 3600.0
    depth_limit: int = 10
    firing_cap: int = 10_000


@dataclass
class _Slot:
    session: Session
    lock: threading.Lock = field(default_factory=threading.Lock)
    last_used: float = field(default_factory=time.monotonic)


def _error(status: int, message: str, **extra) -> JSONResponse:
    return JSONResponse(status_code=status, content={"error": message, **extra})


def create_app(config: ServiceConfig | None = None) -> FastAPI:
    config = config or ServiceConfig()
    app = FastAPI(title="dobs", version="0.1.0")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    slots: dict[str, _Slot] = {}
    registry_lock = threading.Lock()

    def _purge() -> None:
        deadline = time.monotonic() - config.idle_timeout
        for sid in [s for s, slot in slots.items() if slot.last_used < deadline]:
            del slots[sid]

    def _slot(session_id: str) -> _Slot | None:
        with registry_lock:
            _purge()
            slot = slots.get(session_id)
            if slot:
                slot.last_used = time.monotonic()
            return slot

    @app.post("/sessions", status_code=201)
    def create_session():
        with registry_lock:
            _purge()
            if len(slots) >= config.max_sessions:
                return _error(
                    503,
                    "session capacity reached; retry after an idle session expires",
                    retry_after_seconds=int(config.idle_timeout),
                )
            session_id = uuid.uuid4().hex
            slots[session_id] = _Slot(
                Session(
                    name=session_id,
                    depth_limit=config.depth_limit,
                    firing_cap=config.firing_cap,
                )
            )
        return {"session_id": session_id}

    @app.post("/sessions/{session_id}/input")
    async def submit_input(session_id: str, request: Request):
        slot = _slot(session_id)
        if slot is None:
            return _error(404, "unknown session")
        body = await request.json()
        text = body.get("text") if isinstance(body, dict) else None
        if not isinstance(text, str) or not text.strip():
            return _error(422, "body must be {\"text\": \"<command>\"}")
        with slot.lock:
            if slot.session.pending_revision is not None:
                return _error(
                    409, "a revision is pending; answer via the revision endpoint"
                )
            events = slot.session.eval_line(text)
        if len(events) == 1 and events[0].type == "error":
            payload = events[0].payload
            if "line" in payload:
                return _error(
                    422, payload["message"], line=payload["line"], col=payload["col"]
                )
        return {"events": [e.to_dict() for e in events]}

    @app.get("/sessions/{session_id}/revision")
    def get_revision(session_id: str):
        slot = _slot(session_id)
        if slot is None:
            return _error(404, "unknown session")
        with slot.lock:
            view = slot.session.revision_view()
        if view is None:
            return {"pending": False}
        return {"pending": True, **view}

    @app.post("/sessions/{session_id}/revision")
    async def submit_revision(session_id: str, request: Request):
        slot = _slot(session_id)
        if slot is None:
            return _error(404, "unknown session")
        body = await request.json()
        if not isinstance(body, dict):
            return _error(422, "body must be {\"retract\": [...]} or {\"keep\": true}")
        session = slot.session
        with slot.lock:
            if session.pending_revision is None:
                return _error(409, "no revision pending")
            if body.get("keep") is True:
                events = session.answer_revision(keep=True)
            elif isinstance(body.get("retract"), list) and body["retract"]:
                try:
                    chosen = {
                        session.store.resolve_label(str(w)) for w in body["retract"]
                    }
                except UnknownTermError as exc:
                    return _error(422, f"unknown proposition {exc.args[0]!r}")
                try:
                    events = session.answer_revision(retractions=chosen)
                except CoverageError as exc:
                    return _error(
                        422,
                        "selection leaves inconsistent sets uncovered",
                        uncovered=[
                            [session.store.label(t) for t in s] for s in exc.uncovered
                        ],
                    )
                except (KeyError, ValueError) as exc:
                    return _error(422, str(exc))
            else:
                return _error(
                    422, "body must be {\"retract\": [\"wffN\", ...]} or {\"keep\": true}"
                )
        return {"events": [e.to_dict() for e in events]}

    @app.get("/sessions/{session_id}/beliefs")
    def get_beliefs(session_id: str):
        slot = _slot(session_id)
        if slot is None:
            return _error(404, "unknown session")
        with slot.lock:
            rows = slot.session.belief_rows()
        return {"beliefs": rows}

    @app.put("/sessions/{session_id}/mode")
    async def put_mode(session_id: str, request: Request):
        slot = _slot(session_id)
        if slot is None:
            return _error(404, "unknown session")
        body = await request.json()
        mode = body.get("mode") if isinstance(body, dict) else None
        if mode not in ("auto", "manual"):
            return _error(422, "mode must be \"auto\" or \"manual\"")
        with slot.lock:
            slot.session.ctx.br_mode = mode
        return {"mode": mode}

    return app


def serve(address: str, config: ServiceConfig | None = None) -> None:
    import uvicorn

    host, _, port = address.rpartition(":")
    uvicorn.run(create_app(config), host=host or "127.0.0.1", port=int(port))
