"""HTTP session API for the interactive explorer.

Sessions are in-memory and per-process.  Operations within one session are
serialized by a lock; the underlying computations are pure, so distinct
sessions run concurrently without restriction.  All request and response
bodies are JSON; errors are {"code", "message", "detail"} objects.
"""

from __future__ import annotations

import threading
import uuid
from dataclasses import dataclass, field

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from . import io as docio
from .algebra import Potential, default_truncation, potential_validate
from .errors import IceQuiverError, ParseError, PreconditionError, ValidationFailure
from .jacobian import (gabriel_quiver, hom_dims_matrix, rigidity,
                       truncated_algebra)
from .mutation import fz_agreement, mutate
from .quiver import IceQuiver
from .reduction import is_reduced


class ServiceError(Exception):
    def __init__(self, status: int, code: str, message: str, detail: str = ""):
        self.status = status
        self.payload = {"code": code, "message": message, "detail": detail}
        super().__init__(message)


@dataclass
class SessionState:
    quiver: IceQuiver
    potential: Potential
    document: str


@dataclass
class Session:
    id: str
    truncation: int
    states: list[SessionState]
    history: list[dict] = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock)

    @property
    def current(self) -> SessionState:
        return self.states[-1]


def _diagnostics(state: SessionState, truncation: int) -> dict:
    q, w = state.quiver, state.potential
    return {
        "mutable_vertices": list(q.mutable_vertices()),
        "mutability": {str(v.id): q.mutability_check(v.id) for v in q.vertices},
        "unfrozen_two_cycles": [[a.id, b.id] for a, b in q.unfrozen_two_cycles()],
        "is_reduced": is_reduced(q, w),
        "truncation": truncation,
    }


def _state_payload(session: Session) -> dict:
    state = session.current
    return {
        "id": session.id,
        "current": docio.iqp_to_document(state.quiver, state.potential),
        "serialized": state.document,
        "history": session.history,
        "diagnostics": _diagnostics(state, session.truncation),
    }


def create_app() -> FastAPI:
    app = FastAPI(title="icequiver session API")
    sessions: dict[str, Session] = {}
    registry_lock = threading.Lock()

    @app.exception_handler(ServiceError)
    async def service_error_handler(_request: Request, exc: ServiceError):
        return JSONResponse(status_code=exc.status, content=exc.payload)

    def get_session(session_id: str) -> Session:
        with registry_lock:
            session = sessions.get(session_id)
        if session is None:
            raise ServiceError(404, "unknown_session",
                               f"no session {session_id!r}")
        return session

    def make_state(q: IceQuiver, w: Potential) -> SessionState:
        return SessionState(q, w, docio.serialize_iqp(q, w))

    @app.post("/sessions")
    async def create_session(body: dict):
        doc = body.get("iqp")
        if not isinstance(doc, dict):
            raise ServiceError(400, "bad_request", "body needs an 'iqp' document")
        try:
            q, w = docio.document_to_iqp(doc)
        except ParseError as e:
            raise ServiceError(400, "parse_error", "cannot parse document",
                               str(e)) from None
        violations = q.validate() + potential_validate(q, w)
        if violations:
            raise ServiceError(400, "invalid_input", "document fails validation",
                               "; ".join(violations))
        truncation = body.get("truncate") or default_truncation(w)
        if not isinstance(truncation, int) or truncation < 1:
            raise ServiceError(400, "bad_request", "truncate must be a positive int")
        session = Session(uuid.uuid4().hex, truncation, [make_state(q, w)])
        with registry_lock:
            sessions[session.id] = session
        return {"id": session.id}

    @app.get("/sessions/{session_id}")
    async def get_state(session_id: str):
        session = get_session(session_id)
        with session.lock:
            return _state_payload(session)

    @app.post("/sessions/{session_id}/mutate")
    async def mutate_session(session_id: str, body: dict):
        session = get_session(session_id)
        vertex = body.get("vertex")
        if not isinstance(vertex, int):
            raise ServiceError(400, "bad_request", "body needs an integer 'vertex'")
        with session.lock:
            state = session.current
            try:
                step = mutate(state.quiver, state.potential, vertex,
                              session.truncation)
                agreement = fz_agreement(state.quiver, state.potential, vertex,
                                         session.truncation)
            except (PreconditionError, ValidationFailure) as e:
                raise ServiceError(409, "precondition",
                                   f"cannot mutate at {vertex}", str(e)) from None
            new_state = make_state(step.quiver, step.potential)
            rigid = rigidity(step.quiver, step.potential, session.truncation)
            report = {
                "vertex": vertex,
                "two_cycles_created": [[a.id, b.id]
                                       for a, b in step.quiver.two_cycles()],
                "fz_agreement": agreement,
                "rigidity": {
                    "rigid": rigid.rigid,
                    "bound": rigid.bound,
                    "witness": list(rigid.witness.arrows) if rigid.witness else None,
                },
            }
            session.states.append(new_state)
            session.history.append(report)
            return _state_payload(session) | {"report": report}

    @app.post("/sessions/{session_id}/undo")
    async def undo(session_id: str):
        session = get_session(session_id)
        with session.lock:
            if len(session.states) <= 1:
                raise ServiceError(409, "empty_history", "nothing to undo")
            session.states.pop()
            session.history.pop()
            return _state_payload(session)

    @app.get("/sessions/{session_id}/analysis")
    async def analysis(session_id: str):
        session = get_session(session_id)
        with session.lock:
            state = session.current
            q, w = state.quiver, state.potential
            n = session.truncation
            try:
                algebra = truncated_algebra(q, w, n)
                rigid = rigidity(q, w, n)
                gq = gabriel_quiver(algebra)
                gabriel = docio.iqp_to_document(gq, Potential.zero())
            except IceQuiverError as e:
                raise ServiceError(409, "precondition", "analysis failed",
                                   str(e)) from None
            return {
                "hom_dims": {
                    "truncation": n,
                    "vertices": list(q.vertex_ids),
                    "matrix": hom_dims_matrix(algebra),
                    "total": algebra.total_dim(),
                },
                "gabriel_quiver": gabriel,
                "rigidity": {
                    "rigid": rigid.rigid,
                    "bound": rigid.bound,
                    "witness": list(rigid.witness.arrows) if rigid.witness else None,
                },
                "reduced": is_reduced(q, w),
            }

    return app


def serve(host: str, port: int) -> None:
    import uvicorn

    uvicorn.run(create_app(), host=host, port=port)
