"""HTTP service for live caregiver sessions.

Endpoints:
    POST /sessions                      create (condition explicit or auto)
    GET  /sessions/{id}                 public view (never the condition)
    POST /sessions/{id}/choice          offer an object
    POST /sessions/{id}/survey          store the post-session ratings
    GET  /sessions/{id}/events          SSE stream with replay via
                                        ?last_event=N or Last-Event-ID

Clients only ever see: phase changes, babbled words, feedback tokens,
progress counts, and the termination flag. The condition assignment and
the robot's internal need stay server-side, and the message schemas are
identical in both conditions.

All handlers are async and run on one event loop, so per-session state
needs no locks; streams fan out through per-session subscriber queues.
"""

from __future__ import annotations

import asyncio
import json
import time
import uuid
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Optional

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, StreamingResponse

from .episode_io import dump_episode, dumps_episode
from .errors import ConfigInvalid, RangeViolation
from .feedback import FeedbackCondition
from .perception import ObjectKind, object_from_name
from .session import (
    EpisodeLog,
    Event,
    SamRating,
    Session,
    SessionConfig,
    SessionPhase,
)
from .rng import substream

DEFAULT_FEEDBACK_DURATION_MS = 2000
DEFAULT_IDLE_TIMEOUT_S = 30 * 60


class ServiceError(Exception):
    """API error with a machine-readable code and an HTTP status."""

    def __init__(self, code: str, status: int, message: str) -> None:
        super().__init__(message)
        self.code = code
        self.status = status
        self.message = message


def wire_events(
    events: list[Event], feedback_duration_ms: int
) -> list[dict[str, Any]]:
    """Map engine events onto the client-visible schema.

    Internal events that would expose the expressed need, the offered
    object, or the reward are dropped.
    """
    out: list[dict[str, Any]] = []
    for ev in events:
        if ev.kind == "phase_changed":
            out.append({"type": "phase", "phase": ev.payload["phase"]})
        elif ev.kind == "babble":
            out.append({"type": "babble", "word": ev.payload["word"]})
        elif ev.kind == "feedback":
            out.append(
                {
                    "type": "feedback",
                    "valence": ev.payload["valence"],
                    "motion": ev.payload["motion"],
                    "sound": ev.payload["sound"],
                    "duration_ms": feedback_duration_ms,
                }
            )
        elif ev.kind == "trial_recorded":
            out.append({"type": "progress", "n": ev.payload["n"], "max": ev.payload["max"]})
        elif ev.kind == "terminated":
            out.append({"type": "terminated", "converged": ev.payload["converged"]})
    return out


@dataclass
class LiveSession:
    id: str
    session: Session
    created_at: float  # monotonic, for idle expiry
    created_at_unix: float
    last_activity: float
    events: list[dict[str, Any]] = field(default_factory=list)
    survey: Optional[SamRating] = None
    awaiting_since: Optional[float] = None
    subscribers: list[asyncio.Queue] = field(default_factory=list)
    archived_path: Optional[Path] = None

    def publish(self, wire: list[dict[str, Any]]) -> None:
        for payload in wire:
            seq = len(self.events) + 1
            entry = {"seq": seq, **payload}
            self.events.append(entry)
            for q in self.subscribers:
                q.put_nowait(entry)

    def episode_log(self) -> EpisodeLog:
        log = self.session.episode_log()
        log.survey = self.survey
        return log


class SessionService:
    def __init__(
        self,
        archive_dir: Optional[Path] = None,
        seed: int = 0,
        idle_timeout_s: float = DEFAULT_IDLE_TIMEOUT_S,
        feedback_duration_ms: int = DEFAULT_FEEDBACK_DURATION_MS,
    ) -> None:
        self.archive_dir = None if archive_dir is None else Path(archive_dir)
        self.idle_timeout_s = idle_timeout_s
        self.feedback_duration_ms = feedback_duration_ms
        self.sessions: dict[str, LiveSession] = {}
        assign_rng = substream(seed, "assign")
        order = [FeedbackCondition.DOT, FeedbackCondition.NON_DOT]
        self._next_auto = order[int(assign_rng.integers(2))]
        if self.archive_dir is not None:
            self.archive_dir.mkdir(parents=True, exist_ok=True)

    # -- helpers -----------------------------------------------------------

    def _auto_condition(self) -> FeedbackCondition:
        condition = self._next_auto
        self._next_auto = (
            FeedbackCondition.NON_DOT
            if condition is FeedbackCondition.DOT
            else FeedbackCondition.DOT
        )
        return condition

    def _get(self, session_id: str) -> LiveSession:
        live = self.sessions.get(session_id)
        if live is not None and self.idle_timeout_s is not None:
            if time.monotonic() - live.last_activity > self.idle_timeout_s:
                del self.sessions[session_id]
                live = None
        if live is None:
            raise ServiceError("UnknownSession", 404, f"no session {session_id!r}")
        return live

    def _drive(self, live: LiveSession) -> list[dict[str, Any]]:
        """Advance the robot until it waits for an object or terminates."""
        collected: list[dict[str, Any]] = []
        while live.session.phase not in (
            SessionPhase.AWAITING_OBJECT,
            SessionPhase.TERMINATED,
        ):
            wire = wire_events(live.session.advance(), self.feedback_duration_ms)
            live.publish(wire)
            collected.extend(wire)
        if live.session.phase is SessionPhase.AWAITING_OBJECT:
            live.awaiting_since = time.monotonic()
        elif live.session.phase is SessionPhase.TERMINATED:
            self._archive(live)
        return collected

    def _archive(self, live: LiveSession) -> None:
        if self.archive_dir is None:
            return
        log = live.episode_log()
        path = self.archive_dir / f"{live.id}.json"
        dump_episode(log, path)
        live.archived_path = path
        index = self.archive_dir / "index.jsonl"
        entry = {
            "id": live.id,
            "file": path.name,
            "created_at": live.created_at_unix,
            "condition": log.config.condition.value,
            "converged": log.converged,
            "trials": len(log.trials),
        }
        with index.open("a", encoding="utf-8") as f:
            f.write(json.dumps(entry) + "\n")

    # -- operations --------------------------------------------------------

    def create_session(self, body: dict[str, Any]) -> dict[str, Any]:
        condition_req = body.get("condition")
        if condition_req is None:
            condition = self._auto_condition()
        else:
            try:
                condition = FeedbackCondition(condition_req)
            except ValueError:
                raise ServiceError(
                    "InvalidConfig", 422, f"unknown condition {condition_req!r}"
                )
        overrides = dict(body.get("overrides") or {})
        overrides.pop("condition", None)
        overrides.setdefault("seed", int(time.time_ns() % 2**31))
        overrides["caregiver"] = None  # the human is the caregiver
        try:
            config = replace(
                SessionConfig.from_dict(overrides), condition=condition
            )
            session = Session(config, caregiver=None)
        except ConfigInvalid as exc:
            raise ServiceError("InvalidConfig", 422, str(exc))
        now = time.monotonic()
        live = LiveSession(
            id=uuid.uuid4().hex,
            session=session,
            created_at=now,
            created_at_unix=time.time(),
            last_activity=now,
        )
        self.sessions[live.id] = live
        self._drive(live)
        return self.session_view(live)

    def session_view(self, live: LiveSession) -> dict[str, Any]:
        session = live.session
        word = session.current_word
        view = {
            "id": live.id,
            "phase": session.phase.value,
            "word": None if word is None else word.text,
            "progress": {"n": session.n_trials, "max": session.config.max_iterations},
            "terminated": session.phase is SessionPhase.TERMINATED,
            "converged": session.converged if session.phase is SessionPhase.TERMINATED else None,
            "last_event": len(live.events),
            "survey": None
            if live.survey is None
            else {
                "valence": live.survey.valence,
                "arousal": live.survey.arousal,
                "dominance": live.survey.dominance,
                "likert_answers": [list(x) for x in live.survey.likert_answers],
            },
        }
        return view

    def submit_choice(self, session_id: str, body: dict[str, Any]) -> dict[str, Any]:
        live = self._get(session_id)
        live.last_activity = time.monotonic()
        name = body.get("object")
        try:
            obj: ObjectKind = object_from_name(str(name))
        except ValueError:
            raise ServiceError("InvalidConfig", 422, f"unknown object {name!r}")
        if live.session.phase is not SessionPhase.AWAITING_OBJECT:
            raise ServiceError(
                "WrongPhase",
                409,
                f"session is in phase {live.session.phase.value}, not awaiting an object",
            )
        latency_ms = None
        if live.awaiting_since is not None:
            latency_ms = int((time.monotonic() - live.awaiting_since) * 1000)
            live.awaiting_since = None
        wire = wire_events(
            live.session.advance(input=obj, latency_ms=latency_ms),
            self.feedback_duration_ms,
        )
        live.publish(wire)
        wire = wire + self._drive(live)
        return {"ok": True, "events": wire, "session": self.session_view(live)}

    def submit_survey(self, session_id: str, body: dict[str, Any]) -> dict[str, Any]:
        live = self._get(session_id)
        live.last_activity = time.monotonic()
        if live.session.phase is not SessionPhase.TERMINATED:
            raise ServiceError(
                "NotTerminated", 409, "survey accepted only after the session ends"
            )
        if live.survey is not None:
            raise ServiceError("DuplicateSurvey", 409, "survey already submitted")
        try:
            rating = SamRating(
                valence=body.get("valence"),
                arousal=body.get("arousal"),
                dominance=body.get("dominance"),
                likert_answers=tuple(
                    (str(q), a) for q, a in (body.get("likert_answers") or [])
                ),
            )
        except RangeViolation as exc:
            raise ServiceError("RangeViolation", 422, str(exc))
        except (TypeError, ValueError) as exc:
            raise ServiceError("RangeViolation", 422, f"malformed survey: {exc}")
        live.survey = rating
        if live.archived_path is not None:
            live.archived_path.write_text(
                dumps_episode(live.episode_log()), encoding="utf-8"
            )
        return {"ok": True, "session": self.session_view(live)}

    async def event_stream(self, session_id: str, last_event: int):
        live = self._get(session_id)
        queue: asyncio.Queue = asyncio.Queue()
        live.subscribers.append(queue)
        try:
            # replay history past the client's cursor, then go live
            history = list(live.events[last_event:])
            seen = last_event + len(history)
            for entry in history:
                yield _sse_frame(entry)
                if entry["type"] == "terminated":
                    return
            if live.session.phase is SessionPhase.TERMINATED:
                return
            while True:
                entry = await queue.get()
                if entry["seq"] <= seen:
                    continue
                seen = entry["seq"]
                yield _sse_frame(entry)
                if entry["type"] == "terminated":
                    return
        finally:
            live.subscribers.remove(queue)


def _sse_frame(entry: dict[str, Any]) -> str:
    payload = {k: v for k, v in entry.items() if k != "seq"}
    return f"id: {entry['seq']}\ndata: {json.dumps(payload)}\n\n"


def create_app(
    archive_dir: Optional[Path] = None,
    seed: int = 0,
    idle_timeout_s: float = DEFAULT_IDLE_TIMEOUT_S,
    feedback_duration_ms: int = DEFAULT_FEEDBACK_DURATION_MS,
    static_dir: Optional[Path] = None,
) -> FastAPI:
    app = FastAPI(title="babblebot session service")
    service = SessionService(
        archive_dir=archive_dir,
        seed=seed,
        idle_timeout_s=idle_timeout_s,
        feedback_duration_ms=feedback_duration_ms,
    )
    app.state.service = service

    @app.exception_handler(ServiceError)
    async def _service_error(_request: Request, exc: ServiceError) -> JSONResponse:
        return JSONResponse(
            status_code=exc.status,
            content={"error": {"code": exc.code, "message": exc.message}},
        )

    @app.post("/sessions")
    async def create_session(request: Request) -> JSONResponse:
        body = await _json_body(request)
        return JSONResponse(service.create_session(body))

    @app.get("/sessions/{session_id}")
    async def get_session(session_id: str) -> JSONResponse:
        return JSONResponse(service.session_view(service._get(session_id)))

    @app.post("/sessions/{session_id}/choice")
    async def submit_choice(session_id: str, request: Request) -> JSONResponse:
        body = await _json_body(request)
        return JSONResponse(service.submit_choice(session_id, body))

    @app.post("/sessions/{session_id}/survey")
    async def submit_survey(session_id: str, request: Request) -> JSONResponse:
        body = await _json_body(request)
        return JSONResponse(service.submit_survey(session_id, body))

    @app.get("/sessions/{session_id}/events")
    async def events(session_id: str, request: Request, last_event: int = 0) -> StreamingResponse:
        header = request.headers.get("last-event-id")
        if header is not None:
            try:
                last_event = max(last_event, int(header))
            except ValueError:
                pass
        service._get(session_id)  # fail fast with UnknownSession
        return StreamingResponse(
            service.event_stream(session_id, last_event),
            media_type="text/event-stream",
        )

    if static_dir is not None and Path(static_dir).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app


async def _json_body(request: Request) -> dict[str, Any]:
    raw = await request.body()
    if not raw:
        return {}
    try:
        body = json.loads(raw)
    except json.JSONDecodeError:
        raise ServiceError("InvalidConfig", 422, "request body is not valid JSON")
    if not isinstance(body, dict):
        raise ServiceError("InvalidConfig", 422, "request body must be a JSON object")
    return body
