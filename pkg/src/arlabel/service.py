"""Local HTTP/JSON facade for the study-runner UI.

Sessions live in process memory; layout responses are produced by the
same serializer as the library, so they are byte-identical to direct
calls.  Export the CSV before shutting the process down.
"""

from __future__ import annotations

import random
import threading
import time
import uuid
from dataclasses import dataclass, field

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, PlainTextResponse, Response
from pydantic import BaseModel

from .geometry import CanvasSpec, ViewState, is_in_view
from .harness import CSV_COLUMNS
from .placement import STRATEGIES, place, layout_to_json
from .tasks import (
    TASK_KINDS,
    TaskInstance,
    build_task,
    instance_to_dict,
    oracle_answer,
)
from .scene import GenerationFailure, SceneConfig, generate_scene, scene_to_dict


class ApiError(Exception):
    def __init__(self, status: int, message: str):
        super().__init__(message)
        self.status = status
        self.message = message


@dataclass
class Session:
    session_id: str
    condition: str
    instance: TaskInstance
    seed: int
    size: int
    created_at: float
    revealed: set[str] = field(default_factory=set)
    last_view: ViewState = field(default_factory=ViewState)
    answer: str | None = None
    correct: bool | None = None
    elapsed_s: float | None = None
    lock: threading.Lock = field(default_factory=threading.Lock)


class CreateSessionRequest(BaseModel):
    condition: str
    task: str
    size: int
    seed: int | None = None


class RevealRequest(BaseModel):
    object_id: int


class AnswerRequest(BaseModel):
    answer: str
    elapsed_s: float


def create_app(canvas: CanvasSpec | None = None) -> FastAPI:
    canvas = canvas or CanvasSpec()
    app = FastAPI(title="arlabel service")
    sessions: dict[str, Session] = {}
    registry_lock = threading.Lock()

    @app.exception_handler(ApiError)
    async def _api_error(request: Request, exc: ApiError):
        return JSONResponse(status_code=exc.status, content={"error": exc.message})

    @app.exception_handler(RequestValidationError)
    async def _validation_error(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"error": str(exc)})

    def get_session(session_id: str) -> Session:
        session = sessions.get(session_id)
        if session is None:
            raise ApiError(404, f"unknown session: {session_id}")
        return session

    @app.get("/healthz")
    async def healthz():
        return {"status": "ok"}

    @app.post("/session")
    async def create_session(req: CreateSessionRequest):
        if req.condition not in STRATEGIES:
            raise ApiError(400, f"unknown condition: {req.condition!r}")
        if req.task not in TASK_KINDS:
            raise ApiError(400, f"unknown task: {req.task!r}")
        if req.size not in (10, 20):
            raise ApiError(400, f"unsupported size: {req.size}")
        seed = req.seed if req.seed is not None else random.randrange(2**63)
        try:
            scene = generate_scene(SceneConfig(size=req.size), seed)
            instance = build_task(req.task, scene, seed)
        except GenerationFailure as exc:
            raise ApiError(500, f"scene generation failed: {exc}")
        session = Session(
            session_id=uuid.uuid4().hex,
            condition=req.condition,
            instance=instance,
            seed=seed,
            size=req.size,
            created_at=time.time(),
        )
        with registry_lock:
            sessions[session.session_id] = session
        return {
            "session_id": session.session_id,
            "condition": session.condition,
            "seed": seed,
            "scene": scene_to_dict(instance.scene),
            "task": instance_to_dict(instance, include_answer=False),
        }

    @app.get("/session/{session_id}/layout")
    async def get_layout(session_id: str, yaw: float, pitch: float = 0.0):
        session = get_session(session_id)
        with session.lock:
            view = ViewState(yaw_deg=yaw, pitch_deg=pitch)
            session.last_view = view
            highlights = session.instance.label_highlights(
                frozenset(session.revealed)
            )
        layout = place(
            session.condition, session.instance.scene, view, canvas, highlights
        )
        return Response(
            content=layout_to_json(layout), media_type="application/json"
        )

    @app.post("/session/{session_id}/reveal")
    async def reveal(session_id: str, req: RevealRequest):
        session = get_session(session_id)
        with session.lock:
            instance = session.instance
            if instance.kind != "summarize":
                raise ApiError(409, "reveal applies to summarize sessions only")
            seed_ids = {
                instance.target_ids[0]: "red",
                instance.target_ids[1]: "blue",
            }
            cluster = seed_ids.get(req.object_id)
            if cluster is None:
                raise ApiError(409, f"object {req.object_id} is not a seed")
            obj = instance.scene.by_id(req.object_id)
            if not is_in_view(obj.position, session.last_view, canvas):
                raise ApiError(409, f"object {req.object_id} is not in view")
            session.revealed.add(cluster)
            return {"reveal_state": sorted(session.revealed)}

    @app.post("/session/{session_id}/answer")
    async def submit_answer(session_id: str, req: AnswerRequest):
        session = get_session(session_id)
        with session.lock:
            if session.answer is not None:
                raise ApiError(409, "answer already submitted")
            session.answer = req.answer
            session.correct = req.answer == oracle_answer(session.instance).value
            session.elapsed_s = req.elapsed_s
            return {"correct": session.correct}

    @app.get("/session/{session_id}/export.csv")
    async def export_csv(session_id: str):
        session = get_session(session_id)
        with session.lock:
            lines = [",".join(CSV_COLUMNS)]
            if session.answer is not None:
                row = {c: "" for c in CSV_COLUMNS}
                row.update(
                    trial_id=session.session_id,
                    condition=session.condition,
                    task=session.instance.kind,
                    size=str(session.size),
                    seed=str(session.seed),
                    proxy_time_s=repr(session.elapsed_s),
                    answer=session.answer,
                    correct="true" if session.correct else "false",
                )
                lines.append(",".join(row[c] for c in CSV_COLUMNS))
        return PlainTextResponse(
            "\n".join(lines) + "\n", media_type="text/csv; charset=utf-8"
        )

    return app


app = create_app()
