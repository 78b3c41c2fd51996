"""FastAPI application over a loaded AppState."""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import FileResponse, JSONResponse
from pydantic import BaseModel

from ..kg import EntityKind, RelationKind, UnknownEntity, IMAGE_FILE_ATTR
from ..retrieval import EmptyCatalog
from ..storyboard import NoPath, generate_storyboard
from .cards import build_item_card
from .state import AppState

_MEDIA_TYPES = {
    ".pgm": "image/x-portable-graymap",
    ".ppm": "image/x-portable-pixmap",
}


class QueryBody(BaseModel):
    session_id: str | None = None
    text: str


class SelectBody(BaseModel):
    item_id: str


def _error(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=status,
                        content={"error": code, "message": message})


def create_app(state: AppState) -> FastAPI:
    app = FastAPI(title="live assistant", docs_url=None, redoc_url=None)

    @app.exception_handler(RequestValidationError)
    async def malformed(request: Request, exc: RequestValidationError):
        # contract: malformed input is 400, not the framework default 422
        return _error(400, "bad_request", str(exc.errors()[0].get("msg", exc)))

    @app.post("/api/query")
    def query(body: QueryBody):
        if not body.text.strip():
            return _error(400, "bad_request", "text must be non-empty")
        session = state.sessions.ensure(body.session_id)
        with state.sessions.lock_for(session.session_id):
            reply = state.engine.handle(body.text, session)
        return {
            "session_id": session.session_id,
            "intent": reply.intent.value,
            "payload": reply.payload,
        }

    @app.get("/api/items/{item_id}")
    def item_card(item_id: str):
        try:
            return build_item_card(state.kg, item_id)
        except UnknownEntity as exc:
            return _error(404, "not_found", str(exc))

    @app.post("/api/sessions/{session_id}/select")
    def select(session_id: str, body: SelectBody):
        try:
            session = state.sessions.require(session_id)
        except KeyError:
            return _error(404, "not_found", f"unknown session {session_id!r}")
        try:
            with state.sessions.lock_for(session_id):
                state.engine.select_item(session, body.item_id)
        except UnknownEntity as exc:
            return _error(404, "not_found", str(exc))
        return {"ok": True, "session_id": session_id, "current_item": body.item_id}

    @app.get("/api/items/{item_id}/storyboard")
    def storyboard(item_id: str):
        try:
            entity = state.kg.entity(item_id)
            if entity.kind is not EntityKind.ITEM:
                raise UnknownEntity(f"{item_id!r} is not an item")
            return generate_storyboard(state.kg, item_id).as_dict()
        except UnknownEntity as exc:
            return _error(404, "not_found", str(exc))
        except NoPath as exc:
            return _error(404, "no_path", str(exc))

    @app.get("/api/search")
    def search(q: str, k: int = 10):
        if not q.strip():
            return _error(400, "bad_request", "q must be non-empty")
        if k < 1:
            return _error(400, "bad_request", f"k must be >= 1, got {k}")
        try:
            ranked = state.engine.search(q, k)
        except EmptyCatalog:
            ranked = []
        return {
            "items": [
                {"id": item_id, "label": state.kg.entity(item_id).label,
                 "score": score}
                for item_id, score in ranked
            ]
        }

    @app.get("/api/images/{image_id}")
    def image(image_id: str):
        try:
            entity = state.kg.entity(image_id)
        except UnknownEntity as exc:
            return _error(404, "not_found", str(exc))
        if entity.kind is not EntityKind.IMAGE:
            return _error(404, "not_found", f"{image_id!r} is not an image")
        file_name = entity.attributes.get(IMAGE_FILE_ATTR)
        path = Path(state.images_dir) / file_name
        if not path.is_file():
            return _error(404, "not_found", f"raster file missing for {image_id!r}")
        media_type = _MEDIA_TYPES.get(path.suffix, "application/octet-stream")
        return FileResponse(path, media_type=media_type)

    return app
