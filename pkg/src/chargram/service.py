"""JSON-over-HTTP facade over a loaded artifact set.

All endpoints return an envelope with exactly one of ``data`` or ``error``:

    {"status": "ok", "data": ...}
    {"status": "error", "error": {"code": ..., "message": ...}}

Artifacts are loaded once at startup and served read-only; the usage log is
the only mutable state. Routes live under ``/api/v1`` and a built web UI,
when present, is served from ``/``.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from starlette.exceptions import HTTPException as StarletteHTTPException

from .artifacts import Artifacts, load_artifacts
from .errors import InvalidArgumentError, NotFoundError


def ok(data) -> JSONResponse:
    return JSONResponse({"status": "ok", "data": data})


def error(code: str, message: str, status: int) -> JSONResponse:
    return JSONResponse(
        {"status": "error", "error": {"code": code, "message": message}}, status_code=status
    )


def create_app(artifacts: Artifacts | str | Path, ui_dir: str | Path | None = None) -> FastAPI:
    if not isinstance(artifacts, Artifacts):
        artifacts = load_artifacts(artifacts)
    app = FastAPI(title="chargram", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    app.state.artifacts = artifacts

    @app.exception_handler(NotFoundError)
    async def _not_found(request: Request, exc: NotFoundError):
        return error("not_found", str(exc), 404)

    @app.exception_handler(InvalidArgumentError)
    async def _bad_request(request: Request, exc: InvalidArgumentError):
        return error("invalid_argument", str(exc), 400)

    @app.exception_handler(RequestValidationError)
    async def _validation(request: Request, exc: RequestValidationError):
        first = exc.errors()[0] if exc.errors() else {}
        field = ".".join(str(part) for part in first.get("loc", ()) if part not in ("query", "body"))
        return error("invalid_argument", f"invalid parameter {field or 'request'}", 400)

    @app.exception_handler(StarletteHTTPException)
    async def _http_error(request: Request, exc: StarletteHTTPException):
        if exc.status_code == 404:
            return error("not_found", "unknown route", 404)
        return error("http_error", str(exc.detail), exc.status_code)

    @app.exception_handler(Exception)
    async def _internal(request: Request, exc: Exception):
        return error("internal", "internal server error", 500)

    api = app  # routes registered under both /api/v1 and the /api alias

    def route(path: str, method: str = "GET"):
        def wrap(fn):
            for prefix in ("/api/v1", "/api"):
                api.add_api_route(prefix + path, fn, methods=[method])
            return fn

        return wrap

    @route("/browse")
    async def browse(path: str = ""):
        prefix = [p for p in path.split("/") if p]
        entries = artifacts.corpus.browse(prefix)
        return ok(
            {
                "path": prefix,
                "entries": [
                    {"label": e.label, "kind": e.kind, **({"doc_id": e.value} if e.kind == "document" else {"doc_count": e.value})}
                    for e in entries
                ],
            }
        )

    @route("/search")
    async def search(q: str, limit: int = 10, min_match_len: int = 3):
        results = artifacts.search(q, limit=limit, min_match_len=min_match_len)
        return ok(
            {
                "query": q,
                "results": [
                    {
                        "doc_id": r.doc_id,
                        "title": r.title,
                        "exact": r.exact,
                        "matched_len": r.matched_len,
                        "log_score": r.log_score,
                        "snippets": [
                            {
                                "text": s.text,
                                "start": s.start,
                                "highlight_spans": [list(span) for span in s.highlight_spans],
                                "score": s.score,
                            }
                            for s in r.snippets
                        ],
                    }
                    for r in results
                ],
            }
        )

    @route("/doc/{doc_id}")
    async def document(doc_id: str):
        doc = artifacts.corpus.get_document(doc_id)
        return ok(
            {
                "doc_id": doc.doc_id,
                "path": list(doc.path),
                "title": doc.title,
                "text": doc.text,
                "metadata": doc.metadata,
                "entities": [
                    {
                        "entity": e.entity,
                        "type": e.entity_type,
                        "positions": e.positions,
                        "length": len(e.entity),
                    }
                    for e in artifacts.entities_for(doc_id)
                ],
            }
        )

    @route("/related_queries")
    async def related_queries(q: str, limit: int = 10):
        related = artifacts.related_queries(q, limit=limit)
        return ok(
            {
                "query": q,
                "related": [
                    {"text": r.text, "edit_op": r.edit_op, "log_prob": r.log_prob} for r in related
                ],
            }
        )

    @route("/related_docs/{doc_id}")
    async def related_docs(doc_id: str, limit: int = 20):
        ranked = artifacts.related_documents(doc_id, limit=limit)
        return ok(
            {
                "doc_id": doc_id,
                "related": [
                    {
                        "doc_id": other,
                        "similarity": sim,
                        "title": artifacts.corpus.get_document(other).title,
                    }
                    for other, sim in ranked
                ],
            }
        )

    @route("/compare")
    async def compare(a: str, b: str, min_len: int = 3, delta: float = 0.2):
        sequences = artifacts.compare(a, b, delta=delta, min_len=min_len)
        return ok(
            {
                "a": a,
                "b": b,
                "sequences": [
                    {
                        "a_start": s.a_start,
                        "a_len": s.a_len,
                        "b_start": s.b_start,
                        "b_len": s.b_len,
                        "edit_distance": s.edit_distance,
                        "seed": s.seed,
                    }
                    for s in sequences
                ],
            }
        )

    @route("/community/top")
    async def community_top(kind: str, scope: str, user: str | None = None):
        items = artifacts.top_items(kind, scope, user_id=user)
        return ok(
            {
                "kind": kind,
                "scope": scope,
                "items": [
                    {"key": i.key, "score": i.score, "raw_count": i.raw_count, "recency": i.recency}
                    for i in items
                ],
            }
        )

    @route("/log", method="POST")
    async def log(payload: dict):
        try:
            user = payload["user"]
            kind = payload["kind"]
            key = payload["key"]
        except KeyError as exc:
            raise InvalidArgumentError(f"missing field {exc.args[0]}") from None
        ts = payload.get("ts")
        timestamp = None
        if ts is not None:
            from datetime import datetime

            try:
                timestamp = datetime.fromisoformat(ts)
            except ValueError:
                raise InvalidArgumentError("invalid field ts") from None
        artifacts.log_event(user, kind, key, timestamp)
        return ok({"logged": True})

    @route("/stats")
    async def stats():
        return ok(artifacts.stats())

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")
    else:

        @app.get("/")
        async def root():
            return ok({"service": "chargram", "api": "/api/v1"})

    return app
