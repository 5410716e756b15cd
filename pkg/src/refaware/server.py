"""REST bridge between stored analysis reports and the review UI.

All success bodies are canonical documents (sorted keys, LF). Errors
come back as {"error": {"code", "message", "field_path"}} with 400 for
validation problems and 404 for unknown keys.
"""

from __future__ import annotations

import json
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import Response
from fastapi.staticfiles import StaticFiles

from .errors import ReportNotFound, ValidationError
from .report import canonical_json
from .store import DocumentStore


def _doc_response(doc, status_code: int = 200) -> Response:
    return Response(content=canonical_json(doc),
                    media_type="application/json", status_code=status_code)


def _error_response(code: str, message: str, status_code: int,
                    field_path: str | None = None) -> Response:
    body = {"error": {"code": code, "message": message, "field_path": field_path}}
    return _doc_response(body, status_code)


async def _read_json(request: Request):
    try:
        return json.loads(await request.body())
    except (json.JSONDecodeError, UnicodeDecodeError):
        raise ValidationError("request body is not valid JSON", "$") from None


def create_app(store: DocumentStore, static_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="refactoring review service", docs_url=None, redoc_url=None)

    @app.exception_handler(ValidationError)
    async def _on_validation_error(request: Request, exc: ValidationError):
        return _error_response("VALIDATION_ERROR", str(exc), 400,
                               field_path=exc.field_path)

    @app.exception_handler(ReportNotFound)
    async def _on_not_found(request: Request, exc: ReportNotFound):
        return _error_response("NOT_FOUND", str(exc), 404)

    @app.get("/api/v1/reports")
    async def list_reports():
        keys = store.list_reports()
        return _doc_response({"reports": [
            {"repo_id": r, "change_set_id": c} for r, c in keys]})

    @app.put("/api/v1/reports/{repo_id}/{change_set_id}")
    async def put_report(repo_id: str, change_set_id: str, request: Request):
        doc = await _read_json(request)
        if not isinstance(doc, dict):
            raise ValidationError("report document must be a JSON object", "$")
        if doc.get("repo_id") != repo_id:
            raise ValidationError("repo_id in body does not match URL", "repo_id")
        if doc.get("change_set_id") != change_set_id:
            raise ValidationError("change_set_id in body does not match URL",
                                  "change_set_id")
        existed = store.has_report(repo_id, change_set_id)
        store.put_report(doc)
        return _doc_response({"repo_id": repo_id, "change_set_id": change_set_id,
                              "stored": True},
                             status_code=200 if existed else 201)

    @app.get("/api/v1/reports/{repo_id}/{change_set_id}")
    async def get_report(repo_id: str, change_set_id: str):
        return _doc_response(store.get_report(repo_id, change_set_id))

    @app.get("/api/v1/reports/{repo_id}/{change_set_id}/refactorings")
    async def get_refactorings(repo_id: str, change_set_id: str,
                               pair: str | None = None):
        doc = store.get_report(repo_id, change_set_id)
        entries = doc.get("pairs", [])
        if pair is not None:
            if ".." not in pair:
                raise ValidationError(
                    "pair must look like <before>..<after>", "pair")
            before, after = pair.split("..", 1)
            entries = [p for p in entries
                       if (before in (p["before"]["id"], p["before"]["short_label"])
                           and after in (p["after"]["id"], p["after"]["short_label"]))]
            if not entries:
                raise ReportNotFound(f"no pair {pair!r} in this report")
        refactorings = [r for p in entries for r in p.get("refactorings", [])]
        return _doc_response({"refactorings": refactorings})

    @app.post("/api/v1/events")
    async def post_events(request: Request):
        doc = await _read_json(request)
        if isinstance(doc, dict) and "events" in doc:
            events = doc["events"]
            if not isinstance(events, list):
                raise ValidationError("events must be an array", "events")
        elif isinstance(doc, dict):
            events = [doc]
        else:
            raise ValidationError("body must be an event or {\"events\": [...]}", "$")
        stored = store.append_events(events)
        return _doc_response({"stored": stored}, status_code=201)

    @app.get("/api/v1/events/{repo_id}/{change_set_id}")
    async def get_events(repo_id: str, change_set_id: str):
        return _doc_response({"events": store.list_events(repo_id, change_set_id)})

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="ui")

    return app
