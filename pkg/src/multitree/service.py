"""HTTP+JSON API around interactive tree-building sessions.

Endpoints (all JSON):

* ``POST /sessions`` — body ``{schema_text, data_text, gain_ratio?}``;
  returns ``{session_id, complete}``.
* ``GET /sessions/{id}/frontier`` — ranked tests for the frontier head.
* ``POST /sessions/{id}/choose`` — body ``{index}`` or ``{test}``.
* ``POST /sessions/{id}/autocomplete`` — finish with default choices.
* ``POST /sessions/{id}/prune`` — body ``{method, z?, correction?}``.
* ``GET /sessions/{id}/tree`` — current (partial or complete) tree.
* ``GET /sessions/{id}/shelf`` — summaries of shelved trees.
* ``POST /sessions/{id}/shelf/eval`` — body ``{schema_text, data_text, method?}``.

Tree payloads reuse the tree-file JSON structure.  Requests against one
session are serialized; sessions are isolated from each other.
"""

from __future__ import annotations

import threading
from dataclasses import asdict

from fastapi import FastAPI, HTTPException
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from . import session as sessions
from .dataset import parse_dataset, parse_schema
from .ensemble import CLASS_PROBABILITY, VOTING, signature
from .errors import (
    DataError,
    EmptyShelfError,
    InvalidChoiceError,
    TreeCompleteError,
)
from .induction import Tree, tree_to_json
from .pruning import Pessimistic, ReducedError, prune


class CreateSessionRequest(BaseModel):
    schema_text: str
    data_text: str
    gain_ratio: float = 0.85


class ChooseRequest(BaseModel):
    index: int | None = None
    test: dict | None = None


class PruneRequest(BaseModel):
    method: str = "pessimistic"
    z: float = 1.0
    correction: float = 0.5
    holdout_schema_text: str | None = None
    holdout_data_text: str | None = None


class ShelfEvalRequest(BaseModel):
    schema_text: str
    data_text: str
    method: str = VOTING


def _parse(schema_text: str, data_text: str):
    try:
        schema = parse_schema(schema_text)
        return parse_dataset(data_text, schema)
    except DataError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc


def _partial_tree_payload(session: sessions.Session) -> dict:
    tree = session.tree or Tree(session.train.schema, session.root)
    payload = tree_to_json(tree)
    payload["complete"] = session.complete
    return payload


def create_app() -> FastAPI:
    app = FastAPI(title="multitree session service")
    store: dict[str, sessions.Session] = {}
    locks: dict[str, threading.Lock] = {}
    store_lock = threading.Lock()

    def get_session(session_id: str) -> sessions.Session:
        session = store.get(session_id)
        if session is None:
            raise HTTPException(status_code=404, detail=f"no session {session_id}")
        return session

    @app.post("/sessions")
    def create(req: CreateSessionRequest):
        train = _parse(req.schema_text, req.data_text)
        session = sessions.create_session(train, req.gain_ratio)
        with store_lock:
            store[session.session_id] = session
            locks[session.session_id] = threading.Lock()
        return {"session_id": session.session_id, "complete": session.complete}

    @app.get("/sessions/{session_id}/frontier")
    def frontier(session_id: str):
        session = get_session(session_id)
        with locks[session_id]:
            try:
                return sessions.frontier_view(session)
            except TreeCompleteError as exc:
                raise HTTPException(status_code=409, detail=str(exc)) from exc

    @app.post("/sessions/{session_id}/choose")
    def choose(session_id: str, req: ChooseRequest):
        session = get_session(session_id)
        with locks[session_id]:
            selection = req.test if req.test is not None else req.index
            if selection is None:
                raise HTTPException(status_code=400, detail="index or test required")
            try:
                sessions.choose(session, selection)
            except InvalidChoiceError as exc:
                raise HTTPException(status_code=400, detail=str(exc)) from exc
            except TreeCompleteError as exc:
                raise HTTPException(status_code=409, detail=str(exc)) from exc
            result = {"complete": session.complete}
            if not session.complete:
                result["frontier"] = sessions.frontier_view(session)
            return result

    @app.post("/sessions/{session_id}/autocomplete")
    def autocomplete(session_id: str):
        session = get_session(session_id)
        with locks[session_id]:
            tree = sessions.autocomplete(session)
            return {
                "tree": tree_to_json(tree),
                "shelf_size": len(session.shelf),
            }

    @app.post("/sessions/{session_id}/prune")
    def prune_tree(session_id: str, req: PruneRequest):
        session = get_session(session_id)
        with locks[session_id]:
            if session.tree is None:
                raise HTTPException(status_code=409, detail="tree is not complete")
            if req.method == "pessimistic":
                method = Pessimistic(z=req.z, correction=req.correction)
            elif req.method == "reduced-error":
                if not (req.holdout_schema_text and req.holdout_data_text):
                    raise HTTPException(
                        status_code=400, detail="reduced-error needs holdout data"
                    )
                method = ReducedError(
                    _parse(req.holdout_schema_text, req.holdout_data_text)
                )
            else:
                raise HTTPException(
                    status_code=400, detail=f"unknown method {req.method!r}"
                )
            pruned = sessions.shelve_pruned(session, prune(session.tree, method))
            return {"tree": tree_to_json(pruned)}

    @app.get("/sessions/{session_id}/tree")
    def tree(session_id: str):
        session = get_session(session_id)
        with locks[session_id]:
            return _partial_tree_payload(session)

    @app.get("/sessions/{session_id}/shelf")
    def shelf(session_id: str):
        session = get_session(session_id)
        with locks[session_id]:
            out = []
            for i, t in enumerate(session.shelf):
                sig = signature(t)
                out.append(
                    {
                        "index": i,
                        "size": t.size,
                        "pruned": t.pruning is not None,
                        "root_test": list(sig.root_test) if sig.root_test else None,
                    }
                )
            return {"trees": out}

    @app.post("/sessions/{session_id}/shelf/eval")
    def shelf_eval(session_id: str, req: ShelfEvalRequest):
        session = get_session(session_id)
        with locks[session_id]:
            if req.method not in (VOTING, CLASS_PROBABILITY):
                raise HTTPException(
                    status_code=400, detail=f"unknown method {req.method!r}"
                )
            test = _parse(req.schema_text, req.data_text)
            try:
                reports, combined, warnings = sessions.shelf_eval(
                    session, test, req.method
                )
            except EmptyShelfError as exc:
                raise HTTPException(status_code=409, detail=str(exc)) from exc
            return {
                "reports": [asdict(r) for r in reports],
                "combined": asdict(combined),
                "warnings": warnings,
            }

    return app


def mount_static(app: FastAPI, directory: str):
    """Serve built web-UI assets at the root path."""
    app.mount("/", StaticFiles(directory=directory, html=True), name="ui")
