"""HTTP service backing the annotation console.

Reads are served from an in-memory store derived from the candidates file
plus the decision ledger; every write goes through one serialized appender
that enforces optimistic concurrency via the ledger revision the client
echoes back. A rejected write leaves the ledger byte-identical.
"""

from __future__ import annotations

import json
import os
import threading
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .discovery import read_candidate_records
from .validation import (
    CandidateState,
    Decision,
    LedgerError,
    NoDecisions,
    ValidationStore,
    append_decision,
    consolidate,
    pipeline_summary,
    precision,
    read_ledger,
)
from .workspace import Workspace

API_TOKEN_ENV_VAR = "RESAUDIT_API_TOKEN"
CONSOLE_DIST_ENV_VAR = "RESAUDIT_CONSOLE_DIST"


def _error(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"code": code, "message": message})


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


class ReviewService:
    """Shared state: candidate records, the validation store, the appender lock."""

    def __init__(self, workspace: Workspace):
        self.workspace = workspace
        self.records: dict[str, dict] = {
            record["mention_id"]: record
            for record in read_candidate_records(workspace.candidates_path)
        }
        self.store = ValidationStore.from_records(self.records.values())
        for decision in read_ledger(workspace.ledger_path):
            self.store.apply(decision)
        self.write_lock = threading.Lock()
        self.accessibility_log = workspace.ledger_dir / "accessibility.log"

    # -- queue -------------------------------------------------------------

    def _confidence(self, mention_id: str) -> float:
        candidate = self.store.candidates[mention_id]
        if candidate.confidence is not None:
            return candidate.confidence
        return 1.0 if candidate.is_dataset_verdict else 0.0

    def pending_queue(self) -> list[str]:
        pending = [
            mention_id
            for mention_id, state in self.store.states.items()
            if state is CandidateState.PENDING
        ]
        pending.sort(
            key=lambda mid: (
                self.store.candidates[mid].language,
                -self._confidence(mid),
                mid,
            )
        )
        return pending

    def candidate_payload(self, mention_id: str) -> dict:
        record = dict(self.records[mention_id])
        record["state"] = self.store.state_of(mention_id).value
        dataset_id = self.store.dataset_of_anchor(mention_id)
        if dataset_id is not None and self.store.state_of(mention_id) is CandidateState.CONFIRMED:
            record["dataset_id"] = dataset_id
        return record

    # -- writes ---------------------------------------------------------------

    def submit_decision(
        self,
        mention_id: str,
        state: CandidateState,
        revision: int,
        annotator_id: str,
        note: str,
        reason: str | None = None,
        merge_target: str | None = None,
        canonical_name: str | None = None,
    ) -> Decision:
        with self.write_lock:
            if revision != self.store.revision:
                raise StaleRevision(self.store.revision)
            decision = Decision(
                sequence=self.store.revision + 1,
                mention_id=mention_id,
                new_state=state,
                annotator_id=annotator_id,
                timestamp=_now(),
                note=note,
                reason=reason,
                merge_target=merge_target,
                canonical_name=canonical_name,
            )
            self.store.apply(decision)  # validates before anything touches disk
            append_decision(self.workspace.ledger_path, decision)
            return decision

    def submit_merges(
        self,
        target_dataset_id: str,
        source_mention_ids: list[str],
        revision: int,
        annotator_id: str,
        note: str,
    ) -> list[Decision]:
        with self.write_lock:
            if revision != self.store.revision:
                raise StaleRevision(self.store.revision)
            if target_dataset_id not in self.store.registered:
                raise LedgerError(f"unknown dataset {target_dataset_id}")
            decisions = []
            for offset, mention_id in enumerate(source_mention_ids):
                decision = Decision(
                    sequence=self.store.revision + 1,
                    mention_id=mention_id,
                    new_state=CandidateState.MERGED,
                    annotator_id=annotator_id,
                    timestamp=_now(),
                    note=note,
                    merge_target=target_dataset_id,
                )
                self.store.apply(decision)
                append_decision(self.workspace.ledger_path, decision)
                decisions.append(decision)
            return decisions

    def record_accessibility(self, dataset_id: str, payload: dict) -> dict:
        event = {
            "dataset_id": dataset_id,
            "status": payload["status"],
            "confirmation": payload.get("confirmation"),
            "note": payload.get("note", ""),
            "annotator_id": payload.get("annotator_id", "console"),
            "timestamp": _now(),
        }
        with self.write_lock:
            self.accessibility_log.parent.mkdir(parents=True, exist_ok=True)
            with self.accessibility_log.open("a", encoding="utf-8") as handle:
                handle.write(json.dumps(event, sort_keys=True) + "\n")
                handle.flush()
                os.fsync(handle.fileno())
        return event

    def accessibility_events(self) -> dict[str, dict]:
        events: dict[str, dict] = {}
        if self.accessibility_log.exists():
            for line in self.accessibility_log.read_text(encoding="utf-8").splitlines():
                if line.strip():
                    event = json.loads(line)
                    events[event["dataset_id"]] = event
        return events

    def probe_evidence(self) -> dict[str, list[dict]]:
        """Probe records from the last link audit, grouped by dataset."""
        evidence: dict[str, list[dict]] = {}
        path = self.workspace.report("probes.jsonl")
        if path.exists():
            for line in path.read_text(encoding="utf-8").splitlines():
                if line.strip():
                    record = json.loads(line)
                    evidence.setdefault(record["dataset_id"], []).append(record)
        return evidence


class StaleRevision(Exception):
    def __init__(self, current: int):
        super().__init__(f"revision mismatch, current is {current}")
        self.current = current


def create_app(workspace: Workspace, console_dist: str | Path | None = None) -> FastAPI:
    service = ReviewService(workspace)
    app = FastAPI(title="resaudit review", version="0.1.0")
    app.state.service = service
    token = os.environ.get(API_TOKEN_ENV_VAR)

    @app.middleware("http")
    async def check_token(request: Request, call_next):
        if token and request.url.path.startswith("/api/"):
            supplied = request.headers.get("Authorization", "")
            if supplied != f"Bearer {token}":
                return _error(401, "unauthorized", "missing or invalid bearer token")
        return await call_next(request)

    @app.get("/api/queue/next")
    def queue_next() -> JSONResponse:
        queue = service.pending_queue()
        payload: dict[str, Any] = {
            "remaining": len(queue),
            "revision": service.store.revision,
            "candidate": service.candidate_payload(queue[0]) if queue else None,
        }
        return JSONResponse(payload)

    @app.get("/api/candidates/{mention_id}")
    def get_candidate(mention_id: str) -> JSONResponse:
        if mention_id not in service.records:
            return _error(404, "unknown_mention", f"no candidate {mention_id}")
        return JSONResponse(
            {"candidate": service.candidate_payload(mention_id), "revision": service.store.revision}
        )

    @app.post("/api/candidates/{mention_id}/decision")
    async def post_decision(mention_id: str, request: Request) -> JSONResponse:
        body = await request.json()
        try:
            state = CandidateState(body["state"])
        except (KeyError, ValueError):
            return _error(422, "bad_state", "state must be a candidate state name")
        if "revision" not in body:
            return _error(422, "missing_revision", "revision is required")
        try:
            decision = service.submit_decision(
                mention_id=mention_id,
                state=state,
                revision=int(body["revision"]),
                annotator_id=body.get("annotator_id", "console"),
                note=body.get("note", ""),
                reason=body.get("reason"),
                merge_target=body.get("merge_target"),
                canonical_name=body.get("canonical_name"),
            )
        except StaleRevision as exc:
            return _error(409, "conflict", str(exc))
        except LedgerError as exc:
            return _error(422, "rejected", str(exc))
        return JSONResponse(
            {"applied": decision.to_record(), "revision": service.store.revision}
        )

    @app.post("/api/datasets/{dataset_id}/merge")
    async def post_merge(dataset_id: str, request: Request) -> JSONResponse:
        body = await request.json()
        sources = body.get("source_mention_ids") or []
        if not isinstance(sources, list) or not sources:
            return _error(422, "bad_sources", "source_mention_ids must be a nonempty list")
        if "revision" not in body:
            return _error(422, "missing_revision", "revision is required")
        try:
            decisions = service.submit_merges(
                target_dataset_id=dataset_id,
                source_mention_ids=[str(s) for s in sources],
                revision=int(body["revision"]),
                annotator_id=body.get("annotator_id", "console"),
                note=body.get("note", ""),
            )
        except StaleRevision as exc:
            return _error(409, "conflict", str(exc))
        except LedgerError as exc:
            return _error(422, "rejected", str(exc))
        return JSONResponse(
            {
                "applied": [decision.to_record() for decision in decisions],
                "revision": service.store.revision,
            }
        )

    @app.post("/api/datasets/{dataset_id}/accessibility")
    async def post_accessibility(dataset_id: str, request: Request) -> JSONResponse:
        body = await request.json()
        if body.get("status") not in ("OPEN", "NOT_OPEN"):
            return _error(422, "bad_status", "status must be OPEN or NOT_OPEN")
        event = service.record_accessibility(dataset_id, body)
        return JSONResponse({"recorded": event, "revision": service.store.revision})

    @app.get("/api/stats")
    def stats() -> JSONResponse:
        summary = pipeline_summary(service.store).as_dict()
        try:
            summary["precision_pct"] = float(precision(service.store))
        except NoDecisions:
            summary["precision_pct"] = None
        summary["revision"] = service.store.revision
        return JSONResponse(summary)

    @app.get("/api/datasets")
    def datasets(language: str | None = None) -> JSONResponse:
        records = consolidate(service.store)
        confirmations = service.accessibility_events()
        probes = service.probe_evidence()
        rows = []
        for record in records:
            if language and language not in record.languages:
                continue
            rows.append(
                {
                    "dataset_id": record.dataset_id,
                    "canonical_name": record.canonical_name,
                    "languages": sorted(record.languages),
                    "member_mention_ids": sorted(record.member_mention_ids),
                    "accessibility": confirmations.get(record.dataset_id),
                    "probes": probes.get(record.dataset_id, []),
                }
            )
        return JSONResponse({"datasets": rows, "revision": service.store.revision})

    dist = console_dist or os.environ.get(CONSOLE_DIST_ENV_VAR)
    if dist and Path(dist).is_dir():
        app.mount("/", StaticFiles(directory=str(dist), html=True), name="console")
    else:

        @app.get("/")
        def index() -> JSONResponse:
            return JSONResponse(
                {
                    "service": "resaudit review",
                    "endpoints": [
                        "/api/queue/next",
                        "/api/candidates/{id}",
                        "/api/candidates/{id}/decision",
                        "/api/datasets/{id}/merge",
                        "/api/datasets/{id}/accessibility",
                        "/api/stats",
                        "/api/datasets",
                    ],
                }
            )

    return app
