"""HTTP facade over the engine for the what-if UI and scripts.

Sessions hold a scenario plus named alternatives in memory; every endpoint
answers with the same JSON trees the CLI's machine mode emits. The reserved
session id ``demo`` always resolves to a fresh copy of the bundled demo. Long
optimize/risk runs can be pushed to a background job and polled.
"""

from __future__ import annotations

import json
import threading
import uuid
from concurrent.futures import ThreadPoolExecutor
from contextlib import asynccontextmanager
from dataclasses import dataclass, field

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from . import demo
from .catalog import builtin_factor_catalog
from .evaluator import compare, evaluate
from .fileio import (
    ScenarioParseError,
    comparison_to_tree,
    distribution_to_tree,
    document_from_tree,
    evaluation_to_tree,
    scenario_to_tree,
    search_result_to_tree,
)
from .impact import DETERMINISTIC, EvaluationError, sampled
from .model import Assignment, AssignmentError, GqmGoal, Scenario, check_assignment
from .optimizer import CapExceededError, SearchConfig, brute_force, hill_climb
from .risk import monte_carlo

DEMO_SESSION_ID = "demo"


@dataclass
class Session:
    scenario: Scenario
    alternatives: dict[str, Assignment] = field(default_factory=dict)


class SessionStore:
    """In-memory sessions with atomic read/replace per session."""

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._sessions: dict[str, Session] = {}

    def create(self, session: Session) -> str:
        session_id = uuid.uuid4().hex
        with self._lock:
            self._sessions[session_id] = session
        return session_id

    def get(self, session_id: str) -> Session | None:
        with self._lock:
            existing = self._sessions.get(session_id)
            if existing is None and session_id == DEMO_SESSION_ID:
                existing = Session(demo.demo_scenario(), demo.demo_alternatives())
                self._sessions[session_id] = existing
            return existing

    def replace(self, session_id: str, session: Session) -> bool:
        with self._lock:
            if session_id not in self._sessions and session_id != DEMO_SESSION_ID:
                return False
            self._sessions[session_id] = session
            return True

    def items(self) -> list[tuple[str, Session]]:
        with self._lock:
            return list(self._sessions.items())


@dataclass
class Job:
    state: str = "pending"  # pending | running | done | failed
    result: dict | None = None
    error: str | None = None


class JobStore:
    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._jobs: dict[str, Job] = {}
        self._executor = ThreadPoolExecutor(max_workers=2)

    def submit(self, fn) -> str:
        job_id = uuid.uuid4().hex
        job = Job()
        with self._lock:
            self._jobs[job_id] = job

        def run() -> None:
            job.state = "running"
            try:
                job.result = fn()
                job.state = "done"
            except Exception as exc:  # surfaced via polling, not logs
                job.error = str(exc)
                job.state = "failed"

        self._executor.submit(run)
        return job_id

    def get(self, job_id: str) -> Job | None:
        with self._lock:
            return self._jobs.get(job_id)


def _error(status: int, code: str, message: str, violations=None) -> JSONResponse:
    body: dict = {"error": code, "message": message}
    if violations is not None:
        body["violations"] = [
            {"code": v.code, "message": v.message, "path": v.path} for v in violations
        ]
    return JSONResponse(body, status_code=status)


def _mode_of(payload: dict):
    if payload.get("mode") == "sampled":
        return sampled(int(payload.get("seed", 0)))
    return DETERMINISTIC


def create_app(store: SessionStore | None = None, snapshot_path: str | None = None) -> FastAPI:
    sessions = store if store is not None else SessionStore()
    jobs = JobStore()

    @asynccontextmanager
    async def lifespan(_app: FastAPI):
        yield
        if snapshot_path is not None:
            trees = {
                sid: scenario_to_tree(sess.scenario, sess.alternatives)
                for sid, sess in sessions.items()
            }
            with open(snapshot_path, "w", encoding="utf-8") as handle:
                json.dump(trees, handle, indent=2)

    app = FastAPI(title="gsdalloc", version="0.1.0", lifespan=lifespan)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    async def read_json(request: Request) -> dict | None:
        body = await request.body()
        if not body:
            return {}
        try:
            parsed = json.loads(body)
        except ValueError:
            return None
        return parsed if isinstance(parsed, dict) else None

    def session_or_none(session_id: str) -> Session | None:
        return sessions.get(session_id)

    def pick_assignment(session: Session, payload: dict) -> Assignment:
        if "assignment" in payload:
            mapping = payload["assignment"]
            if not isinstance(mapping, dict) or not all(
                isinstance(k, str) and isinstance(v, str) for k, v in mapping.items()
            ):
                raise AssignmentError("assignment must map task ids to site ids")
            assignment = Assignment(dict(mapping))
            check_assignment(session.scenario, assignment)
            return assignment
        label = payload.get("alt")
        if isinstance(label, str):
            if label not in session.alternatives:
                raise KeyError(label)
            return session.alternatives[label]
        raise AssignmentError("payload needs 'assignment' or 'alt'")

    @app.post("/sessions")
    async def create_session(request: Request):
        payload = await read_json(request)
        if payload is None:
            return _error(422, "bad_payload", "request body must be a JSON object")
        if payload.get("demo"):
            session = Session(demo.demo_scenario(), demo.demo_alternatives())
        else:
            try:
                document = document_from_tree(payload)
            except ScenarioParseError as exc:
                return _error(422, "invalid_scenario", str(exc), exc.violations)
            session = Session(document.scenario, document.alternatives)
        session_id = sessions.create(session)
        return {"session_id": session_id}

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        session = session_or_none(session_id)
        if session is None:
            return _error(404, "unknown_session", f"no session {session_id!r}")
        return scenario_to_tree(session.scenario, session.alternatives)

    @app.put("/sessions/{session_id}/scenario")
    async def replace_scenario(session_id: str, request: Request):
        if session_or_none(session_id) is None:
            return _error(404, "unknown_session", f"no session {session_id!r}")
        payload = await read_json(request)
        if payload is None:
            return _error(422, "bad_payload", "request body must be a JSON object")
        try:
            document = document_from_tree(payload)
        except ScenarioParseError as exc:
            return _error(422, "invalid_scenario", str(exc), exc.violations)
        sessions.replace(session_id, Session(document.scenario, document.alternatives))
        return {"session_id": session_id}

    @app.get("/factors")
    def factors():
        return {
            "factors": [
                {"id": f.id, "name": f.name, "category": f.category, "levels": list(f.levels)}
                for f in builtin_factor_catalog()
            ]
        }

    @app.post("/sessions/{session_id}/evaluate")
    async def evaluate_endpoint(session_id: str, request: Request):
        session = session_or_none(session_id)
        if session is None:
            return _error(404, "unknown_session", f"no session {session_id!r}")
        payload = await read_json(request)
        if payload is None:
            return _error(422, "bad_payload", "request body must be a JSON object")
        try:
            assignment = pick_assignment(session, payload)
        except KeyError as exc:
            return _error(404, "unknown_alternative", f"no stored alternative {exc.args[0]!r}")
        except AssignmentError as exc:
            return _error(422, "invalid_assignment", str(exc))
        try:
            result = evaluate(session.scenario, assignment, _mode_of(payload))
        except (AssignmentError, EvaluationError) as exc:
            return _error(422, "evaluation_failed", str(exc))
        return evaluation_to_tree(result)

    @app.post("/sessions/{session_id}/compare")
    async def compare_endpoint(session_id: str, request: Request):
        session = session_or_none(session_id)
        if session is None:
            return _error(404, "unknown_session", f"no session {session_id!r}")
        payload = await read_json(request)
        if payload is None:
            return _error(422, "bad_payload", "request body must be a JSON object")
        pairs: list[tuple[str, Assignment]] = []
        labels = payload.get("labels")
        if labels is not None:
            if not isinstance(labels, list) or not all(isinstance(l, str) for l in labels):
                return _error(422, "bad_payload", "'labels' must be a list of strings")
            for label in labels:
                if label not in session.alternatives:
                    return _error(404, "unknown_alternative", f"no stored alternative {label!r}")
                pairs.append((label, session.alternatives[label]))
        inline = payload.get("alternatives", {})
        if not isinstance(inline, dict):
            return _error(422, "bad_payload", "'alternatives' must map labels to assignments")
        for label, mapping in inline.items():
            if not isinstance(mapping, dict):
                return _error(422, "bad_payload", f"alternative {label!r} must be an object")
            assignment = Assignment({str(k): str(v) for k, v in mapping.items()})
            try:
                check_assignment(session.scenario, assignment)
            except AssignmentError as exc:
                return _error(422, "invalid_assignment", f"{label}: {exc}")
            pairs.append((label, assignment))
        if not pairs:
            pairs = list(session.alternatives.items())
        if not pairs:
            return _error(422, "no_alternatives", "no labels, inline alternatives, or stored alternatives")
        goal = None
        weights = payload.get("weights")
        if weights is not None:
            if not isinstance(weights, dict) or not weights:
                return _error(422, "bad_payload", "'weights' must be a non-empty object")
            try:
                criteria = tuple((str(c), float(w)) for c, w in weights.items())
            except (TypeError, ValueError):
                return _error(422, "bad_payload", "'weights' values must be numbers")
            goal = GqmGoal(session.scenario.goal.viewpoint, session.scenario.goal.context_note, criteria)
        try:
            report = compare(session.scenario, pairs, goal)
        except (AssignmentError, EvaluationError, ValueError, KeyError) as exc:
            return _error(422, "comparison_failed", str(exc))
        return comparison_to_tree(report)

    @app.post("/sessions/{session_id}/optimize")
    async def optimize_endpoint(session_id: str, request: Request):
        session = session_or_none(session_id)
        if session is None:
            return _error(404, "unknown_session", f"no session {session_id!r}")
        payload = await read_json(request)
        if payload is None:
            return _error(422, "bad_payload", "request body must be a JSON object")
        scenario = session.scenario

        def run() -> dict:
            if payload.get("exhaustive", True):
                result = brute_force(scenario, cap=int(payload.get("cap", 10_000_000)))
            else:
                config = SearchConfig(
                    restarts=int(payload.get("restarts", 20)),
                    seed=int(payload.get("seed", 0)),
                    max_no_improve=int(payload.get("max_no_improve", 1000)),
                )
                result = hill_climb(scenario, config)
            return search_result_to_tree(result)

        if payload.get("background"):
            return {"job_id": jobs.submit(run)}
        try:
            return run()
        except CapExceededError as exc:
            return _error(400, "cap_exceeded", str(exc))
        except (AssignmentError, EvaluationError) as exc:
            return _error(422, "optimize_failed", str(exc))

    @app.post("/sessions/{session_id}/risk")
    async def risk_endpoint(session_id: str, request: Request):
        session = session_or_none(session_id)
        if session is None:
            return _error(404, "unknown_session", f"no session {session_id!r}")
        payload = await read_json(request)
        if payload is None:
            return _error(422, "bad_payload", "request body must be a JSON object")
        try:
            assignment = pick_assignment(session, payload)
        except KeyError as exc:
            return _error(404, "unknown_alternative", f"no stored alternative {exc.args[0]!r}")
        except AssignmentError as exc:
            return _error(422, "invalid_assignment", str(exc))
        n = int(payload.get("n", 10000))
        seed = int(payload.get("seed", 0))
        budget = payload.get("budget")
        budget = float(budget) if budget is not None else None
        raw_percentiles = payload.get("percentiles", [0.1, 0.5, 0.9])
        if not isinstance(raw_percentiles, list):
            return _error(422, "bad_payload", "'percentiles' must be a list")
        percentiles = tuple(float(p) for p in raw_percentiles)
        scenario = session.scenario

        def run() -> dict:
            dist = monte_carlo(scenario, assignment, n, seed)
            return distribution_to_tree(dist, budget=budget, percentiles=percentiles)

        if payload.get("background"):
            return {"job_id": jobs.submit(run)}
        try:
            return run()
        except (EvaluationError, ValueError) as exc:
            return _error(422, "risk_failed", str(exc))

    @app.get("/jobs/{job_id}")
    def job_status(job_id: str):
        job = jobs.get(job_id)
        if job is None:
            return _error(404, "unknown_job", f"no job {job_id!r}")
        body: dict = {"job_id": job_id, "state": job.state}
        if job.state == "done":
            body["result"] = job.result
        if job.state == "failed":
            body["error"] = job.error
        return body

    return app


app = create_app()
