#!/usr/bin/env python3
"""Export recorded HTTP payloads for the frontend test suite.

The board UI's tests assert that every number on screen equals a field of a
real evaluate/compare/risk endpoint payload. This script drives the actual
service (in-process) through the demo session and records the responses,
keyed by canonical request JSON, into frontend/test/fixtures/demo_fixtures.json.

Regenerate after any engine or demo change: python3 scripts/export_ui_fixtures.py
"""

import json
from pathlib import Path

from fastapi.testclient import TestClient

from gsdalloc import demo_alternatives
from gsdalloc.service import create_app

START_LABEL = "All in Europe"

# Twenty scripted reassignments for the board-fidelity test; each changes the
# moved task's site.
MOVES = [
    ("comp4", "bangalore"),
    ("system_test", "bangalore"),
    ("comp1", "london"),
    ("comp1", "frankfurt"),
    ("comp5", "bangalore"),
    ("comp2", "frankfurt"),
    ("integration", "frankfurt"),
    ("comp3", "cologne"),
    ("comp5", "frankfurt"),
    ("comp4", "cologne"),
    ("comp4", "bangalore"),
    ("integration", "bangalore"),
    ("integration", "london"),
    ("comp2", "bangalore"),
    ("comp2", "cologne"),
    ("comp3", "frankfurt"),
    ("system_test", "london"),
    ("system_test", "bangalore"),
    ("comp5", "cologne"),
    ("comp5", "frankfurt"),
]


def canonical(value) -> str:
    return json.dumps(value, sort_keys=True, separators=(",", ":"))


def main() -> None:
    client = TestClient(create_app())
    document = client.get("/sessions/demo").json()

    evaluations: dict[str, dict] = {}

    def record_evaluation(assignment: dict[str, str]) -> None:
        key = canonical(assignment)
        if key in evaluations:
            return
        response = client.post("/sessions/demo/evaluate", json={"assignment": assignment})
        response.raise_for_status()
        evaluations[key] = response.json()

    alternatives = {label: dict(a.mapping) for label, a in demo_alternatives().items()}
    for assignment in alternatives.values():
        record_evaluation(assignment)

    current = dict(alternatives[START_LABEL])
    for task, site in MOVES:
        assert current[task] != site, f"scripted move {task}->{site} is a no-op"
        current[task] = site
        record_evaluation(current)

    compares: dict[str, dict] = {}
    for weights in ({"total_cost": 1}, {"total_effort": 1}):
        body = {"alternatives": alternatives, "weights": weights}
        response = client.post("/sessions/demo/compare", json=body)
        response.raise_for_status()
        compares[canonical({"alternatives": alternatives, "weights": weights})] = response.json()

    risk_body = {"assignment": alternatives[START_LABEL], "n": 500, "seed": 7, "budget": 1250}
    risk_response = client.post("/sessions/demo/risk", json=risk_body)
    risk_response.raise_for_status()
    risks = {canonical(risk_body): risk_response.json()}

    optimize_response = client.post("/sessions/demo/optimize", json={"exhaustive": True})
    optimize_response.raise_for_status()

    fixtures = {
        "document": document,
        "start_label": START_LABEL,
        "moves": [{"task": task, "site": site} for task, site in MOVES],
        "evaluations": evaluations,
        "compares": compares,
        "risks": risks,
        "optimize": optimize_response.json(),
    }
    out = Path(__file__).resolve().parent.parent / "frontend" / "test" / "fixtures" / "demo_fixtures.json"
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(fixtures, indent=2) + "\n", encoding="utf-8")
    print(f"wrote {out} ({len(evaluations)} evaluations, {len(compares)} compares)")


if __name__ == "__main__":
    main()
