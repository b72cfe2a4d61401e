import json
import time

import pytest
from fastapi.testclient import TestClient

from gsdalloc import brute_force, demo_alternatives, demo_scenario, evaluate, monte_carlo
from gsdalloc.fileio import distribution_to_tree, evaluation_to_tree, scenario_to_tree
from gsdalloc.service import create_app


@pytest.fixture()
def client():
    return TestClient(create_app())


@pytest.fixture()
def session_id(client):
    response = client.post("/sessions", json={"demo": True})
    assert response.status_code == 200
    return response.json()["session_id"]


def test_create_and_read_demo_session(client, session_id):
    response = client.get(f"/sessions/{session_id}")
    assert response.status_code == 200
    assert response.json() == json.loads(json.dumps(scenario_to_tree(demo_scenario(), demo_alternatives())))


def test_two_creates_give_distinct_ids(client):
    a = client.post("/sessions", json={"demo": True}).json()["session_id"]
    b = client.post("/sessions", json={"demo": True}).json()["session_id"]
    assert a != b


def test_create_from_document(client):
    document = scenario_to_tree(demo_scenario(), demo_alternatives())
    response = client.post("/sessions", json=document)
    assert response.status_code == 200


def test_malformed_document_is_422_with_codes(client):
    document = scenario_to_tree(demo_scenario())
    document["pinned"] = {"comp1": "atlantis"}
    response = client.post("/sessions", json=document)
    assert response.status_code == 422
    assert any(v["code"] == "unknown_site" for v in response.json()["violations"])


def test_reserved_demo_session_exists(client):
    response = client.get("/sessions/demo")
    assert response.status_code == 200
    assert response.json()["schema_version"] == 1


def test_unknown_session_404(client):
    assert client.get("/sessions/nope").status_code == 404
    assert client.post("/sessions/nope/evaluate", json={"alt": "x"}).status_code == 404


def test_factors_endpoint(client):
    payload = client.get("/factors").json()
    assert len(payload["factors"]) == 11
    assert payload["factors"][0]["levels"][0] == "nominal"


def test_evaluate_endpoint_matches_library(client, session_id):
    europe = demo_alternatives()["All in Europe"]
    response = client.post(f"/sessions/{session_id}/evaluate", json={"assignment": europe.mapping})
    assert response.status_code == 200
    expected = evaluation_to_tree(evaluate(demo_scenario(), europe))
    assert response.json() == json.loads(json.dumps(expected))


def test_evaluate_endpoint_by_label(client, session_id):
    response = client.post(f"/sessions/{session_id}/evaluate", json={"alt": "All in India"})
    assert response.status_code == 200
    expected = evaluation_to_tree(evaluate(demo_scenario(), demo_alternatives()["All in India"]))
    assert response.json() == json.loads(json.dumps(expected))


def test_repeated_evaluate_is_byte_identical(client, session_id):
    body = {"alt": "All in Europe"}
    first = client.post(f"/sessions/{session_id}/evaluate", json=body)
    second = client.post(f"/sessions/{session_id}/evaluate", json=body)
    assert first.content == second.content


def test_incomplete_assignment_is_422_naming_task(client, session_id):
    response = client.post(
        f"/sessions/{session_id}/evaluate", json={"assignment": {"comp1": "bangalore"}}
    )
    assert response.status_code == 422
    assert "unassigned_task" in response.json()["message"]


def test_unknown_label_is_404(client, session_id):
    assert client.post(f"/sessions/{session_id}/evaluate", json={"alt": "zzz"}).status_code == 404
    assert client.post(f"/sessions/{session_id}/risk", json={"alt": "zzz"}).status_code == 404


def test_compare_endpoint_with_stored_labels(client, session_id):
    response = client.post(
        f"/sessions/{session_id}/compare",
        json={"labels": ["All in Europe", "Comp 4, Testing: India", "All in India"]},
    )
    assert response.status_code == 200
    assert response.json()["winner"] == "Comp 4, Testing: India"


def test_compare_endpoint_weight_override_flips_winner(client, session_id):
    response = client.post(
        f"/sessions/{session_id}/compare",
        json={"labels": list(demo_alternatives()), "weights": {"total_effort": 1.0}},
    )
    assert response.json()["winner"] == "All in Europe"


def test_compare_endpoint_inline_alternatives(client, session_id):
    europe = demo_alternatives()["All in Europe"]
    response = client.post(
        f"/sessions/{session_id}/compare", json={"alternatives": {"mine": europe.mapping}}
    )
    assert response.status_code == 200
    assert response.json()["ranking"] == ["mine"]


def test_optimize_endpoint_matches_library(client, session_id):
    response = client.post(f"/sessions/{session_id}/optimize", json={"exhaustive": True})
    assert response.status_code == 200
    assert response.json()["best_score"] == pytest.approx(brute_force(demo_scenario()).best_score)


def test_optimize_cap_refusal_is_400(client, session_id):
    response = client.post(f"/sessions/{session_id}/optimize", json={"exhaustive": True, "cap": 5})
    assert response.status_code == 400
    assert "hill_climb" in response.json()["message"]


def test_risk_endpoint_deterministic(client, session_id):
    body = {"alt": "All in India", "n": 300, "seed": 4, "budget": 1100.0}
    first = client.post(f"/sessions/{session_id}/risk", json=body)
    second = client.post(f"/sessions/{session_id}/risk", json=body)
    assert first.status_code == 200
    assert first.content == second.content
    expected = distribution_to_tree(
        monte_carlo(demo_scenario(), demo_alternatives()["All in India"], 300, 4),
        budget=1100.0,
    )
    assert first.json() == json.loads(json.dumps(expected))


def test_background_job_polling(client, session_id):
    response = client.post(
        f"/sessions/{session_id}/optimize", json={"exhaustive": True, "background": True}
    )
    job_id = response.json()["job_id"]
    for _ in range(100):
        status = client.get(f"/jobs/{job_id}").json()
        if status["state"] == "done":
            break
        time.sleep(0.05)
    assert status["state"] == "done"
    assert status["result"]["exhaustive"] is True
    assert client.get("/jobs/missing").status_code == 404


def test_sessions_are_isolated(client):
    a = client.post("/sessions", json={"demo": True}).json()["session_id"]
    b = client.post("/sessions", json={"demo": True}).json()["session_id"]
    document = scenario_to_tree(demo_scenario())  # no alternatives
    put = client.put(f"/sessions/{a}/scenario", json=document)
    assert put.status_code == 200
    assert client.get(f"/sessions/{a}").json().get("alternatives") is None
    assert "alternatives" in client.get(f"/sessions/{b}").json()


def test_put_scenario_validates(client, session_id):
    document = scenario_to_tree(demo_scenario())
    document["sites"][0]["cost_rate"] = -1
    response = client.put(f"/sessions/{session_id}/scenario", json=document)
    assert response.status_code == 422


def test_snapshot_written_on_shutdown(tmp_path):
    path = tmp_path / "sessions.json"
    with TestClient(create_app(snapshot_path=str(path))) as scoped:
        sid = scoped.post("/sessions", json={"demo": True}).json()["session_id"]
    snapshot = json.loads(path.read_text())
    assert sid in snapshot
    assert snapshot[sid]["schema_version"] == 1
