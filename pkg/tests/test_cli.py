import json

import pytest

from gsdalloc import brute_force, compare, demo_alternatives, demo_scenario, evaluate
from gsdalloc.cli import EXIT_IO, EXIT_OK, EXIT_REFUSED, EXIT_VALIDATION, main
from gsdalloc.fileio import evaluation_to_tree


@pytest.fixture()
def demo_file(tmp_path):
    path = tmp_path / "demo.json"
    assert main(["init", str(path)]) == EXIT_OK
    return path


def run(capsys, *argv):
    capsys.readouterr()  # drain fixture output
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_init_refuses_overwrite(tmp_path, capsys):
    path = tmp_path / "x.json"
    assert main(["init", str(path)]) == EXIT_OK
    code, _out, err = run(capsys, "init", str(path))
    assert code == EXIT_IO
    assert "exists" in err
    assert main(["init", str(path), "--force"]) == EXIT_OK


def test_validate_demo_ok(demo_file, capsys):
    code, out, _err = run(capsys, "validate", str(demo_file))
    assert code == EXIT_OK
    assert "valid" in out


def test_validate_reports_violations(tmp_path, capsys, demo_file):
    tree = json.loads(demo_file.read_text())
    tree["pinned"] = {"comp1": "atlantis"}
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(tree))
    code, out, _err = run(capsys, "validate", str(bad), "--format=tree")
    assert code == EXIT_VALIDATION
    payload = json.loads(out)
    assert payload["valid"] is False
    assert any(v["code"] == "unknown_site" for v in payload["violations"])


def test_missing_file_is_io_error(capsys):
    code, _out, err = run(capsys, "validate", "/nonexistent/sc.json")
    assert code == EXIT_IO
    assert "cannot read" in err


def test_evaluate_alt_matches_library(demo_file, capsys):
    code, out, _err = run(capsys, "evaluate", str(demo_file), "--alt", "All in Europe", "--format=tree")
    assert code == EXIT_OK
    expected = evaluation_to_tree(evaluate(demo_scenario(), demo_alternatives()["All in Europe"]))
    assert json.loads(out) == json.loads(json.dumps(expected))


def test_evaluate_assign_spelled_out(demo_file, capsys):
    assign = ",".join(f"{t}=bangalore" for t in demo_scenario().task_ids())
    code, out, _err = run(capsys, "evaluate", str(demo_file), "--assign", assign, "--format=tree")
    assert code == EXIT_OK
    payload = json.loads(out)
    expected = evaluate(demo_scenario(), demo_alternatives()["All in India"])
    assert payload["total_cost"] == pytest.approx(expected.total_cost)


def test_evaluate_unknown_alt_fails(demo_file, capsys):
    code, _out, err = run(capsys, "evaluate", str(demo_file), "--alt", "nope")
    assert code == EXIT_VALIDATION
    assert "unknown alternative" in err


def test_evaluate_incomplete_assignment_fails(demo_file, capsys):
    code, _out, err = run(capsys, "evaluate", str(demo_file), "--assign", "comp1=bangalore")
    assert code == EXIT_VALIDATION
    assert "unassigned_task" in err


def test_compare_all_alternatives(demo_file, capsys):
    code, out, _err = run(capsys, "compare", str(demo_file))
    assert code == EXIT_OK
    assert "Winner: Comp 4, Testing: India" in out


def test_compare_tree_matches_library(demo_file, capsys):
    code, out, _err = run(capsys, "compare", str(demo_file), "--format=tree")
    assert code == EXIT_OK
    payload = json.loads(out)
    report = compare(demo_scenario(), list(demo_alternatives().items()))
    assert payload["ranking"] == list(report.ranking)
    assert payload["winner"] == report.ranking[0]


def test_optimize_exhaustive(demo_file, capsys):
    code, out, _err = run(capsys, "optimize", str(demo_file), "--exhaustive", "--format=tree")
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["exhaustive"] is True
    assert payload["best_score"] == pytest.approx(brute_force(demo_scenario()).best_score)


def test_optimize_cap_refusal(demo_file, capsys):
    code, _out, err = run(capsys, "optimize", str(demo_file), "--exhaustive", "--cap", "10")
    assert code == EXIT_REFUSED
    assert "hill_climb" in err


def test_optimize_hill_climb(demo_file, capsys):
    code, out, _err = run(
        capsys, "optimize", str(demo_file), "--restarts", "20", "--seed", "42", "--format=tree"
    )
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["exhaustive"] is False
    assert payload["best_score"] == pytest.approx(brute_force(demo_scenario()).best_score)


def test_risk_summary(demo_file, capsys):
    code, out, _err = run(
        capsys,
        "risk",
        str(demo_file),
        "--alt",
        "Comp 4, Testing: India",
        "-n",
        "500",
        "--seed",
        "9",
        "--budget",
        "1100",
        "--format=tree",
    )
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["n"] == 500
    assert 0.0 <= payload["prob_cost_exceeds_budget"] <= 1.0
    code2, out2, _err = run(
        capsys,
        "risk",
        str(demo_file),
        "--alt",
        "Comp 4, Testing: India",
        "-n",
        "500",
        "--seed",
        "9",
        "--budget",
        "1100",
        "--format=tree",
    )
    assert json.loads(out2) == payload


def test_sampled_mode_uses_seed(demo_file, capsys):
    args = ("evaluate", str(demo_file), "--alt", "All in Europe", "--mode=sampled", "--format=tree")
    _c, out_a, _e = run(capsys, *args, "--seed", "1")
    _c, out_b, _e = run(capsys, *args, "--seed", "1")
    _c, out_c, _e = run(capsys, *args, "--seed", "2")
    assert out_a == out_b
    assert out_a != out_c
