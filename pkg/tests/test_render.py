import pytest

from gsdalloc import compare, evaluate
from gsdalloc.evaluator import ComparisonReport, EvaluationResult, TaskResult
from gsdalloc.model import Assignment
from gsdalloc.render import render_comparison, render_distribution, render_evaluation
from gsdalloc.risk import CostDistribution


def demo_report(demo, alternatives):
    return compare(demo, list(alternatives.items()))


def test_comparison_table_shape(demo, alternatives):
    text = render_comparison(demo_report(demo, alternatives), demo)
    lines = text.splitlines()
    # 7 task column pairs plus the total pair
    assert lines[1].count("|") == 8
    data_rows = [l for l in lines if l.startswith(("All in", "Comp 4"))]
    assert len(data_rows) == 3
    assert "Winner: Comp 4, Testing: India" in text


def test_comparison_contains_rounded_totals(demo, alternatives):
    report = demo_report(demo, alternatives)
    text = render_comparison(report, demo)
    for label, _assignment, result in report.alternatives:
        row = next(l for l in text.splitlines() if l.startswith(label))
        assert str(round(result.total_effort_pm)) in row
        assert str(round(result.total_cost)) in row


def _single_result(effort, cost):
    task = TaskResult("t", "s", effort, cost, effort, 1.0, 0.0, {})
    return EvaluationResult((task,), effort, cost, {"total_cost": cost, "total_effort": effort})


def test_minimal_single_alternative_table():
    result = _single_result(1.4, 2.6)
    report = ComparisonReport(
        alternatives=(("only", Assignment({"t": "s"}), result),),
        scores={"only": 0.0},
        ranking=("only",),
    )
    text = render_comparison(report)
    assert text.splitlines()[1].count("|") == 2
    assert "Winner: only" in text


def test_totals_are_rounded_sums_not_summed_roundings():
    # two tasks at 1.4 PM each: cells render 1 and 1, total renders 3
    tasks = (
        TaskResult("a", "s", 1.4, 1.4, 1.4, 1.0, 0.0, {}),
        TaskResult("b", "s", 1.4, 1.4, 1.4, 1.0, 0.0, {}),
    )
    result = EvaluationResult(tasks, 2.8, 2.8, {"total_cost": 2.8, "total_effort": 2.8})
    report = ComparisonReport(
        alternatives=(("only", Assignment({"a": "s", "b": "s"}), result),),
        scores={"only": 0.0},
        ranking=("only",),
    )
    row = next(l for l in render_comparison(report).splitlines() if l.startswith("only"))
    cells = [c.strip() for c in row.replace("only", "", 1).split()]
    assert cells.count("1") == 4  # two PM cells and two cost cells
    assert "3" in cells  # rounded total of unrounded 2.8


def test_render_evaluation_lists_each_task(demo, alternatives):
    result = evaluate(demo, alternatives["All in Europe"])
    text = render_evaluation(result, demo)
    for task in demo.tasks:
        assert task.name in text
    assert "Total" in text


def test_render_distribution_mentions_budget():
    dist = CostDistribution(samples=((1.0, 10.0), (2.0, 20.0)), n=2, seed=0)
    text = render_distribution(dist, budget=15.0)
    assert "P(cost > 15)" in text
    assert "0.5" in text
