"""Assignment evaluation: per-task effort and cost, comparison, scoring.

Per task: effort = baseline * site_multiplier * (1 + collaboration_overhead),
cost = effort * site cost rate. Comparison scalarizes the goal criteria with
min-max normalization over the alternative set; lower is always better.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .baseline import baseline_per_task
from .impact import (
    DETERMINISTIC,
    EvaluationMode,
    collaboration_overhead,
    multiplier_contributions,
    pair_overhead_contributions,
    resolve_instances,
)
from .model import Assignment, GqmGoal, Scenario, check_assignment


@dataclass(frozen=True)
class TaskResult:
    task: str
    site: str
    effort_pm: float
    cost: float
    baseline_pm: float
    site_multiplier: float
    collab_overhead: float
    factor_breakdown: dict[str, float]


@dataclass(frozen=True)
class EvaluationResult:
    per_task: tuple[TaskResult, ...]
    total_effort_pm: float
    total_cost: float
    criteria_values: dict[str, float]


@dataclass(frozen=True)
class ComparisonReport:
    alternatives: tuple[tuple[str, Assignment, EvaluationResult], ...]
    scores: dict[str, float]
    ranking: tuple[str, ...]


def cross_site_coupling(scenario: Scenario, assignment: Assignment) -> float:
    """Total coupling weight crossing site boundaries under the assignment."""
    total = 0.0
    for (a, b), weight in scenario.coupling.entries.items():
        if assignment.mapping[a] != assignment.mapping[b]:
            total += weight
    return total


def evaluate(
    scenario: Scenario, assignment: Assignment, mode: EvaluationMode = DETERMINISTIC
) -> EvaluationResult:
    """Evaluate one assignment into per-task and total effort/cost."""
    check_assignment(scenario, assignment)
    resolved = resolve_instances(scenario, mode)
    baselines = baseline_per_task(scenario.baseline)

    per_task: list[TaskResult] = []
    total_effort = 0.0
    total_cost = 0.0
    for task in scenario.tasks:
        site_id = assignment.mapping[task.id]
        site = scenario.site_by_id(site_id)
        breakdown: dict[str, float] = {}
        multiplier = 1.0
        for factor_id, value in multiplier_contributions(scenario, task.id, site_id, resolved):
            multiplier += value
            breakdown[factor_id] = value
        collab = collaboration_overhead(scenario, task.id, assignment, mode, resolved)
        for other in scenario.tasks:
            if other.id == task.id:
                continue
            weight = scenario.coupling.weight(task.id, other.id)
            other_site = assignment.mapping[other.id]
            if weight == 0.0 or other_site == site_id:
                continue
            for factor_id, value in pair_overhead_contributions(scenario, site_id, other_site, resolved):
                share = weight * scenario.impact_model.pair_scale * value
                breakdown[factor_id] = breakdown.get(factor_id, 0.0) + share
        effort = baselines[task.id] * multiplier * (1.0 + collab)
        cost = effort * site.cost_rate
        per_task.append(
            TaskResult(task.id, site_id, effort, cost, baselines[task.id], multiplier, collab, breakdown)
        )
        total_effort += effort
        total_cost += cost

    criteria = {
        "total_cost": total_cost,
        "total_effort": total_effort,
        "cross_site_coupling": cross_site_coupling(scenario, assignment),
    }
    return EvaluationResult(tuple(per_task), total_effort, total_cost, criteria)


def score_criteria(tables: Sequence[Mapping[str, float]], goal: GqmGoal) -> list[float]:
    """Weighted min-max scores for a set of criteria-value tables; lower is better.

    Each criterion is normalized to [0, 1] over the set (a constant criterion
    normalizes to 0 everywhere), then combined with the goal weights.
    """
    scores = [0.0] * len(tables)
    for criterion, weight in goal.criteria:
        values = [table[criterion] for table in tables]
        lo = min(values)
        hi = max(values)
        span = hi - lo
        for i, value in enumerate(values):
            normalized = 0.0 if span == 0 else (value - lo) / span
            scores[i] += weight * normalized
    return scores


def weighted_score(results: Sequence[EvaluationResult], goal: GqmGoal) -> list[float]:
    """Scores for evaluated alternatives under the goal's criterion weights."""
    if not results:
        raise ValueError("weighted_score needs at least one result")
    return score_criteria([r.criteria_values for r in results], goal)


def compare(
    scenario: Scenario,
    alternatives: Sequence[tuple[str, Assignment]],
    goal: GqmGoal | None = None,
) -> ComparisonReport:
    """Evaluate alternatives deterministically, score them, and rank ascending.

    Ties rank by label so reports are reproducible.
    """
    if not alternatives:
        raise ValueError("compare needs at least one alternative")
    labels = [label for label, _a in alternatives]
    if len(set(labels)) != len(labels):
        raise ValueError(f"duplicate alternative labels: {labels}")
    goal = goal if goal is not None else scenario.goal
    evaluated = tuple(
        (label, assignment, evaluate(scenario, assignment)) for label, assignment in alternatives
    )
    scores = weighted_score([result for _l, _a, result in evaluated], goal)
    by_label = {label: score for (label, _a, _r), score in zip(evaluated, scores)}
    ranking = tuple(sorted(by_label, key=lambda label: (by_label[label], label)))
    return ComparisonReport(evaluated, by_label, ranking)
