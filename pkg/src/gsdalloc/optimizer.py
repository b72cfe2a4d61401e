"""Assignment search: exhaustive enumeration (the oracle) and restart hill-climbing.

Both searches honor pinned tasks and optimize the same scalarized objective:
criterion values divided by a fixed reference alternative's values (all
unpinned work on the first site), then combined with the goal weights. Unlike
report scoring, this normalization does not move as candidates arrive, so the
objective is stable during search; for a single-criterion goal the argmin
matches the raw criterion argmin either way.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.random import default_rng

from .baseline import baseline_per_task
from .evaluator import EvaluationResult, evaluate
from .impact import DETERMINISTIC, resolve_instances, site_multiplier
from .model import Assignment, GqmGoal, Scenario

DEFAULT_ENUMERATION_CAP = 10_000_000
_CHUNK_ROWS = 65536


class CapExceededError(RuntimeError):
    """The assignment space is too large to enumerate; use hill_climb."""


@dataclass(frozen=True)
class SearchConfig:
    restarts: int = 20
    seed: int = 0
    max_no_improve: int = 1000  # move cap per restart
    objective: GqmGoal | None = None  # None: use the scenario goal


@dataclass(frozen=True)
class SearchResult:
    best: Assignment
    best_result: EvaluationResult
    best_score: float
    evaluations: int
    exhaustive: bool


@dataclass
class _SearchSpace:
    """Precomputed deterministic evaluation tables for fast scoring.

    Semantics match `evaluator.evaluate` in deterministic mode; the spot-check
    property tests hold the two paths together.
    """

    task_ids: list[str]
    site_ids: list[str]
    baseline: np.ndarray  # (T,)
    multiplier: np.ndarray  # (T, S)
    rate: np.ndarray  # (S,)
    pair_eff: np.ndarray  # (S, S), zero diagonal
    coupled: list[tuple[int, int, float]]  # (task index, task index, weight)
    pinned_sites: dict[int, int] = field(default_factory=dict)

    @staticmethod
    def build(scenario: Scenario) -> "_SearchSpace":
        task_ids = list(scenario.task_ids())
        site_ids = list(scenario.site_ids())
        resolved = resolve_instances(scenario, DETERMINISTIC)
        baselines = baseline_per_task(scenario.baseline)
        baseline = np.array([baselines[t] for t in task_ids])
        multiplier = np.array(
            [[site_multiplier(scenario, t, s, DETERMINISTIC, resolved) for s in site_ids] for t in task_ids]
        )
        rate = np.array([scenario.site_by_id(s).cost_rate for s in site_ids])
        scale = scenario.impact_model.pair_scale
        n_sites = len(site_ids)
        pair_eff = np.zeros((n_sites, n_sites))
        for i, a in enumerate(site_ids):
            for j in range(i + 1, n_sites):
                b = site_ids[j]
                rel = scenario.pair_relation(a, b)
                total = 0.0
                for factor in scenario.catalog:
                    if factor.category != "site_pair":
                        continue
                    if rel is not None and factor.id in rel.factor_values:
                        total += resolved[(factor.id, rel.pair())]
                pair_eff[i, j] = pair_eff[j, i] = scale * total
        task_index = {t: i for i, t in enumerate(task_ids)}
        coupled = [
            (task_index[a], task_index[b], weight)
            for (a, b), weight in scenario.coupling.entries.items()
            if weight > 0.0
        ]
        site_index = {s: i for i, s in enumerate(site_ids)}
        pinned_sites = {task_index[t]: site_index[s] for t, s in scenario.pinned.items()}
        return _SearchSpace(task_ids, site_ids, baseline, multiplier, rate, pair_eff, coupled, pinned_sites)

    def criteria_matrix(self, assignments: np.ndarray) -> dict[str, np.ndarray]:
        """Criteria values for a (rows, T) matrix of site indices."""
        rows = assignments.shape[0]
        tasks = np.arange(len(self.task_ids))
        collab = np.zeros((rows, len(self.task_ids)))
        coupling_value = np.zeros(rows)
        for a, b, weight in self.coupled:
            eff = self.pair_eff[assignments[:, a], assignments[:, b]]
            collab[:, a] += weight * eff
            collab[:, b] += weight * eff
            coupling_value += np.where(assignments[:, a] != assignments[:, b], weight, 0.0)
        effort = self.baseline[None, :] * self.multiplier[tasks[None, :], assignments] * (1.0 + collab)
        cost = effort * self.rate[assignments]
        return {
            "total_effort": effort.sum(axis=1),
            "total_cost": cost.sum(axis=1),
            "cross_site_coupling": coupling_value,
        }

    def criteria_for(self, assignment: list[int]) -> dict[str, float]:
        values = self.criteria_matrix(np.array([assignment]))
        return {k: float(v[0]) for k, v in values.items()}

    def assignment_from_indices(self, indices: list[int]) -> Assignment:
        return Assignment({t: self.site_ids[s] for t, s in zip(self.task_ids, indices)})


def _reference_values(space: _SearchSpace) -> dict[str, float]:
    reference = [space.pinned_sites.get(i, 0) for i in range(len(space.task_ids))]
    return space.criteria_for(reference)


def _scorer(space: _SearchSpace, goal: GqmGoal):
    """Maps a criteria table (scalars or arrays) to the search objective."""
    reference = _reference_values(space)

    def score(values):
        total = 0.0
        for criterion, weight in goal.criteria:
            ref = reference[criterion]
            value = values[criterion]
            total = total + weight * (value / ref if ref != 0.0 else value)
        return total

    return score


def _resolve_goal(scenario: Scenario, objective: GqmGoal | None) -> GqmGoal:
    return objective if objective is not None else scenario.goal


def brute_force(
    scenario: Scenario,
    objective: GqmGoal | None = None,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> SearchResult:
    """Globally optimal assignment by lexicographic enumeration.

    First-encountered assignment wins ties (tasks in scenario order as digits,
    sites in scenario order as digit values). Refuses spaces larger than
    ``cap``.
    """
    goal = _resolve_goal(scenario, objective)
    space = _SearchSpace.build(scenario)
    n_tasks = len(space.task_ids)
    n_sites = len(space.site_ids)
    free = [i for i in range(n_tasks) if i not in space.pinned_sites]
    size = n_sites ** len(free)
    if size > cap:
        raise CapExceededError(
            f"{n_sites}^{len(free)} = {size} assignments exceeds the cap of {cap}; use hill_climb"
        )
    score = _scorer(space, goal)

    best_score = None
    best_indices: list[int] | None = None
    template = np.empty(n_tasks, dtype=np.int64)
    for task, site in space.pinned_sites.items():
        template[task] = site

    for start in range(0, size, _CHUNK_ROWS):
        stop = min(start + _CHUNK_ROWS, size)
        flat = np.arange(start, stop, dtype=np.int64)
        block = np.tile(template, (stop - start, 1))
        # Decode base-S digits, most significant = first free task.
        remainder = flat
        for position in range(len(free) - 1, -1, -1):
            block[:, free[position]] = remainder % n_sites
            remainder = remainder // n_sites
        values = space.criteria_matrix(block)
        scores = score(values)
        if np.isscalar(scores) or scores.ndim == 0:
            scores = np.full(stop - start, float(scores))
        local = int(np.argmin(scores))
        if best_score is None or scores[local] < best_score:
            best_score = float(scores[local])
            best_indices = [int(v) for v in block[local]]

    assert best_indices is not None
    best = space.assignment_from_indices(best_indices)
    return SearchResult(
        best=best,
        best_result=evaluate(scenario, best),
        best_score=best_score,
        evaluations=size,
        exhaustive=True,
    )


def hill_climb(scenario: Scenario, config: SearchConfig = SearchConfig()) -> SearchResult:
    """Steepest-descent over single-task reassignments, with random restarts.

    Every accepted move strictly decreases the score; a restart stops when no
    neighbor improves or after ``max_no_improve`` moves. The global best is
    picked by (score, restart index), so restart results can be merged in any
    order. Fully reproducible from the seed.
    """
    if config.restarts < 1:
        raise ValueError(f"restarts must be >= 1, got {config.restarts}")
    if config.max_no_improve < 1:
        raise ValueError(f"max_no_improve must be >= 1, got {config.max_no_improve}")
    goal = _resolve_goal(scenario, config.objective)
    space = _SearchSpace.build(scenario)
    score = _scorer(space, goal)
    n_tasks = len(space.task_ids)
    n_sites = len(space.site_ids)
    free = [i for i in range(n_tasks) if i not in space.pinned_sites]

    evaluations = 0
    best_score: float | None = None
    best_indices: list[int] | None = None

    for restart in range(config.restarts):
        rng = default_rng((config.seed, restart))
        current = [space.pinned_sites.get(i, 0) for i in range(n_tasks)]
        for i, site in zip(free, rng.integers(0, n_sites, size=len(free))):
            current[i] = int(site)
        current_score = score(space.criteria_for(current))
        evaluations += 1

        for _move in range(config.max_no_improve):
            best_neighbor = None
            best_neighbor_score = current_score
            for task in free:
                original = current[task]
                for site in range(n_sites):
                    if site == original:
                        continue
                    current[task] = site
                    candidate = score(space.criteria_for(current))
                    evaluations += 1
                    if candidate < best_neighbor_score:
                        best_neighbor_score = candidate
                        best_neighbor = (task, site)
                current[task] = original
            if best_neighbor is None:
                break
            current[best_neighbor[0]] = best_neighbor[1]
            current_score = best_neighbor_score

        if best_score is None or current_score < best_score:
            best_score = current_score
            best_indices = list(current)

    assert best_indices is not None and best_score is not None
    best = space.assignment_from_indices(best_indices)
    return SearchResult(
        best=best,
        best_result=evaluate(scenario, best),
        best_score=best_score,
        evaluations=evaluations,
        exhaustive=False,
    )
