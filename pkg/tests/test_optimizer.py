import dataclasses

import numpy as np
import pytest

from gsdalloc import (
    Assignment,
    BaselineSpec,
    CapExceededError,
    CouplingMatrix,
    FactorAssessment,
    GqmGoal,
    ImpactModel,
    Scenario,
    SearchConfig,
    Site,
    Task,
    brute_force,
    evaluate,
    hill_climb,
)
from gsdalloc.optimizer import _SearchSpace

COST_GOAL = GqmGoal("pm", "", (("total_cost", 1.0),))
COUPLING_GOAL = GqmGoal("pm", "", (("cross_site_coupling", 1.0),))


def flat_scenario(n_sites=3, n_tasks=1, rates=(2.0, 1.0, 3.0), coupling=None):
    """No factors at all: effort equals baseline everywhere."""
    sites = tuple(Site(f"s{i}", f"S{i}", rates[i], {}) for i in range(n_sites))
    tasks = tuple(Task(f"t{i}", f"T{i}", {}) for i in range(n_tasks))
    shares = {t.id: 1.0 / n_tasks for t in tasks}
    return Scenario(
        sites=sites,
        tasks=tasks,
        coupling=CouplingMatrix(coupling or {}),
        catalog=(),
        impact_model=ImpactModel({}),
        assessment=FactorAssessment({}),
        baseline=BaselineSpec(mode="direct", direct_total_pm=float(10 * n_tasks), shares=shares),
        goal=COST_GOAL,
    )


def test_single_task_picks_cheapest_site():
    result = brute_force(flat_scenario())
    assert result.best.mapping == {"t0": "s1"}
    assert result.evaluations == 3
    assert result.exhaustive


def test_fully_pinned_scenario_is_one_evaluation():
    scenario = flat_scenario(n_tasks=2)
    pinned = dataclasses.replace(scenario, pinned={"t0": "s2", "t1": "s0"})
    result = brute_force(pinned)
    assert result.evaluations == 1
    assert result.best.mapping == {"t0": "s2", "t1": "s0"}


def test_coupling_only_objective_prefers_single_site():
    scenario = flat_scenario(
        n_sites=3, n_tasks=3, rates=(1.0, 1.0, 1.0), coupling={("t0", "t1"): 0.9, ("t1", "t2"): 0.4}
    )
    result = brute_force(scenario, COUPLING_GOAL)
    assert len(set(result.best.mapping.values())) == 1
    assert result.best_score == 0.0


def test_cap_refusal():
    scenario = flat_scenario(n_sites=3, n_tasks=2)
    with pytest.raises(CapExceededError, match="hill_climb"):
        brute_force(scenario, cap=8)


def test_demo_brute_force_beats_stored_mixed_alternative(demo, alternatives):
    result = brute_force(demo)
    assert result.evaluations == 4**7
    mixed_cost = evaluate(demo, alternatives["Comp 4, Testing: India"]).total_cost
    assert result.best_result.total_cost <= mixed_cost


def test_brute_force_score_not_above_random_assignments(demo):
    result = brute_force(demo)
    space = _SearchSpace.build(demo)
    rng = np.random.default_rng(2024)
    sites = demo.site_ids()
    from gsdalloc.optimizer import _scorer

    score = _scorer(space, demo.goal)
    for _ in range(100):
        indices = [int(v) for v in rng.integers(0, len(sites), size=len(demo.tasks))]
        assert result.best_score <= score(space.criteria_for(indices)) + 1e-12


def test_search_space_matches_evaluator(demo, alternatives):
    space = _SearchSpace.build(demo)
    site_index = {s: i for i, s in enumerate(demo.site_ids())}
    for assignment in alternatives.values():
        indices = [site_index[assignment.mapping[t]] for t in demo.task_ids()]
        fast = space.criteria_for(indices)
        full = evaluate(demo, assignment).criteria_values
        for criterion, value in full.items():
            assert fast[criterion] == pytest.approx(value, rel=1e-9)


def test_hill_climb_matches_brute_force_on_demo(demo):
    expected = brute_force(demo).best_score
    result = hill_climb(demo, SearchConfig(restarts=20, seed=42))
    assert result.best_score == expected
    assert not result.exhaustive


def test_hill_climb_never_beats_brute_force(demo):
    exact = brute_force(demo).best_score
    for seed in (0, 7, 99):
        assert hill_climb(demo, SearchConfig(restarts=3, seed=seed)).best_score >= exact


def test_hill_climb_is_reproducible(demo):
    config = SearchConfig(restarts=5, seed=11)
    a = hill_climb(demo, config)
    b = hill_climb(demo, config)
    assert a == b


def test_hill_climb_result_has_no_improving_neighbor(demo):
    result = hill_climb(demo, SearchConfig(restarts=4, seed=3))
    space = _SearchSpace.build(demo)
    from gsdalloc.optimizer import _scorer

    score = _scorer(space, demo.goal)
    site_index = {s: i for i, s in enumerate(demo.site_ids())}
    best = [site_index[result.best.mapping[t]] for t in demo.task_ids()]
    best_score = score(space.criteria_for(best))
    for task in range(len(best)):
        original = best[task]
        for site in range(len(demo.sites)):
            if site == original:
                continue
            best[task] = site
            assert score(space.criteria_for(best)) >= best_score
        best[task] = original


def test_hill_climb_honors_pins(demo):
    pinned = dataclasses.replace(demo, pinned={"comp4": "london"})
    result = hill_climb(pinned, SearchConfig(restarts=6, seed=1))
    assert result.best.mapping["comp4"] == "london"
    exhaustive = brute_force(pinned)
    assert exhaustive.best.mapping["comp4"] == "london"
    assert exhaustive.evaluations == 4**6
    assert result.best_score == exhaustive.best_score


def test_dominant_site_found_from_any_start():
    scenario = flat_scenario(n_sites=3, n_tasks=4, rates=(5.0, 0.5, 9.0))
    for seed in range(5):
        result = hill_climb(scenario, SearchConfig(restarts=1, seed=seed))
        assert set(result.best.mapping.values()) == {"s1"}


def test_lexicographic_tie_break_prefers_first_enumerated():
    # identical rates: every assignment of the single task scores the same
    scenario = flat_scenario(n_sites=3, n_tasks=1, rates=(1.0, 1.0, 1.0))
    result = brute_force(scenario)
    assert result.best.mapping == {"t0": "s0"}
