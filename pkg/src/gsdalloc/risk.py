"""Monte Carlo risk analysis over the triangular overhead model.

Each iteration draws one overhead per assessed (factor, entity) instance from
its triangle and evaluates the assignment with those draws. Iteration ``i``
under seed ``s`` uses the substream keyed ``(s, i)``, so sample ``i`` is the
same whether 1 000 or 100 000 iterations run, and iterations can execute in
any order. Sample ``i`` is arithmetically identical to a single sampled
evaluation at that substream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .baseline import baseline_per_task
from .impact import (
    collaboration_overhead,
    iteration_uniforms,
    multiplier_contributions,
    overhead_instances,
    triangular_icdf,
)
from .model import Assignment, Scenario, check_assignment


@dataclass(frozen=True)
class CostDistribution:
    """Empirical distribution of (total effort, total cost) for one assignment."""

    samples: tuple[tuple[float, float], ...]
    n: int
    seed: int


def sample_instance_overheads(scenario: Scenario, n: int, seed: int):
    """The per-instance overhead draws behind a Monte Carlo run.

    Returns (instances, matrix) with matrix[i, j] the overhead fraction of
    canonical instance j in iteration i. Exposed for calibration checks.
    """
    instances = overhead_instances(scenario)
    count = len(instances)
    uniforms = np.empty((n, count))
    for i in range(n):
        uniforms[i] = iteration_uniforms(seed, i, count)
    values = np.empty((n, count))
    for j, inst in enumerate(instances):
        tri = inst.triangle
        values[:, j] = triangular_icdf(uniforms[:, j], tri.min_pct, tri.likely_pct, tri.max_pct) / 100.0
    return instances, values


def monte_carlo(scenario: Scenario, assignment: Assignment, n: int, seed: int) -> CostDistribution:
    """Sample the total effort/cost distribution of one assignment."""
    if n < 1:
        raise ValueError(f"sample count must be >= 1, got {n}")
    check_assignment(scenario, assignment)
    instances, values = sample_instance_overheads(scenario, n, seed)
    resolved = {(inst.factor_id, inst.key): values[:, j] for j, inst in enumerate(instances)}
    baselines = baseline_per_task(scenario.baseline)

    total_effort = np.zeros(n)
    total_cost = np.zeros(n)
    for task in scenario.tasks:
        site_id = assignment.mapping[task.id]
        multiplier = 1.0
        for _factor, value in multiplier_contributions(scenario, task.id, site_id, resolved):
            multiplier = multiplier + value
        collab = collaboration_overhead(scenario, task.id, assignment, resolved=resolved)
        effort = baselines[task.id] * multiplier * (1.0 + collab)
        cost = effort * scenario.site_by_id(site_id).cost_rate
        total_effort = total_effort + effort
        total_cost = total_cost + cost

    samples = tuple((float(e), float(c)) for e, c in zip(total_effort, total_cost))
    return CostDistribution(samples=samples, n=n, seed=seed)


def _measure_values(dist: CostDistribution, measure: str) -> list[float]:
    if measure == "effort":
        return [effort for effort, _cost in dist.samples]
    if measure == "cost":
        return [cost for _effort, cost in dist.samples]
    raise ValueError(f"measure must be 'effort' or 'cost', got {measure!r}")


def percentile(dist: CostDistribution, p: float, measure: str = "cost") -> float:
    """Nearest-rank percentile of the chosen measure."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"percentile must be in [0, 1], got {p}")
    values = sorted(_measure_values(dist, measure))
    if p == 0.0:
        return values[0]
    rank = math.ceil(p * len(values))
    return values[rank - 1]


def prob_exceeds(dist: CostDistribution, budget: float) -> float:
    """Fraction of samples whose total cost strictly exceeds the budget."""
    if budget < 0:
        raise ValueError(f"budget must be >= 0, got {budget}")
    over = sum(1 for _effort, cost in dist.samples if cost > budget)
    return over / dist.n
