"""Causal overhead model: factor levels -> effort overhead percentages.

Every assessed (factor, entity) value resolves to an effort-overhead fraction,
either the most-likely point (deterministic mode) or a draw from the expert
triangle (sampled mode). Overheads compose additively inside a task's site
multiplier; cross-site collaboration overhead is charged per coupled partner,
scaled by the coupling weight.

Sampling contract: one uniform draw per assessed (factor, entity) instance per
iteration, in the canonical instance order of `overhead_instances`. Iteration
``i`` under seed ``s`` reads its uniforms from an independent counter-based
substream keyed ``(s, i)``, so samples do not depend on execution order or on
how many iterations run.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Iterable

import numpy as np
from numpy.random import Generator, Philox

if TYPE_CHECKING:
    from .model import Assignment, Scenario

DETERMINISTIC_KIND = "deterministic"
SAMPLED_KIND = "sampled"


class EvaluationError(ValueError):
    """A required factor assessment or impact entry is missing."""


@dataclass(frozen=True)
class TriangularOverhead:
    """Expert estimate of a factor level's effort overhead, in percent."""

    min_pct: float
    likely_pct: float
    max_pct: float

    def is_valid(self) -> bool:
        return 0 <= self.min_pct <= self.likely_pct <= self.max_pct

    def mean_pct(self) -> float:
        return (self.min_pct + self.likely_pct + self.max_pct) / 3.0


ZERO_OVERHEAD = TriangularOverhead(0.0, 0.0, 0.0)


@dataclass(frozen=True)
class ImpactModel:
    """Quantified causal model: (factor id, level id) -> overhead triangle.

    ``pair_scale`` calibrates how strongly coupling translates distance
    overheads into collaboration overhead; the site-pair factors themselves
    carry the triangles.
    """

    overheads: dict[tuple[str, str], TriangularOverhead] = field(default_factory=dict)
    pair_scale: float = 1.0


@dataclass(frozen=True)
class EvaluationMode:
    kind: str = DETERMINISTIC_KIND
    sample_seed: int = 0


DETERMINISTIC = EvaluationMode(DETERMINISTIC_KIND)


def sampled(seed: int) -> EvaluationMode:
    return EvaluationMode(SAMPLED_KIND, seed)


def triangular_icdf(u, lo, mode, hi):
    """Inverse CDF of the triangular distribution; works on scalars and arrays.

    Degenerate triangles (lo == hi) return lo for any u.
    """
    lo = np.asarray(lo, dtype=np.float64)
    mode = np.asarray(mode, dtype=np.float64)
    hi = np.asarray(hi, dtype=np.float64)
    u = np.asarray(u, dtype=np.float64)
    span = hi - lo
    with np.errstate(divide="ignore", invalid="ignore"):
        split = np.where(span > 0, (mode - lo) / np.where(span > 0, span, 1.0), 1.0)
        left = lo + np.sqrt(u * span * (mode - lo))
        right = hi - np.sqrt((1.0 - u) * span * (hi - mode))
    out = np.where(span > 0, np.where(u < split, left, right), lo)
    if out.ndim == 0:
        return float(out)
    return out


def resolve_overhead(tri: TriangularOverhead, mode: EvaluationMode, draw: float = 0.0) -> float:
    """Overhead fraction for one triangle: likely/100, or a triangular sample."""
    if mode.kind == DETERMINISTIC_KIND:
        return tri.likely_pct / 100.0
    return triangular_icdf(draw, tri.min_pct, tri.likely_pct, tri.max_pct) / 100.0


@dataclass(frozen=True)
class OverheadInstance:
    """One assessed (factor, entity) value and its triangle.

    ``key`` is the entity key: a site id, a canonical (site, site) pair, a task
    id, or a (task, site) pair.
    """

    factor_id: str
    key: object
    triangle: TriangularOverhead


def overhead_instances(scenario: Scenario) -> tuple[OverheadInstance, ...]:
    """All assessed overhead instances, in canonical order.

    Order: sites x site factors, pair relations x pair factors, tasks x task
    factors, assessed (task, site) pairs x task-site factors; entities in
    scenario order, factors in catalog order. This order defines which uniform
    draw belongs to which instance in sampled mode.
    """
    model = scenario.impact_model
    instances: list[OverheadInstance] = []

    def tri_for(factor_id: str, level: str, entity: object) -> TriangularOverhead:
        tri = model.overheads.get((factor_id, level))
        if tri is None:
            raise EvaluationError(
                f"impact model has no overhead for factor {factor_id!r} level {level!r} (at {entity!r})"
            )
        return tri

    site_factors = [f for f in scenario.catalog if f.category == "site"]
    pair_factors = [f for f in scenario.catalog if f.category == "site_pair"]
    task_factors = [f for f in scenario.catalog if f.category == "task"]
    ts_factors = [f for f in scenario.catalog if f.category == "task_site"]

    for site in scenario.sites:
        for factor in site_factors:
            level = site.factor_values.get(factor.id)
            if level is not None:
                instances.append(OverheadInstance(factor.id, site.id, tri_for(factor.id, level, site.id)))
    for rel in scenario.site_pairs:
        pair = rel.pair()
        for factor in pair_factors:
            level = rel.factor_values.get(factor.id)
            if level is not None:
                instances.append(OverheadInstance(factor.id, pair, tri_for(factor.id, level, pair)))
    for task in scenario.tasks:
        for factor in task_factors:
            level = task.factor_values.get(factor.id)
            if level is not None:
                instances.append(OverheadInstance(factor.id, task.id, tri_for(factor.id, level, task.id)))
    for task in scenario.tasks:
        for site in scenario.sites:
            values = scenario.assessment.task_site_values.get((task.id, site.id))
            if values is None:
                continue
            for factor in ts_factors:
                level = values.get(factor.id)
                if level is not None:
                    key = (task.id, site.id)
                    instances.append(OverheadInstance(factor.id, key, tri_for(factor.id, level, key)))
    return tuple(instances)


def iteration_uniforms(seed: int, iteration: int, count: int) -> np.ndarray:
    """The ``count`` uniforms of iteration ``iteration`` under ``seed``."""
    rng = Generator(Philox(key=np.uint64(seed), counter=iteration << 128))
    return rng.random(count)


def resolve_instances(
    scenario: Scenario, mode: EvaluationMode, iteration: int = 0
) -> dict[tuple[str, object], float]:
    """Resolved overhead fraction per (factor id, entity key) instance."""
    instances = overhead_instances(scenario)
    if mode.kind == DETERMINISTIC_KIND:
        return {(inst.factor_id, inst.key): inst.triangle.likely_pct / 100.0 for inst in instances}
    draws = iteration_uniforms(mode.sample_seed, iteration, len(instances))
    return {
        (inst.factor_id, inst.key): resolve_overhead(inst.triangle, mode, draws[i])
        for i, inst in enumerate(instances)
    }


ResolvedOverheads = dict[tuple[str, object], float]


def multiplier_contributions(
    scenario: Scenario, task_id: str, site_id: str, resolved: ResolvedOverheads
) -> list[tuple[str, float]]:
    """Per-factor overhead contributions to the (task, site) multiplier.

    Covers site, task, and task-site factors, in catalog order. A catalog
    factor that is applicable but unassessed is an evaluation error.
    """
    site = scenario.site_by_id(site_id)
    task = scenario.task_by_id(task_id)
    out: list[tuple[str, float]] = []
    for factor in scenario.catalog:
        if factor.category == "site":
            if factor.id not in site.factor_values:
                raise EvaluationError(f"site {site_id!r} has no assessment for factor {factor.id!r}")
            out.append((factor.id, resolved[(factor.id, site_id)]))
        elif factor.category == "task":
            if factor.id not in task.factor_values:
                raise EvaluationError(f"task {task_id!r} has no assessment for factor {factor.id!r}")
            out.append((factor.id, resolved[(factor.id, task_id)]))
        elif factor.category == "task_site":
            values = scenario.assessment.task_site_values.get((task_id, site_id))
            if values is None or factor.id not in values:
                raise EvaluationError(
                    f"no assessment for factor {factor.id!r} at task {task_id!r} on site {site_id!r}"
                )
            out.append((factor.id, resolved[(factor.id, (task_id, site_id))]))
    return out


def pair_overhead_contributions(
    scenario: Scenario, site_a: str, site_b: str, resolved: ResolvedOverheads
) -> list[tuple[str, float]]:
    """Per-factor distance overheads for a site pair, in catalog order.

    A pair without a stored relation, or a relation missing a factor value,
    falls back to nominal (zero overhead): co-located or unremarkable pairs
    need no elicitation.
    """
    rel = scenario.pair_relation(site_a, site_b)
    out: list[tuple[str, float]] = []
    for factor in scenario.catalog:
        if factor.category != "site_pair":
            continue
        if rel is None or factor.id not in rel.factor_values:
            out.append((factor.id, 0.0))
        else:
            out.append((factor.id, resolved[(factor.id, rel.pair())]))
    return out


def site_multiplier(
    scenario: Scenario,
    task_id: str,
    site_id: str,
    mode: EvaluationMode = DETERMINISTIC,
    resolved: ResolvedOverheads | None = None,
) -> float:
    """1 + the summed overheads of all site/task/task-site factors."""
    if resolved is None:
        resolved = resolve_instances(scenario, mode)
    mult = 1.0
    for _factor, value in multiplier_contributions(scenario, task_id, site_id, resolved):
        mult += value
    return mult


def collaboration_overhead(
    scenario: Scenario,
    task_id: str,
    assignment: Assignment,
    mode: EvaluationMode = DETERMINISTIC,
    resolved: ResolvedOverheads | None = None,
) -> float:
    """Cross-site communication overhead fraction for one task.

    Sums coupling(task, u) * pair_scale * (pair distance overheads) over every
    coupled partner u assigned to a different site. Co-located partners
    contribute nothing.
    """
    if resolved is None:
        resolved = resolve_instances(scenario, mode)
    own_site = assignment.mapping[task_id]
    scale = scenario.impact_model.pair_scale
    total = 0.0
    for other in scenario.tasks:
        if other.id == task_id:
            continue
        weight = scenario.coupling.weight(task_id, other.id)
        if weight == 0.0:
            continue
        other_site = assignment.mapping[other.id]
        if other_site == own_site:
            continue
        pair_sum = 0.0
        for _factor, value in pair_overhead_contributions(scenario, own_site, other_site, resolved):
            pair_sum += value
        total += weight * scale * pair_sum
    return total
