"""Domain types for the task-allocation decision context.

A Scenario is one immutable value holding everything the engine needs: sites
with cost rates, tasks, pairwise coupling, the variation-factor catalog, the
quantified impact model, factor assessments, the baseline spec, the evaluation
goal, and any pinned (pre-decided) assignments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .baseline import SHARE_SUM_TOLERANCE, BaselineSpec
from .impact import ImpactModel

FACTOR_CATEGORIES = ("site", "site_pair", "task", "task_pair", "task_site")
CRITERION_IDS = ("total_cost", "total_effort", "cross_site_coupling")


class AssignmentError(ValueError):
    """Assignment is not a valid, pin-respecting total mapping."""


def canonical_pair(a: str, b: str) -> tuple[str, str]:
    """Unordered pair as a sorted tuple."""
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class Site:
    id: str
    name: str
    cost_rate: float  # thousand EUR per person-month
    factor_values: dict[str, str] = field(default_factory=dict)  # factor id -> level id


@dataclass(frozen=True)
class SitePairRelation:
    """Distance characteristics of one unordered site pair."""

    site_a: str
    site_b: str
    factor_values: dict[str, str] = field(default_factory=dict)

    def pair(self) -> tuple[str, str]:
        return canonical_pair(self.site_a, self.site_b)


@dataclass(frozen=True)
class Task:
    id: str
    name: str
    factor_values: dict[str, str] = field(default_factory=dict)


@dataclass(frozen=True)
class CouplingMatrix:
    """Symmetric task-pair coupling weights in [0, 1]; absent pair means 0."""

    entries: dict[tuple[str, str], float] = field(default_factory=dict)

    @staticmethod
    def from_pairs(pairs: dict[tuple[str, str], float]) -> CouplingMatrix:
        canonical: dict[tuple[str, str], float] = {}
        for (a, b), weight in pairs.items():
            key = canonical_pair(a, b)
            if key in canonical:
                raise ValueError(f"duplicate coupling entry for pair {key}")
            canonical[key] = weight
        return CouplingMatrix(canonical)

    def weight(self, task_a: str, task_b: str) -> float:
        if task_a == task_b:
            raise ValueError(f"coupling of task {task_a!r} with itself is undefined")
        return self.entries.get(canonical_pair(task_a, task_b), 0.0)


@dataclass(frozen=True)
class FactorDefinition:
    """One variation factor: an ordinal scale whose impact depends on the assignment.

    ``levels`` runs from best (index 0, nominal) to worst. ``category`` says
    which entity carries assessed values for the factor.
    """

    id: str
    name: str
    category: str
    levels: tuple[str, ...]


@dataclass(frozen=True)
class FactorAssessment:
    """Task-site factor values: (task id, site id) -> factor id -> level id."""

    task_site_values: dict[tuple[str, str], dict[str, str]] = field(default_factory=dict)


@dataclass(frozen=True)
class GqmGoal:
    """Evaluation goal: who decides, in what context, weighting which criteria."""

    viewpoint: str
    context_note: str
    criteria: tuple[tuple[str, float], ...]  # (criterion id, weight >= 0)


@dataclass(frozen=True)
class Assignment:
    """Total mapping task id -> site id."""

    mapping: dict[str, str] = field(default_factory=dict)


@dataclass(frozen=True)
class Scenario:
    sites: tuple[Site, ...] = ()
    site_pairs: tuple[SitePairRelation, ...] = ()
    tasks: tuple[Task, ...] = ()
    coupling: CouplingMatrix = field(default_factory=CouplingMatrix)
    catalog: tuple[FactorDefinition, ...] = ()
    impact_model: ImpactModel = field(default_factory=ImpactModel)
    assessment: FactorAssessment = field(default_factory=FactorAssessment)
    baseline: BaselineSpec = field(default_factory=lambda: BaselineSpec(mode="direct"))
    goal: GqmGoal = GqmGoal("", "", (("total_cost", 1.0),))
    pinned: dict[str, str] = field(default_factory=dict)
    development_type: str | None = None

    def site_by_id(self, site_id: str) -> Site:
        for site in self.sites:
            if site.id == site_id:
                return site
        raise KeyError(f"unknown site {site_id!r}")

    def task_by_id(self, task_id: str) -> Task:
        for task in self.tasks:
            if task.id == task_id:
                return task
        raise KeyError(f"unknown task {task_id!r}")

    def factor_by_id(self, factor_id: str) -> FactorDefinition:
        for factor in self.catalog:
            if factor.id == factor_id:
                return factor
        raise KeyError(f"unknown factor {factor_id!r}")

    def pair_relation(self, site_a: str, site_b: str) -> SitePairRelation | None:
        key = canonical_pair(site_a, site_b)
        for rel in self.site_pairs:
            if rel.pair() == key:
                return rel
        return None

    def site_ids(self) -> tuple[str, ...]:
        return tuple(site.id for site in self.sites)

    def task_ids(self) -> tuple[str, ...]:
        return tuple(task.id for task in self.tasks)


def check_assignment(scenario: Scenario, assignment: Assignment) -> None:
    """Raise AssignmentError unless the assignment is total, known, and pin-respecting."""
    task_ids = set(scenario.task_ids())
    site_ids = set(scenario.site_ids())
    for task_id in scenario.task_ids():
        if task_id not in assignment.mapping:
            raise AssignmentError(f"unassigned_task: task {task_id!r} has no site")
    for task_id, site_id in assignment.mapping.items():
        if task_id not in task_ids:
            raise AssignmentError(f"unknown_task: assignment names task {task_id!r}")
        if site_id not in site_ids:
            raise AssignmentError(f"unknown_site: task {task_id!r} assigned to unknown site {site_id!r}")
    for task_id, site_id in scenario.pinned.items():
        if assignment.mapping.get(task_id) != site_id:
            raise AssignmentError(
                f"pin_violated: task {task_id!r} is pinned to {site_id!r}, "
                f"got {assignment.mapping.get(task_id)!r}"
            )


@dataclass(frozen=True)
class Violation:
    code: str
    message: str
    path: str = ""

    def __str__(self) -> str:
        where = f" at {self.path}" if self.path else ""
        return f"[{self.code}]{where}: {self.message}"


def _is_finite(x) -> bool:
    return isinstance(x, (int, float)) and not isinstance(x, bool) and math.isfinite(x)


def _check_factor_values(
    scenario: Scenario,
    values: dict[str, str],
    expected_category: str,
    path: str,
    out: list[Violation],
) -> None:
    factors = {f.id: f for f in scenario.catalog}
    for factor_id, level in values.items():
        factor = factors.get(factor_id)
        if factor is None:
            out.append(Violation("unknown_factor", f"factor {factor_id!r} is not in the catalog", path))
            continue
        if factor.category != expected_category:
            out.append(
                Violation(
                    "wrong_category",
                    f"factor {factor_id!r} has category {factor.category!r}, expected {expected_category!r}",
                    path,
                )
            )
        if level not in factor.levels:
            out.append(
                Violation("unknown_level", f"level {level!r} is not defined for factor {factor_id!r}", path)
            )


def validate_scenario(scenario: Scenario) -> list[Violation]:
    """Every invariant violation in the scenario; empty means valid.

    Violations are data, not exceptions: callers decide whether to refuse.
    """
    out: list[Violation] = []
    factors = {f.id: f for f in scenario.catalog}

    seen_factor_ids: set[str] = set()
    for i, factor in enumerate(scenario.catalog):
        path = f"catalog[{i}]"
        if factor.id in seen_factor_ids:
            out.append(Violation("duplicate_id", f"factor id {factor.id!r} appears twice", path))
        seen_factor_ids.add(factor.id)
        if factor.category not in FACTOR_CATEGORIES:
            out.append(Violation("bad_category", f"category {factor.category!r} is not one of {FACTOR_CATEGORIES}", path))
        if len(factor.levels) < 1:
            out.append(Violation("no_levels", f"factor {factor.id!r} has no levels", path))
        if len(set(factor.levels)) != len(factor.levels):
            out.append(Violation("duplicate_level", f"factor {factor.id!r} has duplicate level ids", path))

    if not scenario.sites:
        out.append(Violation("no_sites", "scenario has no sites", "sites"))
    if not scenario.tasks:
        out.append(Violation("no_tasks", "scenario has no tasks", "tasks"))

    seen_site_ids: set[str] = set()
    for i, site in enumerate(scenario.sites):
        path = f"sites[{i}]"
        if site.id in seen_site_ids:
            out.append(Violation("duplicate_id", f"site id {site.id!r} appears twice", path))
        seen_site_ids.add(site.id)
        if not (_is_finite(site.cost_rate) and site.cost_rate > 0):
            out.append(Violation("cost_rate_nonpositive", f"site {site.id!r} cost_rate must be > 0, got {site.cost_rate!r}", path))
        _check_factor_values(scenario, site.factor_values, "site", path, out)

    site_ids = {s.id for s in scenario.sites}
    seen_pairs: set[tuple[str, str]] = set()
    for i, rel in enumerate(scenario.site_pairs):
        path = f"site_pairs[{i}]"
        if rel.site_a == rel.site_b:
            out.append(Violation("self_pair", f"site pair relates {rel.site_a!r} to itself", path))
            continue
        for sid in (rel.site_a, rel.site_b):
            if sid not in site_ids:
                out.append(Violation("unknown_site", f"site pair references unknown site {sid!r}", path))
        if rel.pair() in seen_pairs:
            out.append(Violation("duplicate_pair", f"site pair {rel.pair()} stored twice", path))
        seen_pairs.add(rel.pair())
        _check_factor_values(scenario, rel.factor_values, "site_pair", path, out)

    seen_task_ids: set[str] = set()
    for i, task in enumerate(scenario.tasks):
        path = f"tasks[{i}]"
        if task.id in seen_task_ids:
            out.append(Violation("duplicate_id", f"task id {task.id!r} appears twice", path))
        seen_task_ids.add(task.id)
        _check_factor_values(scenario, task.factor_values, "task", path, out)

    task_ids = {t.id for t in scenario.tasks}
    for (a, b), weight in scenario.coupling.entries.items():
        path = f"coupling[{a},{b}]"
        if a == b:
            out.append(Violation("self_pair", f"coupling of task {a!r} with itself", path))
        for tid in (a, b):
            if tid not in task_ids:
                out.append(Violation("unknown_task", f"coupling references unknown task {tid!r}", path))
        if not (_is_finite(weight) and 0.0 <= weight <= 1.0):
            out.append(Violation("coupling_out_of_range", f"coupling weight {weight!r} outside [0, 1]", path))

    model = scenario.impact_model
    if not (_is_finite(model.pair_scale) and model.pair_scale >= 0):
        out.append(Violation("bad_pair_scale", f"pair_scale must be >= 0, got {model.pair_scale!r}", "impact_model"))
    for (factor_id, level), tri in model.overheads.items():
        path = f"impact_model[{factor_id},{level}]"
        factor = factors.get(factor_id)
        if factor is None:
            out.append(Violation("unknown_factor", f"overhead for unknown factor {factor_id!r}", path))
            continue
        if level not in factor.levels:
            out.append(Violation("unknown_level", f"overhead for unknown level {level!r} of {factor_id!r}", path))
            continue
        if not all(_is_finite(v) for v in (tri.min_pct, tri.likely_pct, tri.max_pct)) or not tri.is_valid():
            out.append(
                Violation("bad_triangle", f"triangle {tri} violates 0 <= min <= likely <= max", path)
            )
        if factor.levels and level == factor.levels[0] and (
            tri.min_pct != 0 or tri.likely_pct != 0 or tri.max_pct != 0
        ):
            out.append(Violation("nonzero_nominal", f"nominal level of {factor_id!r} must have zero overhead", path))
    for factor in scenario.catalog:
        for level in factor.levels:
            if (factor.id, level) not in model.overheads:
                out.append(
                    Violation(
                        "missing_impact_entry",
                        f"no overhead entry for factor {factor.id!r} level {level!r}",
                        "impact_model",
                    )
                )

    for (task_id, site_id), values in scenario.assessment.task_site_values.items():
        path = f"assessment[{task_id},{site_id}]"
        if task_id not in task_ids:
            out.append(Violation("unknown_task", f"assessment references unknown task {task_id!r}", path))
        if site_id not in site_ids:
            out.append(Violation("unknown_site", f"assessment references unknown site {site_id!r}", path))
        _check_factor_values(scenario, values, "task_site", path, out)

    spec = scenario.baseline
    path = "baseline"
    if spec.mode not in ("direct", "cocomo"):
        out.append(Violation("bad_mode", f"baseline mode {spec.mode!r} is not direct|cocomo", path))
    elif spec.mode == "direct":
        if spec.direct_total_pm is None or not (_is_finite(spec.direct_total_pm) and spec.direct_total_pm > 0):
            out.append(Violation("bad_total", f"direct baseline needs direct_total_pm > 0, got {spec.direct_total_pm!r}", path))
    else:
        if spec.size_kloc is None or not (_is_finite(spec.size_kloc) and spec.size_kloc > 0):
            out.append(Violation("bad_total", f"cocomo baseline needs size_kloc > 0, got {spec.size_kloc!r}", path))
        if spec.scale_factor_sum is not None and not (_is_finite(spec.scale_factor_sum) and spec.scale_factor_sum >= 0):
            out.append(Violation("bad_cocomo_params", f"scale_factor_sum must be >= 0, got {spec.scale_factor_sum!r}", path))
        if spec.nominal_multiplier_product is not None and not (
            _is_finite(spec.nominal_multiplier_product) and spec.nominal_multiplier_product > 0
        ):
            out.append(Violation("bad_cocomo_params", f"nominal_multiplier_product must be > 0, got {spec.nominal_multiplier_product!r}", path))
    if set(spec.shares) != task_ids:
        missing = sorted(task_ids - set(spec.shares))
        extra = sorted(set(spec.shares) - task_ids)
        out.append(
            Violation(
                "share_task_mismatch",
                f"baseline shares must cover exactly the scenario tasks (missing {missing}, extra {extra})",
                path,
            )
        )
    bad_share = False
    for task_id, share in spec.shares.items():
        if not (_is_finite(share) and share > 0):
            out.append(Violation("share_nonpositive", f"share for {task_id!r} must be > 0, got {share!r}", path))
            bad_share = True
    if spec.shares and not bad_share:
        share_sum = sum(spec.shares.values())
        if abs(share_sum - 1.0) > SHARE_SUM_TOLERANCE:
            out.append(Violation("shares_sum", f"shares sum to {share_sum!r}, expected 1", path))

    goal = scenario.goal
    if not goal.criteria:
        out.append(Violation("goal_no_criteria", "goal has no criteria", "goal"))
    else:
        for criterion, weight in goal.criteria:
            if criterion not in CRITERION_IDS:
                out.append(Violation("bad_criterion", f"criterion {criterion!r} is not one of {CRITERION_IDS}", "goal"))
            if not (_is_finite(weight) and weight >= 0):
                out.append(Violation("negative_weight", f"weight for {criterion!r} must be >= 0, got {weight!r}", "goal"))
        if all(w == 0 for _c, w in goal.criteria):
            out.append(Violation("goal_zero_weights", "criterion weights are all zero", "goal"))

    for task_id, site_id in scenario.pinned.items():
        path = f"pinned[{task_id}]"
        if task_id not in task_ids:
            out.append(Violation("unknown_task", f"pin references unknown task {task_id!r}", path))
        if site_id not in site_ids:
            out.append(Violation("unknown_site", f"pin references unknown site {site_id!r}", path))

    return out


def scenario_warnings(scenario: Scenario) -> list[Violation]:
    """Advisory findings that do not invalidate the scenario.

    Missing site-pair relations fall back to nominal (no distance overhead) at
    evaluation, and missing task-site assessments only fail if an assignment
    actually places that task there.
    """
    out: list[Violation] = []
    pair_ids = {rel.pair() for rel in scenario.site_pairs}
    sites = scenario.site_ids()
    for i, a in enumerate(sites):
        for b in sites[i + 1 :]:
            if canonical_pair(a, b) not in pair_ids:
                out.append(
                    Violation(
                        "missing_pair_relation",
                        f"sites {a!r} and {b!r} have no pair relation; distance overheads default to nominal",
                        "site_pairs",
                    )
                )
    ts_factors = [f.id for f in scenario.catalog if f.category == "task_site"]
    if ts_factors:
        for task_id in scenario.task_ids():
            for site_id in sites:
                values = scenario.assessment.task_site_values.get((task_id, site_id), {})
                for factor_id in ts_factors:
                    if factor_id not in values:
                        out.append(
                            Violation(
                                "missing_task_site_assessment",
                                f"factor {factor_id!r} unassessed for task {task_id!r} on site {site_id!r}; "
                                "assignments using this pair will fail to evaluate",
                                "assessment",
                            )
                        )
    return out
