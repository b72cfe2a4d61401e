"""Scenario file format and result payloads.

One schema, three facades: scenario files on disk, the CLI's machine output
(``--format=tree``), and the HTTP API all speak the same JSON tree. Parsing
validates fully; a parsed scenario is ready to evaluate.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .baseline import BaselineSpec
from .evaluator import ComparisonReport, EvaluationResult
from .impact import ImpactModel, TriangularOverhead
from .model import (
    Assignment,
    AssignmentError,
    CouplingMatrix,
    FactorAssessment,
    FactorDefinition,
    GqmGoal,
    Scenario,
    Site,
    SitePairRelation,
    Task,
    Violation,
    check_assignment,
    validate_scenario,
)
from .risk import CostDistribution, percentile, prob_exceeds

SCHEMA_VERSION = 1
SUPPORTED_VERSIONS = (1,)


class ScenarioParseError(ValueError):
    """Document cannot be turned into a valid scenario."""

    def __init__(self, message: str, violations: list[Violation] | None = None):
        super().__init__(message)
        self.violations = violations or []


@dataclass(frozen=True)
class ScenarioDocument:
    """A scenario plus its named assignment alternatives, as stored on disk."""

    scenario: Scenario
    alternatives: dict[str, Assignment] = field(default_factory=dict)
    schema_version: int = SCHEMA_VERSION


# -- serialization -----------------------------------------------------------


def scenario_to_tree(scenario: Scenario, alternatives: dict[str, Assignment] | None = None) -> dict:
    tree: dict = {"schema_version": SCHEMA_VERSION}
    if scenario.development_type is not None:
        tree["development_type"] = scenario.development_type
    tree["sites"] = [
        {"id": s.id, "name": s.name, "cost_rate": s.cost_rate, "factor_values": dict(s.factor_values)}
        for s in scenario.sites
    ]
    tree["site_pairs"] = [
        {"site_a": r.site_a, "site_b": r.site_b, "factor_values": dict(r.factor_values)}
        for r in scenario.site_pairs
    ]
    tree["tasks"] = [
        {"id": t.id, "name": t.name, "factor_values": dict(t.factor_values)} for t in scenario.tasks
    ]
    tree["coupling"] = [
        {"task_a": a, "task_b": b, "weight": w}
        for (a, b), w in sorted(scenario.coupling.entries.items())
    ]
    tree["catalog"] = [
        {"id": f.id, "name": f.name, "category": f.category, "levels": list(f.levels)}
        for f in scenario.catalog
    ]
    tree["impact_model"] = {
        "pair_scale": scenario.impact_model.pair_scale,
        "overheads": [
            {
                "factor": factor,
                "level": level,
                "min_pct": tri.min_pct,
                "likely_pct": tri.likely_pct,
                "max_pct": tri.max_pct,
            }
            for (factor, level), tri in sorted(scenario.impact_model.overheads.items())
        ],
    }
    tree["assessment"] = [
        {"task": task, "site": site, "factor_values": dict(values)}
        for (task, site), values in sorted(scenario.assessment.task_site_values.items())
    ]
    spec = scenario.baseline
    baseline: dict = {"mode": spec.mode}
    if spec.direct_total_pm is not None:
        baseline["direct_total_pm"] = spec.direct_total_pm
    if spec.size_kloc is not None:
        baseline["size_kloc"] = spec.size_kloc
    if spec.scale_factor_sum is not None:
        baseline["scale_factor_sum"] = spec.scale_factor_sum
    if spec.nominal_multiplier_product is not None:
        baseline["nominal_multiplier_product"] = spec.nominal_multiplier_product
    baseline["shares"] = {task: share for task, share in sorted(spec.shares.items())}
    tree["baseline"] = baseline
    tree["goal"] = {
        "viewpoint": scenario.goal.viewpoint,
        "context_note": scenario.goal.context_note,
        "criteria": [{"criterion": c, "weight": w} for c, w in scenario.goal.criteria],
    }
    tree["pinned"] = {task: site for task, site in sorted(scenario.pinned.items())}
    if alternatives:
        tree["alternatives"] = {
            label: dict(sorted(assignment.mapping.items())) for label, assignment in alternatives.items()
        }
    return tree


def serialize_scenario(scenario: Scenario, alternatives: dict[str, Assignment] | None = None) -> str:
    return json.dumps(scenario_to_tree(scenario, alternatives), indent=2, ensure_ascii=False) + "\n"


def serialize_document(document: ScenarioDocument) -> str:
    return serialize_scenario(document.scenario, document.alternatives)


# -- parsing -----------------------------------------------------------------


def _fail(message: str, path: str, code: str = "bad_structure") -> ScenarioParseError:
    return ScenarioParseError(f"{path}: {message}", [Violation(code, message, path)])


def _as_object(value, path: str) -> dict:
    if not isinstance(value, dict):
        raise _fail(f"expected an object, got {type(value).__name__}", path)
    return value


def _as_list(value, path: str) -> list:
    if not isinstance(value, list):
        raise _fail(f"expected a list, got {type(value).__name__}", path)
    return value


def _get_str(obj: dict, key: str, path: str) -> str:
    value = obj.get(key)
    if not isinstance(value, str):
        raise _fail(f"expected string field {key!r}", f"{path}.{key}")
    return value


def _get_number(obj: dict, key: str, path: str, default=None) -> float:
    value = obj.get(key, default)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise _fail(f"expected numeric field {key!r}", f"{path}.{key}")
    return float(value)


def _opt_number(obj: dict, key: str, path: str) -> float | None:
    if key not in obj or obj[key] is None:
        return None
    return _get_number(obj, key, path)


def _get_factor_values(obj: dict, path: str) -> dict[str, str]:
    raw = obj.get("factor_values", {})
    values = _as_object(raw, f"{path}.factor_values")
    out: dict[str, str] = {}
    for factor, level in values.items():
        if not isinstance(level, str):
            raise _fail(f"level for factor {factor!r} must be a string", f"{path}.factor_values")
        out[factor] = level
    return out


def tree_to_scenario(tree: dict) -> Scenario:
    """Build a Scenario from a parsed tree; structural errors only, no validation."""
    root = _as_object(tree, "$")
    sites = []
    for i, raw in enumerate(_as_list(root.get("sites", []), "sites")):
        path = f"sites[{i}]"
        entry = _as_object(raw, path)
        sites.append(
            Site(
                id=_get_str(entry, "id", path),
                name=_get_str(entry, "name", path),
                cost_rate=_get_number(entry, "cost_rate", path),
                factor_values=_get_factor_values(entry, path),
            )
        )
    site_pairs = []
    for i, raw in enumerate(_as_list(root.get("site_pairs", []), "site_pairs")):
        path = f"site_pairs[{i}]"
        entry = _as_object(raw, path)
        site_pairs.append(
            SitePairRelation(
                site_a=_get_str(entry, "site_a", path),
                site_b=_get_str(entry, "site_b", path),
                factor_values=_get_factor_values(entry, path),
            )
        )
    tasks = []
    for i, raw in enumerate(_as_list(root.get("tasks", []), "tasks")):
        path = f"tasks[{i}]"
        entry = _as_object(raw, path)
        tasks.append(
            Task(
                id=_get_str(entry, "id", path),
                name=_get_str(entry, "name", path),
                factor_values=_get_factor_values(entry, path),
            )
        )

    coupling_entries: dict[tuple[str, str], float] = {}
    for i, raw in enumerate(_as_list(root.get("coupling", []), "coupling")):
        entry = _as_object(raw, f"coupling[{i}]")
        a = _get_str(entry, "task_a", f"coupling[{i}]")
        b = _get_str(entry, "task_b", f"coupling[{i}]")
        weight = _get_number(entry, "weight", f"coupling[{i}]")
        key = (a, b) if a <= b else (b, a)
        if key in coupling_entries:
            raise _fail(f"coupling pair {key} appears twice", f"coupling[{i}]", "duplicate_pair")
        coupling_entries[key] = weight
    coupling = CouplingMatrix(coupling_entries)

    catalog = []
    for i, raw in enumerate(_as_list(root.get("catalog", []), "catalog")):
        entry = _as_object(raw, f"catalog[{i}]")
        levels = _as_list(entry.get("levels", []), f"catalog[{i}].levels")
        for level in levels:
            if not isinstance(level, str):
                raise _fail("levels must be strings", f"catalog[{i}].levels")
        catalog.append(
            FactorDefinition(
                id=_get_str(entry, "id", f"catalog[{i}]"),
                name=_get_str(entry, "name", f"catalog[{i}]"),
                category=_get_str(entry, "category", f"catalog[{i}]"),
                levels=tuple(levels),
            )
        )

    model_obj = _as_object(root.get("impact_model", {}), "impact_model")
    overheads: dict[tuple[str, str], TriangularOverhead] = {}
    for i, raw in enumerate(_as_list(model_obj.get("overheads", []), "impact_model.overheads")):
        entry = _as_object(raw, f"impact_model.overheads[{i}]")
        path = f"impact_model.overheads[{i}]"
        key = (_get_str(entry, "factor", path), _get_str(entry, "level", path))
        if key in overheads:
            raise _fail(f"duplicate overhead entry for {key}", path, "duplicate_pair")
        overheads[key] = TriangularOverhead(
            min_pct=_get_number(entry, "min_pct", path),
            likely_pct=_get_number(entry, "likely_pct", path),
            max_pct=_get_number(entry, "max_pct", path),
        )
    impact_model = ImpactModel(
        overheads=overheads,
        pair_scale=_get_number(model_obj, "pair_scale", "impact_model", default=1.0),
    )

    task_site_values: dict[tuple[str, str], dict[str, str]] = {}
    for i, raw in enumerate(_as_list(root.get("assessment", []), "assessment")):
        entry = _as_object(raw, f"assessment[{i}]")
        path = f"assessment[{i}]"
        key = (_get_str(entry, "task", path), _get_str(entry, "site", path))
        if key in task_site_values:
            raise _fail(f"duplicate assessment for {key}", path, "duplicate_pair")
        task_site_values[key] = _get_factor_values(entry, path)

    baseline_obj = _as_object(root.get("baseline", {}), "baseline")
    shares_obj = _as_object(baseline_obj.get("shares", {}), "baseline.shares")
    shares = {}
    for task, share in shares_obj.items():
        if isinstance(share, bool) or not isinstance(share, (int, float)):
            raise _fail(f"share for {task!r} must be numeric", "baseline.shares")
        shares[task] = float(share)
    baseline = BaselineSpec(
        mode=_get_str(baseline_obj, "mode", "baseline") if "mode" in baseline_obj else "direct",
        shares=shares,
        direct_total_pm=_opt_number(baseline_obj, "direct_total_pm", "baseline"),
        size_kloc=_opt_number(baseline_obj, "size_kloc", "baseline"),
        scale_factor_sum=_opt_number(baseline_obj, "scale_factor_sum", "baseline"),
        nominal_multiplier_product=_opt_number(baseline_obj, "nominal_multiplier_product", "baseline"),
    )

    goal_obj = _as_object(root.get("goal", {}), "goal")
    criteria = []
    for i, raw in enumerate(_as_list(goal_obj.get("criteria", []), "goal.criteria")):
        entry = _as_object(raw, f"goal.criteria[{i}]")
        criteria.append(
            (
                _get_str(entry, "criterion", f"goal.criteria[{i}]"),
                _get_number(entry, "weight", f"goal.criteria[{i}]"),
            )
        )
    goal = GqmGoal(
        viewpoint=goal_obj.get("viewpoint", "") if isinstance(goal_obj.get("viewpoint", ""), str) else "",
        context_note=goal_obj.get("context_note", "")
        if isinstance(goal_obj.get("context_note", ""), str)
        else "",
        criteria=tuple(criteria),
    )

    pinned_obj = _as_object(root.get("pinned", {}), "pinned")
    pinned = {}
    for task, site in pinned_obj.items():
        if not isinstance(site, str):
            raise _fail(f"pin for task {task!r} must name a site", "pinned")
        pinned[task] = site

    development_type = root.get("development_type")
    if development_type is not None and not isinstance(development_type, str):
        raise _fail("development_type must be a string", "development_type")

    return Scenario(
        sites=tuple(sites),
        site_pairs=tuple(site_pairs),
        tasks=tuple(tasks),
        coupling=coupling,
        catalog=tuple(catalog),
        impact_model=impact_model,
        assessment=FactorAssessment(task_site_values),
        baseline=baseline,
        goal=goal,
        pinned=pinned,
        development_type=development_type,
    )


def document_from_tree(tree: dict) -> ScenarioDocument:
    """Validated document from a parsed tree; raises ScenarioParseError."""
    root = _as_object(tree, "$")
    version = root.get("schema_version")
    if not isinstance(version, int) or isinstance(version, bool):
        raise _fail("missing or non-integer schema_version", "schema_version", "unsupported_version")
    if version not in SUPPORTED_VERSIONS:
        raise _fail(
            f"schema_version {version} not supported (supported: {list(SUPPORTED_VERSIONS)})",
            "schema_version",
            "unsupported_version",
        )
    scenario = tree_to_scenario(root)
    violations = validate_scenario(scenario)
    if violations:
        summary = "; ".join(str(v) for v in violations[:5])
        raise ScenarioParseError(f"scenario is invalid: {summary}", violations)

    alternatives: dict[str, Assignment] = {}
    raw_alternatives = root.get("alternatives", {})
    for label, mapping in _as_object(raw_alternatives, "alternatives").items():
        path = f"alternatives[{label}]"
        mapping_obj = _as_object(mapping, path)
        for task, site in mapping_obj.items():
            if not isinstance(site, str):
                raise _fail(f"assignment for task {task!r} must name a site", path)
        assignment = Assignment(dict(mapping_obj))
        try:
            check_assignment(scenario, assignment)
        except AssignmentError as exc:
            raise ScenarioParseError(
                f"{path}: {exc}", [Violation("invalid_alternative", str(exc), path)]
            ) from exc
        alternatives[label] = assignment
    return ScenarioDocument(scenario=scenario, alternatives=alternatives, schema_version=version)


def parse_document(text: str) -> ScenarioDocument:
    """Parse and validate a scenario document from its on-disk text."""
    try:
        tree = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioParseError(
            f"syntax error at line {exc.lineno}, column {exc.colno}: {exc.msg}",
            [Violation("syntax_error", exc.msg, f"line {exc.lineno}, column {exc.colno}")],
        ) from exc
    return document_from_tree(tree)


def parse_scenario(text: str) -> Scenario:
    """Parse a document and return its fully validated scenario."""
    return parse_document(text).scenario


# -- result payloads ---------------------------------------------------------


def assignment_to_tree(assignment: Assignment) -> dict[str, str]:
    return dict(sorted(assignment.mapping.items()))


def evaluation_to_tree(result: EvaluationResult) -> dict:
    return {
        "per_task": [
            {
                "task": r.task,
                "site": r.site,
                "effort_pm": r.effort_pm,
                "cost": r.cost,
                "baseline_pm": r.baseline_pm,
                "site_multiplier": r.site_multiplier,
                "collab_overhead": r.collab_overhead,
                "factor_breakdown": dict(r.factor_breakdown),
            }
            for r in result.per_task
        ],
        "total_effort_pm": result.total_effort_pm,
        "total_cost": result.total_cost,
        "criteria_values": dict(result.criteria_values),
    }


def comparison_to_tree(report: ComparisonReport) -> dict:
    return {
        "alternatives": [
            {
                "label": label,
                "assignment": assignment_to_tree(assignment),
                "result": evaluation_to_tree(result),
            }
            for label, assignment, result in report.alternatives
        ],
        "scores": dict(report.scores),
        "ranking": list(report.ranking),
        "winner": report.ranking[0],
    }


def search_result_to_tree(result) -> dict:
    return {
        "best": assignment_to_tree(result.best),
        "best_result": evaluation_to_tree(result.best_result),
        "best_score": result.best_score,
        "evaluations": result.evaluations,
        "exhaustive": result.exhaustive,
    }


def distribution_to_tree(
    dist: CostDistribution,
    budget: float | None = None,
    percentiles: tuple[float, ...] = (0.1, 0.5, 0.9),
    include_samples: bool = False,
) -> dict:
    efforts = [e for e, _c in dist.samples]
    costs = [c for _e, c in dist.samples]
    tree: dict = {
        "n": dist.n,
        "seed": dist.seed,
        "effort_pm": {
            "mean": sum(efforts) / dist.n,
            "min": min(efforts),
            "max": max(efforts),
            "percentiles": {str(p): percentile(dist, p, "effort") for p in percentiles},
        },
        "cost": {
            "mean": sum(costs) / dist.n,
            "min": min(costs),
            "max": max(costs),
            "percentiles": {str(p): percentile(dist, p, "cost") for p in percentiles},
        },
    }
    if budget is not None:
        tree["budget"] = budget
        tree["prob_cost_exceeds_budget"] = prob_exceeds(dist, budget)
    if include_samples:
        tree["samples"] = [[e, c] for e, c in dist.samples]
    return tree
