"""Decision support for allocating development tasks to distributed sites."""

from .baseline import BaselineSpec, baseline_per_task, cocomo_effort
from .catalog import builtin_factor_catalog
from .demo import demo_alternatives, demo_scenario
from .evaluator import (
    ComparisonReport,
    EvaluationResult,
    TaskResult,
    compare,
    cross_site_coupling,
    evaluate,
    weighted_score,
)
from .impact import (
    DETERMINISTIC,
    EvaluationError,
    EvaluationMode,
    ImpactModel,
    TriangularOverhead,
    collaboration_overhead,
    resolve_overhead,
    sampled,
    site_multiplier,
)
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
    scenario_warnings,
    validate_scenario,
)
from .optimizer import CapExceededError, SearchConfig, SearchResult, brute_force, hill_climb
from .risk import CostDistribution, monte_carlo, percentile, prob_exceeds

__version__ = "0.1.0"

__all__ = [
    "Assignment",
    "AssignmentError",
    "BaselineSpec",
    "CapExceededError",
    "ComparisonReport",
    "CostDistribution",
    "CouplingMatrix",
    "DETERMINISTIC",
    "EvaluationError",
    "EvaluationMode",
    "EvaluationResult",
    "FactorAssessment",
    "FactorDefinition",
    "GqmGoal",
    "ImpactModel",
    "Scenario",
    "SearchConfig",
    "SearchResult",
    "Site",
    "SitePairRelation",
    "Task",
    "TaskResult",
    "TriangularOverhead",
    "Violation",
    "baseline_per_task",
    "brute_force",
    "builtin_factor_catalog",
    "check_assignment",
    "cocomo_effort",
    "collaboration_overhead",
    "compare",
    "cross_site_coupling",
    "demo_alternatives",
    "demo_scenario",
    "evaluate",
    "hill_climb",
    "monte_carlo",
    "percentile",
    "prob_exceeds",
    "resolve_overhead",
    "sampled",
    "scenario_warnings",
    "site_multiplier",
    "validate_scenario",
    "weighted_score",
]
