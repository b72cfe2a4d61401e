"""The bundled GlobalSoft demo: four sites, seven tasks, a calibrated impact model.

A fictional Europe-based company with development centers in Frankfurt and
Cologne (6.0 kEUR/PM), a London subsidiary near the customer (7.45), and a
new low-cost site in Bangalore (3.0) must place five components plus system
test and integration. The 172 PM baseline splits across tasks in proportion
to the all-in-Europe effort column of the case data below. The overhead
calibration makes the case come out the way such projects do: all-Europe is
cheapest in effort, sending component 4 and testing to Bangalore is cheapest
in cost, and moving everything to Bangalore lands in between on cost while
costing the most effort.
"""

from __future__ import annotations

from . import catalog as cat
from .baseline import BaselineSpec
from .impact import ImpactModel, TriangularOverhead
from .model import (
    Assignment,
    CouplingMatrix,
    FactorAssessment,
    GqmGoal,
    Scenario,
    Site,
    SitePairRelation,
    Task,
)

ALL_IN_EUROPE = "All in Europe"
MIXED_INDIA = "Comp 4, Testing: India"
ALL_IN_INDIA = "All in India"

BASELINE_TOTAL_PM = 172.0

# All-in-Europe effort column of the case data; used only for the share vector.
_EUROPE_EFFORT_CELLS = {
    "comp1": 75.0,
    "comp2": 40.0,
    "comp3": 55.0,
    "comp4": 176.0,
    "comp5": 43.0,
    "system_test": 84.0,
    "integration": 38.0,
}

_TRIANGLES: dict[str, dict[str, tuple[float, float, float]]] = {
    cat.ANALYST_CAPABILITY: {"low": (3, 5, 8), "medium": (8, 12, 18), "high": (15, 22, 32)},
    cat.PROGRAMMER_CAPABILITY: {"low": (3, 5, 8), "medium": (8, 12, 18), "high": (15, 22, 32)},
    cat.LANGUAGE_TOOL_EXPERIENCE: {"low": (2, 4, 7), "medium": (6, 10, 15), "high": (12, 18, 26)},
    cat.PERSONNEL_CONTINUITY: {"low": (2, 4, 6), "medium": (5, 8, 12), "high": (10, 15, 22)},
    cat.CUSTOMER_PROXIMITY: {"low": (1, 3, 5), "medium": (4, 7, 11), "high": (8, 13, 20)},
    cat.CULTURAL_DIFFERENCE: {"low": (2, 5, 9), "medium": (6, 10, 16), "high": (10, 18, 28)},
    cat.TIME_ZONE_DIFFERENCE: {"low": (2, 4, 8), "medium": (6, 10, 16), "high": (12, 22, 34)},
    cat.TASK_SIZE: {"low": (1, 2, 3), "medium": (2, 4, 6), "high": (4, 7, 11)},
    cat.COUPLING: {"low": (0, 0, 0), "medium": (0, 0, 0), "high": (0, 0, 0)},
    cat.APPLICATION_EXPERIENCE: {"low": (5, 10, 18), "medium": (18, 30, 45), "high": (50, 75, 110)},
    cat.PLATFORM_EXPERIENCE: {"low": (4, 8, 14), "medium": (15, 25, 38), "high": (40, 65, 95)},
}


def _impact_model() -> ImpactModel:
    overheads: dict[tuple[str, str], TriangularOverhead] = {}
    for factor in cat.builtin_factor_catalog():
        overheads[(factor.id, "nominal")] = TriangularOverhead(0.0, 0.0, 0.0)
        for level, (lo, likely, hi) in _TRIANGLES[factor.id].items():
            overheads[(factor.id, level)] = TriangularOverhead(float(lo), float(likely), float(hi))
    return ImpactModel(overheads=overheads, pair_scale=0.2)


def _nominal_site_levels(**overrides: str) -> dict[str, str]:
    levels = {
        cat.ANALYST_CAPABILITY: "nominal",
        cat.PROGRAMMER_CAPABILITY: "nominal",
        cat.LANGUAGE_TOOL_EXPERIENCE: "nominal",
        cat.PERSONNEL_CONTINUITY: "nominal",
        cat.CUSTOMER_PROXIMITY: "nominal",
    }
    levels.update(overrides)
    return levels


def demo_scenario() -> Scenario:
    """The GlobalSoft fixture: custom development for a London customer."""
    sites = (
        Site("frankfurt", "Frankfurt", 6.0, _nominal_site_levels(customer_proximity="low")),
        Site("cologne", "Cologne", 6.0, _nominal_site_levels(customer_proximity="low")),
        Site("london", "London", 7.45, _nominal_site_levels(personnel_continuity="low")),
        Site(
            "bangalore",
            "Bangalore",
            3.0,
            _nominal_site_levels(
                analyst_capability="low",
                language_tool_experience="low",
                personnel_continuity="medium",
                customer_proximity="high",
            ),
        ),
    )

    near = {cat.CULTURAL_DIFFERENCE: "low", cat.TIME_ZONE_DIFFERENCE: "low"}
    far = {cat.CULTURAL_DIFFERENCE: "high", cat.TIME_ZONE_DIFFERENCE: "high"}
    site_pairs = (
        SitePairRelation("frankfurt", "cologne", {cat.CULTURAL_DIFFERENCE: "nominal", cat.TIME_ZONE_DIFFERENCE: "nominal"}),
        SitePairRelation("frankfurt", "london", dict(near)),
        SitePairRelation("cologne", "london", dict(near)),
        SitePairRelation("frankfurt", "bangalore", dict(far)),
        SitePairRelation("cologne", "bangalore", dict(far)),
        SitePairRelation("london", "bangalore", dict(far)),
    )

    tasks = (
        Task("comp1", "Comp 1", {cat.TASK_SIZE: "medium"}),
        Task("comp2", "Comp 2", {cat.TASK_SIZE: "low"}),
        Task("comp3", "Comp 3", {cat.TASK_SIZE: "medium"}),
        Task("comp4", "Comp 4", {cat.TASK_SIZE: "high"}),
        Task("comp5", "Comp 5", {cat.TASK_SIZE: "low"}),
        Task("system_test", "System Test", {cat.TASK_SIZE: "medium"}),
        Task("integration", "Integration", {cat.TASK_SIZE: "low"}),
    )

    coupling = CouplingMatrix.from_pairs(
        {
            ("comp1", "comp2"): 0.3,
            ("comp1", "comp4"): 0.5,
            ("comp1", "comp5"): 0.2,
            ("comp2", "comp3"): 0.4,
            ("comp3", "comp4"): 0.3,
            ("comp4", "comp5"): 0.6,
            ("comp1", "system_test"): 0.3,
            ("comp2", "system_test"): 0.2,
            ("comp3", "system_test"): 0.3,
            ("comp4", "system_test"): 0.6,
            ("comp5", "system_test"): 0.3,
            ("comp1", "integration"): 0.3,
            ("comp2", "integration"): 0.2,
            ("comp3", "integration"): 0.2,
            ("comp4", "integration"): 0.5,
            ("comp5", "integration"): 0.3,
            ("system_test", "integration"): 0.5,
        }
    )

    # Established sites know the application and platform from past
    # BigIndustries projects; Bangalore is new, but component 4 and testing
    # were scoped to transfer well.
    experienced = {cat.APPLICATION_EXPERIENCE: "nominal", cat.PLATFORM_EXPERIENCE: "nominal"}
    transferable = {cat.APPLICATION_EXPERIENCE: "low", cat.PLATFORM_EXPERIENCE: "low"}
    unfamiliar = {cat.APPLICATION_EXPERIENCE: "high", cat.PLATFORM_EXPERIENCE: "high"}
    task_site_values: dict[tuple[str, str], dict[str, str]] = {}
    for task in tasks:
        for site in sites:
            if site.id != "bangalore":
                task_site_values[(task.id, site.id)] = dict(experienced)
            elif task.id in ("comp4", "system_test"):
                task_site_values[(task.id, site.id)] = dict(transferable)
            else:
                task_site_values[(task.id, site.id)] = dict(unfamiliar)

    share_total = sum(_EUROPE_EFFORT_CELLS.values())
    shares = {task_id: cell / share_total for task_id, cell in _EUROPE_EFFORT_CELLS.items()}

    return Scenario(
        sites=sites,
        site_pairs=site_pairs,
        tasks=tasks,
        coupling=coupling,
        catalog=tuple(cat.builtin_factor_catalog()),
        impact_model=_impact_model(),
        assessment=FactorAssessment(task_site_values),
        baseline=BaselineSpec(mode="direct", direct_total_pm=BASELINE_TOTAL_PM, shares=shares),
        goal=GqmGoal(
            viewpoint="GlobalSoft project manager, Frankfurt",
            context_note=(
                "Custom development for BigIndustries (London); components, system "
                "test, and integration to be assigned across Frankfurt, Cologne, "
                "London, and the new Bangalore site."
            ),
            criteria=(("total_cost", 1.0),),
        ),
        pinned={},
        development_type="captive_custom",
    )


def demo_alternatives() -> dict[str, Assignment]:
    """The three alternatives the project manager investigates."""
    europe = {
        "comp1": "frankfurt",
        "comp2": "cologne",
        "comp3": "frankfurt",
        "comp4": "cologne",
        "comp5": "frankfurt",
        "system_test": "london",
        "integration": "london",
    }
    mixed = dict(europe, comp4="bangalore", system_test="bangalore")
    india = {task: "bangalore" for task in europe}
    return {
        ALL_IN_EUROPE: Assignment(europe),
        MIXED_INDIA: Assignment(mixed),
        ALL_IN_INDIA: Assignment(india),
    }
