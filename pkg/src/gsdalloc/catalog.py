"""The built-in variation-factor catalog.

Eleven factors across the five categories, each on the same 4-level ordinal
scale from nominal (best, zero overhead) to high. Coupling appears as a
catalog entry for documentation, but its data lives in the coupling matrix,
not in assessed levels.
"""

from __future__ import annotations

from .model import FactorDefinition

DEFAULT_LEVELS = ("nominal", "low", "medium", "high")

ANALYST_CAPABILITY = "analyst_capability"
PROGRAMMER_CAPABILITY = "programmer_capability"
LANGUAGE_TOOL_EXPERIENCE = "language_tool_experience"
PERSONNEL_CONTINUITY = "personnel_continuity"
CUSTOMER_PROXIMITY = "customer_proximity"
CULTURAL_DIFFERENCE = "cultural_difference"
TIME_ZONE_DIFFERENCE = "time_zone_difference"
TASK_SIZE = "size"
COUPLING = "coupling"
APPLICATION_EXPERIENCE = "application_experience"
PLATFORM_EXPERIENCE = "platform_experience"


def builtin_factor_catalog() -> list[FactorDefinition]:
    """The standard catalog: 5 site, 2 site-pair, 1 task, 1 task-pair, 2 task-site factors."""
    return [
        FactorDefinition(ANALYST_CAPABILITY, "Analyst capability", "site", DEFAULT_LEVELS),
        FactorDefinition(PROGRAMMER_CAPABILITY, "Programmer capability", "site", DEFAULT_LEVELS),
        FactorDefinition(LANGUAGE_TOOL_EXPERIENCE, "Language and tool experience", "site", DEFAULT_LEVELS),
        FactorDefinition(PERSONNEL_CONTINUITY, "Personnel continuity", "site", DEFAULT_LEVELS),
        FactorDefinition(CUSTOMER_PROXIMITY, "Customer proximity", "site", DEFAULT_LEVELS),
        FactorDefinition(CULTURAL_DIFFERENCE, "Cultural difference", "site_pair", DEFAULT_LEVELS),
        FactorDefinition(TIME_ZONE_DIFFERENCE, "Time-zone difference", "site_pair", DEFAULT_LEVELS),
        FactorDefinition(TASK_SIZE, "Task size", "task", DEFAULT_LEVELS),
        FactorDefinition(COUPLING, "Coupling", "task_pair", DEFAULT_LEVELS),
        FactorDefinition(APPLICATION_EXPERIENCE, "Application experience", "task_site", DEFAULT_LEVELS),
        FactorDefinition(PLATFORM_EXPERIENCE, "Platform experience", "task_site", DEFAULT_LEVELS),
    ]
