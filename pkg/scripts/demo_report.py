#!/usr/bin/env python3
"""Walk the bundled demo through evaluation and comparison.

Evaluates the three classic alternatives, prints the comparison table, and
shows how the winner depends on the criterion weighting.
"""

from gsdalloc import GqmGoal, compare, demo_alternatives, demo_scenario, evaluate
from gsdalloc.render import render_comparison, render_evaluation


def main() -> None:
    scenario = demo_scenario()
    alternatives = demo_alternatives()

    print("Per-task evaluation of the mixed alternative:\n")
    print(render_evaluation(evaluate(scenario, alternatives["Comp 4, Testing: India"]), scenario))

    print("\nComparison under the scenario goal (total cost):\n")
    report = compare(scenario, list(alternatives.items()))
    print(render_comparison(report, scenario))

    effort_goal = GqmGoal("pm", "", (("total_effort", 1.0),))
    print("\nSame alternatives, weight on total effort instead:\n")
    print(render_comparison(compare(scenario, list(alternatives.items()), effort_goal), scenario))


if __name__ == "__main__":
    main()
