#!/usr/bin/env python3
"""Monte Carlo risk profiles for the three demo alternatives.

Deterministic point estimates hide how much of the mixed alternative's cost
advantage survives estimation uncertainty; the exceedance probabilities below
make that explicit.
"""

from gsdalloc import demo_alternatives, demo_scenario, evaluate, monte_carlo, percentile, prob_exceeds

N = 20000
SEED = 42


def main() -> None:
    scenario = demo_scenario()
    distributions = {}
    for label, assignment in demo_alternatives().items():
        point = evaluate(scenario, assignment)
        dist = monte_carlo(scenario, assignment, N, SEED)
        distributions[label] = dist
        p10 = percentile(dist, 0.1)
        p50 = percentile(dist, 0.5)
        p90 = percentile(dist, 0.9)
        print(f"{label}")
        print(f"  deterministic cost {point.total_cost:8.1f} kEUR")
        print(f"  cost p10/p50/p90   {p10:8.1f} / {p50:8.1f} / {p90:8.1f}")
        print(f"  effort p50         {percentile(dist, 0.5, 'effort'):8.1f} PM")

    print()
    print(f"{'budget kEUR':>12}  " + "  ".join(f"{label:>22}" for label in distributions))
    for budget in (1000, 1100, 1200, 1300, 1400):
        row = [f"{prob_exceeds(dist, budget):>22.3f}" for dist in distributions.values()]
        print(f"{budget:>12}  " + "  ".join(row))


if __name__ == "__main__":
    main()
