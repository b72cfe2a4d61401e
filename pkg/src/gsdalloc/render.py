"""Human-readable report rendering.

Comparison tables follow the classic presentation: one row per alternative, a
PM|Cost column pair per task plus a Total pair, whole numbers throughout.
Totals are rounded sums of the unrounded per-task values, so a rendered total
can differ from the sum of its rendered cells by rounding.
"""

from __future__ import annotations

from .evaluator import ComparisonReport, EvaluationResult
from .model import Scenario, Violation
from .risk import CostDistribution, percentile, prob_exceeds


def _fmt_int(value: float) -> str:
    return str(round(value))


def render_comparison(report: ComparisonReport, scenario: Scenario | None = None) -> str:
    """Text table over the report's alternatives, plus scores and the winner."""
    first_result = report.alternatives[0][2]
    task_ids = [r.task for r in first_result.per_task]
    if scenario is not None:
        names = {t.id: t.name for t in scenario.tasks}
    else:
        names = {t: t for t in task_ids}
    headers = [names.get(t, t) for t in task_ids] + ["Total"]

    label_width = max(len("Alternative"), max(len(label) for label, _a, _r in report.alternatives))
    cell_rows = []
    for label, _assignment, result in report.alternatives:
        cells = [(_fmt_int(r.effort_pm), _fmt_int(r.cost)) for r in result.per_task]
        cells.append((_fmt_int(result.total_effort_pm), _fmt_int(result.total_cost)))
        cell_rows.append((label, cells))

    widths = []
    for i, header in enumerate(headers):
        pm_width = max([len("PM")] + [len(row[i][0]) for _l, row in cell_rows])
        cost_width = max([len("Cost")] + [len(row[i][1]) for _l, row in cell_rows])
        widths.append((max(pm_width, 2), max(cost_width, 4, len(header) - pm_width - 3)))

    lines = []
    header_cells = []
    sub_cells = []
    for (pm_w, cost_w), header in zip(widths, headers):
        span = pm_w + cost_w + 3
        header_cells.append(header.ljust(span))
        sub_cells.append("PM".rjust(pm_w) + " | " + "Cost".rjust(cost_w))
    lines.append("Alternative".ljust(label_width) + "  " + "  ".join(header_cells).rstrip())
    lines.append(" " * label_width + "  " + "  ".join(sub_cells))
    lines.append("-" * max(len(lines[0]), len(lines[1])))
    for label, cells in cell_rows:
        row = []
        for (pm_w, cost_w), (pm, cost) in zip(widths, cells):
            row.append(pm.rjust(pm_w) + " | " + cost.rjust(cost_w))
        lines.append(label.ljust(label_width) + "  " + "  ".join(row))

    lines.append("")
    lines.append("Weighted scores (lower is better):")
    for label in report.ranking:
        lines.append(f"  {label}: {report.scores[label]:.4f}")
    lines.append(f"Winner: {report.ranking[0]}")
    return "\n".join(lines) + "\n"


def render_evaluation(result: EvaluationResult, scenario: Scenario | None = None) -> str:
    """Per-task breakdown of one evaluated assignment."""
    names = {t.id: t.name for t in scenario.tasks} if scenario is not None else {}
    lines = []
    header = (
        f"{'Task':<14} {'Site':<12} {'Baseline':>9} {'Mult':>6} {'Collab':>7} "
        f"{'Effort PM':>10} {'Cost':>9}"
    )
    lines.append(header)
    lines.append("-" * len(header))
    for r in result.per_task:
        lines.append(
            f"{names.get(r.task, r.task):<14} {r.site:<12} {r.baseline_pm:>9.1f} "
            f"{r.site_multiplier:>6.2f} {r.collab_overhead:>6.1%} {r.effort_pm:>10.1f} {r.cost:>9.0f}"
        )
    lines.append("-" * len(header))
    lines.append(
        f"{'Total':<14} {'':<12} {'':>9} {'':>6} {'':>7} "
        f"{result.total_effort_pm:>10.1f} {result.total_cost:>9.0f}"
    )
    lines.append("")
    lines.append("Criteria: " + ", ".join(f"{k}={v:.2f}" for k, v in result.criteria_values.items()))
    return "\n".join(lines) + "\n"


def render_violations(violations: list[Violation], warnings: list[Violation] | None = None) -> str:
    lines = []
    if not violations:
        lines.append("Scenario is valid.")
    else:
        lines.append(f"{len(violations)} violation(s):")
        for v in violations:
            lines.append(f"  {v}")
    if warnings:
        lines.append(f"{len(warnings)} warning(s):")
        for w in warnings:
            lines.append(f"  {w}")
    return "\n".join(lines) + "\n"


def render_search_result(result, scenario: Scenario | None = None) -> str:
    kind = "exhaustive" if result.exhaustive else "hill-climb"
    lines = [
        f"Search: {kind}, {result.evaluations} evaluation(s)",
        f"Best score: {result.best_score:.6f}",
        "Assignment:",
    ]
    for task, site in sorted(result.best.mapping.items()):
        lines.append(f"  {task} -> {site}")
    lines.append("")
    lines.append(render_evaluation(result.best_result, scenario).rstrip("\n"))
    return "\n".join(lines) + "\n"


def render_distribution(
    dist: CostDistribution,
    budget: float | None = None,
    percentiles: tuple[float, ...] = (0.1, 0.5, 0.9),
) -> str:
    efforts = [e for e, _c in dist.samples]
    costs = [c for _e, c in dist.samples]
    lines = [
        f"Monte Carlo: n={dist.n}, seed={dist.seed}",
        f"Effort PM: mean {sum(efforts) / dist.n:.1f}, min {min(efforts):.1f}, max {max(efforts):.1f}",
        f"Cost:      mean {sum(costs) / dist.n:.1f}, min {min(costs):.1f}, max {max(costs):.1f}",
    ]
    for p in percentiles:
        lines.append(
            f"  p{int(p * 100):02d}: effort {percentile(dist, p, 'effort'):.1f} PM, "
            f"cost {percentile(dist, p, 'cost'):.1f}"
        )
    if budget is not None:
        lines.append(f"P(cost > {budget:g}) = {prob_exceeds(dist, budget):.4f}")
    return "\n".join(lines) + "\n"
