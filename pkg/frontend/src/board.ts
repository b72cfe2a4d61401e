import { fmtCost, fmtFraction, fmtPm, fmtScore } from "./format.js";
import {
  BoardState,
  couplingBadges,
  isTotal,
  unassignedTasks,
} from "./state.js";
import type { EvaluationPayload, TaskResultPayload } from "./types.js";

export interface BoardHandlers {
  onMove(taskId: string, siteId: string): void;
  onSnapshot(label: string): void;
  onCompare(): void;
  onWeightChange(value: number): void;
  onSuggest(): void;
  onApplySuggestion(): void;
  onDiscardSuggestion(): void;
  onRisk(): void;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) {
    node.className = className;
  }
  if (text !== undefined) {
    node.textContent = text;
  }
  return node;
}

function taskNumbers(result: TaskResultPayload): HTMLElement {
  const wrap = el("div", "task-numbers");
  const pm = el("span", "pm-value", fmtPm(result.effort_pm));
  const cost = el("span", "cost-value", fmtCost(result.cost));
  wrap.append(pm, el("span", "unit", " PM | "), cost, el("span", "unit", " k€"));
  return wrap;
}

function breakdownBars(result: TaskResultPayload): HTMLElement {
  const wrap = el("div", "breakdown");
  const entries = Object.entries(result.factor_breakdown).filter(([, v]) => v > 0);
  entries.sort((a, b) => b[1] - a[1]);
  for (const [factor, value] of entries) {
    const row = el("div", "breakdown-row");
    row.dataset.factor = factor;
    const bar = el("span", "breakdown-bar");
    bar.style.width = `${Math.min(100, value * 200)}px`;
    row.append(bar, el("span", "breakdown-label", `${factor} ${fmtFraction(value)}`));
    wrap.append(row);
  }
  return wrap;
}

function taskCard(state: BoardState, taskId: string, handlers: BoardHandlers): HTMLElement {
  const task = state.document.tasks.find((t) => t.id === taskId);
  const card = el("div", "task-card");
  card.dataset.taskId = taskId;
  const pinnedTo = state.document.pinned?.[taskId];
  card.draggable = pinnedTo === undefined;

  const title = el("div", "task-title", task ? task.name : taskId);
  if (pinnedTo !== undefined) {
    title.append(el("span", "pin-indicator", " 📌"));
  }
  card.append(title);

  const badges = el("div", "badges");
  for (const badge of couplingBadges(state.document, taskId)) {
    const partner = state.document.tasks.find((t) => t.id === badge.partner);
    badges.append(
      el("span", "coupling-badge", `${partner ? partner.name : badge.partner} ${badge.weight}`),
    );
  }
  card.append(badges);

  const perTask = state.lastEvaluation?.per_task.find((r) => r.task === taskId);
  if (perTask && state.assignment[taskId] === perTask.site) {
    card.append(taskNumbers(perTask), breakdownBars(perTask));
  }

  card.addEventListener("dragstart", (event) => {
    event.dataTransfer?.setData("text/task-id", taskId);
  });
  return card;
}

function siteColumn(state: BoardState, siteId: string | null, handlers: BoardHandlers): HTMLElement {
  const column = el("div", "site-column");
  column.dataset.siteId = siteId ?? "";
  if (siteId === null) {
    column.classList.add("unassigned-column");
    column.append(el("h3", "site-header", "Unassigned"));
  } else {
    const site = state.document.sites.find((s) => s.id === siteId);
    const header = el("h3", "site-header", site ? site.name : siteId);
    if (site) {
      header.append(el("span", "rate", ` ${site.cost_rate} k€/PM`));
    }
    column.append(header);
  }

  const taskIds =
    siteId === null
      ? unassignedTasks(state)
      : state.document.tasks.map((t) => t.id).filter((id) => state.assignment[id] === siteId);
  for (const taskId of taskIds) {
    const card = taskCard(state, taskId, handlers);
    if (siteId === null) {
      card.classList.add("unassigned-flag");
    }
    column.append(card);
  }

  if (siteId !== null) {
    column.addEventListener("dragover", (event) => event.preventDefault());
    column.addEventListener("drop", (event) => {
      event.preventDefault();
      const taskId = event.dataTransfer?.getData("text/task-id");
      if (taskId) {
        handlers.onMove(taskId, siteId);
      }
    });
  }
  return column;
}

function totalsStrip(evaluation: EvaluationPayload | null, total: boolean): HTMLElement {
  const strip = el("div", "totals");
  if (!total) {
    strip.append(el("span", "totals-note", "place every task to evaluate"));
    return strip;
  }
  if (!evaluation) {
    strip.append(el("span", "totals-note", "evaluating..."));
    return strip;
  }
  const pm = el("span", "total-value", fmtPm(evaluation.total_effort_pm));
  pm.id = "total-pm";
  const cost = el("span", "total-value", fmtCost(evaluation.total_cost));
  cost.id = "total-cost";
  strip.append(el("span", "totals-label", "Total: "), pm, el("span", "unit", " PM | "), cost, el("span", "unit", " k€"));
  return strip;
}

function comparisonTable(state: BoardState): HTMLElement {
  const wrap = el("div", "comparison");
  if (!state.comparison) {
    return wrap;
  }
  const table = el("table", "comparison-table");
  const head = el("tr");
  head.append(el("th", undefined, "Alternative"));
  const firstResult = state.comparison.alternatives[0]?.result;
  const taskIds = firstResult ? firstResult.per_task.map((r) => r.task) : [];
  for (const taskId of taskIds) {
    const task = state.document.tasks.find((t) => t.id === taskId);
    head.append(el("th", undefined, `${task ? task.name : taskId} PM|k€`));
  }
  head.append(el("th", undefined, "Total PM|k€"), el("th", undefined, "Score"));
  table.append(head);

  for (const alternative of state.comparison.alternatives) {
    const row = el("tr", "comparison-row");
    row.dataset.label = alternative.label;
    if (alternative.label === state.comparison.winner) {
      row.classList.add("winner");
    }
    row.append(el("td", "alt-label", alternative.label));
    for (const taskResult of alternative.result.per_task) {
      row.append(el("td", "cell", `${fmtPm(taskResult.effort_pm)} | ${fmtCost(taskResult.cost)}`));
    }
    row.append(
      el(
        "td",
        "cell total-cell",
        `${fmtPm(alternative.result.total_effort_pm)} | ${fmtCost(alternative.result.total_cost)}`,
      ),
    );
    row.append(el("td", "score-cell", fmtScore(state.comparison.scores[alternative.label] ?? 0)));
    table.append(row);
  }
  wrap.append(table, el("div", "winner-note", `Winner: ${state.comparison.winner}`));
  return wrap;
}

function alternativesPanel(state: BoardState, handlers: BoardHandlers): HTMLElement {
  const panel = el("div", "alternatives-panel");
  panel.append(el("h3", undefined, "Alternatives"));
  const list = el("ul", "saved-list");
  for (const saved of state.saved) {
    const item = el("li", "saved-item", saved.label);
    item.dataset.label = saved.label;
    if (saved.stale) {
      item.classList.add("stale");
      item.append(el("span", "stale-note", " (stale, excluded)"));
    }
    list.append(item);
  }
  panel.append(list);

  const labelInput = el("input") as HTMLInputElement;
  labelInput.id = "snapshot-label";
  labelInput.placeholder = "snapshot label";
  const snapshotButton = el("button", undefined, "Snapshot current");
  snapshotButton.id = "snapshot-button";
  snapshotButton.addEventListener("click", () => handlers.onSnapshot(labelInput.value));
  const compareButton = el("button", undefined, "Compare");
  compareButton.id = "compare-button";
  compareButton.addEventListener("click", () => handlers.onCompare());
  panel.append(labelInput, snapshotButton, compareButton);

  const sliderWrap = el("div", "weight-control");
  sliderWrap.append(el("span", undefined, "cost"));
  const slider = el("input") as HTMLInputElement;
  slider.type = "range";
  slider.min = "0";
  slider.max = "100";
  slider.value = String(state.weightSlider);
  slider.id = "weight-slider";
  slider.addEventListener("input", () => handlers.onWeightChange(Number(slider.value)));
  sliderWrap.append(slider, el("span", undefined, "effort"));
  panel.append(sliderWrap);
  return panel;
}

function suggestionPanel(state: BoardState, handlers: BoardHandlers): HTMLElement {
  const panel = el("div", "suggestion-panel");
  const suggestButton = el("button", undefined, "Suggest assignment");
  suggestButton.id = "suggest-button";
  suggestButton.addEventListener("click", () => handlers.onSuggest());
  panel.append(suggestButton);

  if (state.suggestion) {
    const box = el("div", "suggestion");
    box.append(el("h4", undefined, `Suggested board (score ${fmtScore(state.suggestion.best_score)})`));
    const list = el("ul", "suggestion-list");
    for (const [task, site] of Object.entries(state.suggestion.best)) {
      list.append(el("li", undefined, `${task} -> ${site}`));
    }
    box.append(list);
    const apply = el("button", undefined, "Apply");
    apply.id = "apply-suggestion";
    apply.addEventListener("click", () => handlers.onApplySuggestion());
    const discard = el("button", undefined, "Discard");
    discard.id = "discard-suggestion";
    discard.addEventListener("click", () => handlers.onDiscardSuggestion());
    box.append(apply, discard);
    panel.append(box);
  }
  return panel;
}

export function renderApp(root: HTMLElement, state: BoardState, handlers: BoardHandlers): void {
  root.textContent = "";
  const header = el("div", "header");
  header.append(el("h1", undefined, "Task allocation board"));
  header.append(el("span", "session-note", `session ${state.sessionId}`));
  const status = el("div", "status", state.status ?? "");
  status.id = "status";
  header.append(status);
  root.append(header);

  const board = el("div", "board");
  if (unassignedTasks(state).length > 0) {
    board.append(siteColumn(state, null, handlers));
  }
  for (const site of state.document.sites) {
    board.append(siteColumn(state, site.id, handlers));
  }
  root.append(board);

  root.append(totalsStrip(state.lastEvaluation, isTotal(state)));
  root.append(alternativesPanel(state, handlers));
  root.append(comparisonTable(state));
  root.append(suggestionPanel(state, handlers));

  const riskButton = el("button", undefined, "Risk (MC)");
  riskButton.id = "risk-button";
  riskButton.addEventListener("click", () => handlers.onRisk());
  const riskPanel = el("div", "risk-panel");
  riskPanel.id = "risk-panel";
  root.append(riskButton, riskPanel);
}

export function renderRisk(root: HTMLElement, payload: {
  n: number;
  cost: { percentiles: Record<string, number> };
  prob_cost_exceeds_budget?: number;
  budget?: number;
}): void {
  const panel = root.querySelector("#risk-panel");
  if (!panel) {
    return;
  }
  panel.textContent = "";
  const parts = [`n=${payload.n}`];
  for (const [p, value] of Object.entries(payload.cost.percentiles)) {
    parts.push(`cost p${p}: ${fmtCost(value)}`);
  }
  if (payload.prob_cost_exceeds_budget !== undefined && payload.budget !== undefined) {
    parts.push(`P(cost > ${payload.budget}) = ${payload.prob_cost_exceeds_budget}`);
  }
  panel.append(el("div", "risk-summary", parts.join("  ")));
}
