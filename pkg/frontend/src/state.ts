import type {
  AssignmentMap,
  ComparisonPayload,
  EvaluationPayload,
  ScenarioDocumentTree,
  SearchResultPayload,
} from "./types.js";

export interface SavedAlternative {
  label: string;
  assignment: AssignmentMap;
  /** Evaluation cached at snapshot time; null until the first evaluation lands. */
  result: EvaluationPayload | null;
  stale: boolean;
}

export interface BoardState {
  sessionId: string;
  document: ScenarioDocumentTree;
  assignment: AssignmentMap; // partial until every task is placed
  lastEvaluation: EvaluationPayload | null;
  saved: SavedAlternative[];
  comparison: ComparisonPayload | null;
  suggestion: SearchResultPayload | null;
  /** 0 = all weight on total cost, 100 = all weight on total effort. */
  weightSlider: number;
  status: string | null;
}

export type MoveCheck =
  | { ok: true }
  | { ok: false; reason: "noop" | "pinned" | "unknown_task" | "unknown_site"; message: string };

export function initialState(sessionId: string, document: ScenarioDocumentTree): BoardState {
  const saved: SavedAlternative[] = Object.entries(document.alternatives ?? {}).map(
    ([label, assignment]) => ({ label, assignment: { ...assignment }, result: null, stale: false }),
  );
  const first = saved[0];
  return {
    sessionId,
    document,
    assignment: first ? { ...first.assignment } : {},
    lastEvaluation: null,
    saved,
    comparison: null,
    suggestion: null,
    weightSlider: 0,
    status: null,
  };
}

export function unassignedTasks(state: BoardState): string[] {
  return state.document.tasks.map((t) => t.id).filter((id) => !(id in state.assignment));
}

export function isTotal(state: BoardState): boolean {
  return unassignedTasks(state).length === 0;
}

export function checkMove(state: BoardState, taskId: string, siteId: string): MoveCheck {
  if (!state.document.tasks.some((t) => t.id === taskId)) {
    return { ok: false, reason: "unknown_task", message: `unknown task ${taskId}` };
  }
  if (!state.document.sites.some((s) => s.id === siteId)) {
    return { ok: false, reason: "unknown_site", message: `unknown site ${siteId}` };
  }
  const pin = state.document.pinned?.[taskId];
  if (pin !== undefined && pin !== siteId) {
    return { ok: false, reason: "pinned", message: `${taskId} is pinned to ${pin}` };
  }
  if (state.assignment[taskId] === siteId) {
    return { ok: false, reason: "noop", message: "already there" };
  }
  return { ok: true };
}

export function applyMove(state: BoardState, taskId: string, siteId: string): BoardState {
  return { ...state, assignment: { ...state.assignment, [taskId]: siteId } };
}

/** Slider position to compare weights; extremes use a single criterion. */
export function weightsFor(slider: number): Record<string, number> {
  if (slider <= 0) {
    return { total_cost: 1 };
  }
  if (slider >= 100) {
    return { total_effort: 1 };
  }
  return { total_cost: (100 - slider) / 100, total_effort: slider / 100 };
}

/** An alternative is stale when it no longer fits the scenario. */
export function isStale(document: ScenarioDocumentTree, assignment: AssignmentMap): boolean {
  const taskIds = new Set(document.tasks.map((t) => t.id));
  const siteIds = new Set(document.sites.map((s) => s.id));
  if (Object.keys(assignment).length !== taskIds.size) {
    return true;
  }
  for (const [task, site] of Object.entries(assignment)) {
    if (!taskIds.has(task) || !siteIds.has(site)) {
      return true;
    }
  }
  for (const [task, site] of Object.entries(document.pinned ?? {})) {
    if (assignment[task] !== site) {
      return true;
    }
  }
  return false;
}

export function refreshStaleness(state: BoardState): BoardState {
  return {
    ...state,
    saved: state.saved.map((s) => ({ ...s, stale: isStale(state.document, s.assignment) })),
  };
}

/** Compact assignment form for the URL, so reloads restore the board. */
export function encodeAssignment(assignment: AssignmentMap): string {
  return Object.keys(assignment)
    .sort()
    .map((task) => `${task}:${assignment[task]}`)
    .join(",");
}

export function decodeAssignment(text: string): AssignmentMap {
  const mapping: AssignmentMap = {};
  for (const piece of text.split(",")) {
    const [task, site] = piece.split(":");
    if (task && site) {
      mapping[task] = site;
    }
  }
  return mapping;
}

/** Keep only entries that name known tasks and sites and respect pins. */
export function sanitizeAssignment(
  document: ScenarioDocumentTree,
  assignment: AssignmentMap,
): AssignmentMap {
  const taskIds = new Set(document.tasks.map((t) => t.id));
  const siteIds = new Set(document.sites.map((s) => s.id));
  const out: AssignmentMap = {};
  for (const [task, site] of Object.entries(assignment)) {
    if (!taskIds.has(task) || !siteIds.has(site)) {
      continue;
    }
    const pin = document.pinned?.[task];
    out[task] = pin !== undefined ? pin : site;
  }
  return out;
}

export interface CouplingBadge {
  partner: string;
  weight: number;
}

/** Strongest coupling partners of a task, for the card badges. */
export function couplingBadges(
  document: ScenarioDocumentTree,
  taskId: string,
  limit = 3,
): CouplingBadge[] {
  const partners: CouplingBadge[] = [];
  for (const entry of document.coupling) {
    if (entry.task_a === taskId) {
      partners.push({ partner: entry.task_b, weight: entry.weight });
    } else if (entry.task_b === taskId) {
      partners.push({ partner: entry.task_a, weight: entry.weight });
    }
  }
  partners.sort((a, b) => b.weight - a.weight || a.partner.localeCompare(b.partner));
  return partners.slice(0, limit);
}
