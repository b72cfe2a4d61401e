import { ApiClient, ApiError } from "./api.js";
import { renderApp, renderRisk } from "./board.js";
import {
  BoardState,
  applyMove,
  checkMove,
  initialState,
  isTotal,
  refreshStaleness,
  sanitizeAssignment,
  weightsFor,
} from "./state.js";
import type { ScenarioDocumentTree } from "./types.js";

/** Wires board state, the API client, and DOM rendering together.

    Evaluation requests follow latest-wins: a reassignment supersedes any
    in-flight evaluation, so the board never renders a stale total.
*/
export class BoardController {
  state: BoardState;
  /** Invoked after the current assignment changes, e.g. to sync the URL. */
  onAssignmentChange: ((assignment: Record<string, string>) => void) | null = null;
  private evaluationSeq = 0;
  private inflight: AbortController | null = null;

  constructor(
    private readonly api: ApiClient,
    private readonly root: HTMLElement,
    sessionId: string,
    document: ScenarioDocumentTree,
  ) {
    this.state = refreshStaleness(initialState(sessionId, document));
  }

  static async boot(
    api: ApiClient,
    root: HTMLElement,
    sessionId: string,
    initialAssignment?: Record<string, string>,
  ): Promise<BoardController> {
    const document = await api.getSession(sessionId);
    const controller = new BoardController(api, root, sessionId, document);
    if (initialAssignment && Object.keys(initialAssignment).length > 0) {
      controller.state = { ...controller.state, assignment: sanitizeAssignment(document, initialAssignment) };
    }
    controller.render();
    await controller.evaluateCurrent();
    return controller;
  }

  private assignmentChanged(): void {
    this.onAssignmentChange?.({ ...this.state.assignment });
  }

  render(): void {
    renderApp(this.root, this.state, {
      onMove: (task, site) => void this.reassign(task, site),
      onSnapshot: (label) => this.snapshot(label),
      onCompare: () => void this.compareSaved(),
      onWeightChange: (value) => void this.setWeight(value),
      onSuggest: () => void this.suggest(),
      onApplySuggestion: () => void this.applySuggestion(),
      onDiscardSuggestion: () => this.discardSuggestion(),
      onRisk: () => void this.runRisk(),
    });
  }

  /** Move a task card; evaluates the new board unless the move is rejected. */
  async reassign(taskId: string, siteId: string): Promise<void> {
    const check = checkMove(this.state, taskId, siteId);
    if (!check.ok) {
      if (check.reason !== "noop") {
        this.state = { ...this.state, status: check.message };
        this.render();
      }
      return; // no server call for rejected or no-op moves
    }
    const before = this.state;
    this.state = { ...applyMove(this.state, taskId, siteId), status: null };
    this.render();
    this.assignmentChanged();
    if (!isTotal(this.state)) {
      return; // evaluation stays disabled until the board is total
    }
    try {
      await this.evaluateCurrent();
    } catch (error) {
      if (error instanceof ApiError) {
        this.state = { ...before, status: error.message };
        this.render();
        this.assignmentChanged();
        return;
      }
      throw error;
    }
  }

  /** Evaluate the current total assignment; superseded calls are dropped. */
  async evaluateCurrent(): Promise<void> {
    if (!isTotal(this.state)) {
      return;
    }
    const seq = ++this.evaluationSeq;
    this.inflight?.abort();
    const aborter = new AbortController();
    this.inflight = aborter;
    let payload;
    try {
      payload = await this.api.evaluate(this.state.sessionId, this.state.assignment, aborter.signal);
    } catch (error) {
      if (error instanceof DOMException && error.name === "AbortError") {
        return;
      }
      throw error;
    }
    if (seq !== this.evaluationSeq) {
      return; // a newer reassignment superseded this response
    }
    this.state = { ...this.state, lastEvaluation: payload };
    this.render();
  }

  snapshot(label: string): void {
    const name = label.trim() || `Alternative ${this.state.saved.length + 1}`;
    if (!isTotal(this.state)) {
      this.state = { ...this.state, status: "place every task before snapshotting" };
      this.render();
      return;
    }
    const saved = this.state.saved.filter((s) => s.label !== name);
    saved.push({
      label: name,
      assignment: { ...this.state.assignment },
      result: this.state.lastEvaluation,
      stale: false,
    });
    this.state = refreshStaleness({ ...this.state, saved, status: null });
    this.render();
  }

  /** Compare all non-stale saved alternatives under the slider weights. */
  async compareSaved(): Promise<void> {
    const usable = this.state.saved.filter((s) => !s.stale);
    if (usable.length === 0) {
      this.state = { ...this.state, status: "no usable alternatives to compare" };
      this.render();
      return;
    }
    const alternatives = Object.fromEntries(usable.map((s) => [s.label, s.assignment]));
    try {
      const payload = await this.api.compare(
        this.state.sessionId,
        alternatives,
        weightsFor(this.state.weightSlider),
      );
      this.state = { ...this.state, comparison: payload, status: null };
    } catch (error) {
      if (!(error instanceof ApiError)) {
        throw error;
      }
      this.state = { ...this.state, status: error.message };
    }
    this.render();
  }

  async setWeight(value: number): Promise<void> {
    this.state = { ...this.state, weightSlider: value };
    if (this.state.comparison) {
      await this.compareSaved(); // re-rank under the new weights
    } else {
      this.render();
    }
  }

  async suggest(): Promise<void> {
    try {
      const payload = await this.api.optimize(this.state.sessionId);
      this.state = { ...this.state, suggestion: payload, status: null };
    } catch (error) {
      if (!(error instanceof ApiError)) {
        throw error;
      }
      this.state = { ...this.state, status: error.message };
    }
    this.render();
  }

  async applySuggestion(): Promise<void> {
    const suggestion = this.state.suggestion;
    if (!suggestion) {
      return;
    }
    this.state = {
      ...this.state,
      assignment: { ...suggestion.best },
      lastEvaluation: suggestion.best_result,
      suggestion: null,
    };
    this.render();
    this.assignmentChanged();
  }

  discardSuggestion(): void {
    this.state = { ...this.state, suggestion: null };
    this.render();
  }

  async runRisk(n = 500, seed = 7, budget = 1250): Promise<void> {
    if (!isTotal(this.state)) {
      return;
    }
    const payload = await this.api.risk(this.state.sessionId, this.state.assignment, n, seed, budget);
    renderRisk(this.root, payload);
  }
}
