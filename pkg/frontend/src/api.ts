import type {
  AssignmentMap,
  ComparisonPayload,
  EvaluationPayload,
  RiskPayload,
  ScenarioDocumentTree,
  SearchResultPayload,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string,
  ) {
    super(message);
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

/** Thin client over the HTTP service; all engine work happens server-side. */
export class ApiClient {
  constructor(
    readonly baseUrl: string,
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown, signal?: AbortSignal): Promise<T> {
    const response = await this.fetchFn(`${this.baseUrl}${path}`, {
      method,
      body: body === undefined ? undefined : JSON.stringify(body),
      headers: { "content-type": "application/json" },
      signal,
    });
    const payload = await response.json();
    if (!response.ok) {
      const message = typeof payload?.message === "string" ? payload.message : `HTTP ${response.status}`;
      throw new ApiError(response.status, message);
    }
    return payload as T;
  }

  createDemoSession(): Promise<{ session_id: string }> {
    return this.request("POST", "/sessions", { demo: true });
  }

  getSession(sessionId: string): Promise<ScenarioDocumentTree> {
    return this.request("GET", `/sessions/${sessionId}`);
  }

  evaluate(sessionId: string, assignment: AssignmentMap, signal?: AbortSignal): Promise<EvaluationPayload> {
    return this.request("POST", `/sessions/${sessionId}/evaluate`, { assignment }, signal);
  }

  compare(
    sessionId: string,
    alternatives: Record<string, AssignmentMap>,
    weights: Record<string, number>,
  ): Promise<ComparisonPayload> {
    return this.request("POST", `/sessions/${sessionId}/compare`, { alternatives, weights });
  }

  optimize(sessionId: string): Promise<SearchResultPayload> {
    return this.request("POST", `/sessions/${sessionId}/optimize`, { exhaustive: true });
  }

  risk(
    sessionId: string,
    assignment: AssignmentMap,
    n: number,
    seed: number,
    budget?: number,
  ): Promise<RiskPayload> {
    const body: Record<string, unknown> = { assignment, n, seed };
    if (budget !== undefined) {
      body.budget = budget;
    }
    return this.request("POST", `/sessions/${sessionId}/risk`, body);
  }
}
