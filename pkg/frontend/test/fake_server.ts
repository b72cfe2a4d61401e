// Fetch stub that replays recorded service payloads (see
// scripts/export_ui_fixtures.py). Requests whose canonical body has no
// fixture fail loudly, so a drifting test script cannot silently pass.

import type {
  ComparisonPayload,
  EvaluationPayload,
  RiskPayload,
  ScenarioDocumentTree,
  SearchResultPayload,
} from "../src/types.js";

export interface Fixtures {
  document: ScenarioDocumentTree;
  start_label: string;
  moves: { task: string; site: string }[];
  evaluations: Record<string, EvaluationPayload>;
  compares: Record<string, ComparisonPayload>;
  risks: Record<string, RiskPayload>;
  optimize: SearchResultPayload;
}

/** Key-stable JSON: sorted object keys, compact separators (matches the
    Python exporter's json.dumps(..., sort_keys=True, separators=(",",":"))). */
export function canonical(value: unknown): string {
  if (value === null || typeof value !== "object") {
    return JSON.stringify(value);
  }
  if (Array.isArray(value)) {
    return `[${value.map(canonical).join(",")}]`;
  }
  const record = value as Record<string, unknown>;
  const body = Object.keys(record)
    .sort()
    .map((key) => `${JSON.stringify(key)}:${canonical(record[key])}`)
    .join(",");
  return `{${body}}`;
}

interface RecordedCall {
  method: string;
  path: string;
  body: any;
}

export class FakeServer {
  calls: RecordedCall[] = [];
  private failures: { status: number; message: string }[] = [];
  private gates: Array<Promise<void>> = [];

  constructor(
    private readonly fixtures: Fixtures,
    private readonly documentOverride?: ScenarioDocumentTree,
  ) {}

  /** Make the next evaluate call fail with an API error. */
  failNextEvaluate(status: number, message: string): void {
    this.failures.push({ status, message });
  }

  /** Hold the next evaluate call until the returned release is invoked. */
  gateNextEvaluate(): () => void {
    let release!: () => void;
    this.gates.push(new Promise<void>((resolve) => (release = resolve)));
    return release;
  }

  evaluateCallCount(): number {
    return this.calls.filter((c) => c.path.endsWith("/evaluate")).length;
  }

  fetchFn = async (url: string, init?: RequestInit): Promise<Response> => {
    const path = new URL(url).pathname;
    const method = init?.method ?? "GET";
    const body = init?.body ? JSON.parse(init.body as string) : {};
    this.calls.push({ method, path, body });

    const json = (payload: unknown, status = 200) =>
      new Response(JSON.stringify(payload), {
        status,
        headers: { "content-type": "application/json" },
      });

    if (method === "POST" && path === "/sessions") {
      return json({ session_id: "demo" });
    }
    if (method === "GET" && path === "/sessions/demo") {
      return json(this.documentOverride ?? this.fixtures.document);
    }
    if (method === "POST" && path === "/sessions/demo/evaluate") {
      const gate = this.gates.shift();
      if (gate) {
        await Promise.race([
          gate,
          new Promise<never>((_resolve, reject) => {
            init?.signal?.addEventListener("abort", () =>
              reject(new DOMException("aborted", "AbortError")),
            );
            if (init?.signal?.aborted) {
              reject(new DOMException("aborted", "AbortError"));
            }
          }),
        ]);
      }
      const failure = this.failures.shift();
      if (failure) {
        return json({ error: "invalid_assignment", message: failure.message }, failure.status);
      }
      const key = canonical(body.assignment);
      const payload = this.fixtures.evaluations[key];
      if (!payload) {
        throw new Error(`no evaluation fixture for ${key}`);
      }
      return json(payload);
    }
    if (method === "POST" && path === "/sessions/demo/compare") {
      const key = canonical({ alternatives: body.alternatives, weights: body.weights });
      const payload = this.fixtures.compares[key];
      if (!payload) {
        throw new Error(`no compare fixture for ${key}`);
      }
      return json(payload);
    }
    if (method === "POST" && path === "/sessions/demo/optimize") {
      return json(this.fixtures.optimize);
    }
    if (method === "POST" && path === "/sessions/demo/risk") {
      const payload = this.fixtures.risks[canonical(body)];
      if (!payload) {
        throw new Error(`no risk fixture for ${canonical(body)}`);
      }
      return json(payload);
    }
    throw new Error(`unexpected request ${method} ${path}`);
  };
}
