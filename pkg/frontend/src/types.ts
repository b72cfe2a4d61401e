// Payload shapes mirroring the service's JSON trees. The UI never computes
// effort or cost itself; these are display inputs.

export interface TaskResultPayload {
  task: string;
  site: string;
  effort_pm: number;
  cost: number;
  baseline_pm: number;
  site_multiplier: number;
  collab_overhead: number;
  factor_breakdown: Record<string, number>;
}

export interface EvaluationPayload {
  per_task: TaskResultPayload[];
  total_effort_pm: number;
  total_cost: number;
  criteria_values: Record<string, number>;
}

export interface ComparisonAlternativePayload {
  label: string;
  assignment: Record<string, string>;
  result: EvaluationPayload;
}

export interface ComparisonPayload {
  alternatives: ComparisonAlternativePayload[];
  scores: Record<string, number>;
  ranking: string[];
  winner: string;
}

export interface SearchResultPayload {
  best: Record<string, string>;
  best_result: EvaluationPayload;
  best_score: number;
  evaluations: number;
  exhaustive: boolean;
}

export interface DistributionStats {
  mean: number;
  min: number;
  max: number;
  percentiles: Record<string, number>;
}

export interface RiskPayload {
  n: number;
  seed: number;
  effort_pm: DistributionStats;
  cost: DistributionStats;
  budget?: number;
  prob_cost_exceeds_budget?: number;
}

export interface SiteDoc {
  id: string;
  name: string;
  cost_rate: number;
  factor_values: Record<string, string>;
}

export interface TaskDoc {
  id: string;
  name: string;
  factor_values: Record<string, string>;
}

export interface CouplingDoc {
  task_a: string;
  task_b: string;
  weight: number;
}

export interface ScenarioDocumentTree {
  schema_version: number;
  sites: SiteDoc[];
  tasks: TaskDoc[];
  coupling: CouplingDoc[];
  pinned: Record<string, string>;
  alternatives?: Record<string, Record<string, string>>;
  goal?: { viewpoint: string; context_note: string };
  [key: string]: unknown;
}

export type AssignmentMap = Record<string, string>;
