/*
 * Mirrors of the service's request and response schemas (/api/v1).
 * Every numeric field here is produced by the service; the UI renders
 * these values and never derives economic quantities of its own.
 */

export interface Economics {
  hourly_rate: number;
  baseline_response_time: number;
}

export interface Timings {
  t_use: number;
  t_edit: number;
  t_ignore: number;
}

export interface Usage {
  p_use: number;
  p_edit: number;
  p_ignore: number;
}

export interface EncsRequest {
  economics: Economics;
  timings: Timings;
  usage: Usage;
  cost_per_message: number;
}

export interface EncsResponse {
  per_message: number;
  per_message_cents: number;
  gross_savings: number;
  generation_cost: number;
  breakdown: { use: number; edit: number; ignore: number };
  savings: { s_use: number; s_edit: number; s_ignore: number };
  assisted_time_seconds: number;
}

export interface Line {
  slope: number;
  intercept: number;
}

export interface Coefficients {
  use: Line;
  edit: Line;
  ignore: Line;
}

export interface PredictRuRequest {
  ppl: number;
  coefficient_set?: string;
  coefficients?: Coefficients;
}

export interface PredictRuResponse {
  p_use: number;
  p_edit: number;
  p_ignore: number;
  percent: { use: number; edit: number; ignore: number };
  raw_sum: number;
  coefficient_set: string | null;
  preset_version: string;
}

export interface BreakevenRequest {
  c_rnd: number;
  encs_per_message: number;
  c_m?: number;
  monthly_volume?: number | null;
  curve_points?: number;
  horizon_messages?: number;
}

export interface CurvePayload {
  messages: number[];
  months: number[] | null;
  model_spend: number[];
  model_spend_upfront_only: number[];
  labor_offset: number[];
}

export interface BreakevenOk {
  kind: "ok";
  messages: number;
  messages_ceiling: number;
  months: number | null;
  curve: CurvePayload;
}

export interface BreakevenNever {
  kind: "never";
  message: string;
  curve: CurvePayload;
}

export type BreakevenResult = BreakevenOk | BreakevenNever;

// -- scenario documents (canonical JSON form) -------------------------------

export interface AnnotatedUsage {
  source: "annotated";
  p_use: number;
  p_edit: number;
  p_ignore: number;
}

export interface PerplexityUsage {
  source: "perplexity";
  ppl: number;
  coefficient_set?: string;
  coefficients?: Coefficients;
}

export type UsageSpec = AnnotatedUsage | PerplexityUsage;

export interface ExplicitCostSpec {
  source: "explicit";
  usd_per_message: number;
}

export interface SelfHostedCostSpec {
  source: "self_hosted";
  latency_seconds: number;
  gpu: string | { monthly_cost: number; billed_hours_per_month: number };
  throughput_per_second?: number;
}

export interface MessageShapeSpec {
  avg_chars_per_message?: number;
  chars_per_token?: number;
  tokens_per_message?: number;
}

export interface ApiCostSpec {
  source: "api";
  usd_per_1k_tokens: number;
  tokens_per_message?: number;
  message_shape?: MessageShapeSpec;
}

export type CostSpec = ExplicitCostSpec | SelfHostedCostSpec | ApiCostSpec;

export interface ModelSpec {
  model_id: string;
  usage: UsageSpec;
  cost: CostSpec;
  note?: string;
}

export interface ScenarioDoc {
  name: string;
  description?: string;
  economics: Economics;
  timings: Timings;
  volumes: { messages_per_month?: number; annual_messages?: number };
  rnd?: {
    build_cost: number;
    amortization_months: number;
    annual_maintenance?: number;
    per_message_maintenance?: number;
  };
  models: ModelSpec[];
}

// -- evaluation report ------------------------------------------------------

export interface ReportRow {
  model_id: string;
  ppl: number | null;
  p_use: number;
  p_edit: number;
  p_ignore: number;
  usage_source: "annotated" | "perplexity";
  coefficient_set: string | null;
  cost_per_message: number;
  cost_cents_per_message: number;
  encs_per_message: number;
  encs_cents_per_message: number;
  encs_per_year: number;
  break_even_messages: number | null;
  break_even_months: number | null;
  never_breaks_even: boolean;
}

export interface BreakevenInputs {
  c_rnd: number;
  c_m: number;
  monthly_volume: number | null;
}

export interface ReportPayload {
  scenario_name: string;
  preset_version: string;
  rows: ReportRow[];
  scenario: ScenarioDoc;
  notes: string[];
  breakeven_inputs: BreakevenInputs | null;
}

// -- preset catalog ---------------------------------------------------------

export interface PresetCatalog {
  version: string;
  scenarios: Record<string, ScenarioDoc>;
  coefficient_sets: Record<string, unknown>;
  gpus: Record<string, { monthly_cost: number; billed_hours_per_month: number }>;
  api_pricing: Record<string, { usd_per_1k_tokens: number }>;
  [key: string]: unknown;
}

export interface ErrorEnvelope {
  error: { code: string; message: string; field_path?: string };
}
