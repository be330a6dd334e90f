/*
 * Client-side validation of an in-progress scenario document.
 *
 * These checks mirror the service's schema closely enough to gate the
 * submit/auto-evaluate path; the service stays the authority and its
 * error envelope is still surfaced when it disagrees.
 */

import type { ScenarioDoc } from "./types.js";

export interface DraftIssue {
  path: string;
  message: string;
}

function isObject(x: unknown): x is Record<string, unknown> {
  return typeof x === "object" && x !== null && !Array.isArray(x);
}

function num(x: unknown): number | null {
  return typeof x === "number" && Number.isFinite(x) ? x : null;
}

function checkNumber(
  issues: DraftIssue[],
  holder: Record<string, unknown>,
  key: string,
  path: string,
  opts: { min?: number; strictMin?: number } = {},
): number | null {
  const v = num(holder[key]);
  if (v === null) {
    issues.push({ path, message: "must be a number" });
    return null;
  }
  if (opts.strictMin !== undefined && !(v > opts.strictMin)) {
    issues.push({ path, message: `must be > ${opts.strictMin}` });
    return null;
  }
  if (opts.min !== undefined && !(v >= opts.min)) {
    issues.push({ path, message: `must be >= ${opts.min}` });
    return null;
  }
  return v;
}

/** Empty result means the draft is ready to submit. */
export function validateScenario(doc: unknown): DraftIssue[] {
  const issues: DraftIssue[] = [];
  if (!isObject(doc)) {
    return [{ path: "scenario", message: "must be an object" }];
  }

  if (typeof doc.name !== "string" || doc.name.trim() === "") {
    issues.push({ path: "name", message: "must be a non-empty string" });
  }

  if (!isObject(doc.economics)) {
    issues.push({ path: "economics", message: "is required" });
  } else {
    checkNumber(issues, doc.economics, "hourly_rate", "economics.hourly_rate",
      { strictMin: 0 });
    checkNumber(issues, doc.economics, "baseline_response_time",
      "economics.baseline_response_time", { strictMin: 0 });
  }

  if (!isObject(doc.timings)) {
    issues.push({ path: "timings", message: "is required" });
  } else {
    for (const key of ["t_use", "t_edit", "t_ignore"]) {
      checkNumber(issues, doc.timings, key, `timings.${key}`, { min: 0 });
    }
  }

  if (!isObject(doc.volumes)) {
    issues.push({ path: "volumes", message: "is required" });
  } else {
    const monthly = num(doc.volumes.messages_per_month);
    const annual = num(doc.volumes.annual_messages);
    if (monthly === null && annual === null) {
      issues.push({
        path: "volumes",
        message: "needs messages_per_month or annual_messages",
      });
    }
    if (monthly !== null && !(monthly > 0)) {
      issues.push({ path: "volumes.messages_per_month", message: "must be > 0" });
    }
    if (annual !== null && !(annual > 0)) {
      issues.push({ path: "volumes.annual_messages", message: "must be > 0" });
    }
  }

  if (doc.rnd !== undefined && doc.rnd !== null) {
    if (!isObject(doc.rnd)) {
      issues.push({ path: "rnd", message: "must be an object" });
    } else {
      checkNumber(issues, doc.rnd, "build_cost", "rnd.build_cost", { min: 0 });
      const months = checkNumber(issues, doc.rnd, "amortization_months",
        "rnd.amortization_months", { min: 1 });
      if (months !== null && !Number.isInteger(months)) {
        issues.push({ path: "rnd.amortization_months", message: "must be an integer" });
      }
      if (doc.rnd.annual_maintenance !== undefined) {
        checkNumber(issues, doc.rnd, "annual_maintenance",
          "rnd.annual_maintenance", { min: 0 });
      }
    }
  }

  if (!Array.isArray(doc.models) || doc.models.length === 0) {
    issues.push({ path: "models", message: "needs at least one model" });
    return issues;
  }
  doc.models.forEach((model, i) => validateModel(issues, model, `models[${i}]`));
  return issues;
}

function validateModel(issues: DraftIssue[], model: unknown, path: string): void {
  if (!isObject(model)) {
    issues.push({ path, message: "must be an object" });
    return;
  }
  if (typeof model.model_id !== "string" || model.model_id.trim() === "") {
    issues.push({ path: `${path}.model_id`, message: "must be a non-empty string" });
  }
  validateUsage(issues, model.usage, `${path}.usage`);
  validateCost(issues, model.cost, `${path}.cost`);
}

function validateUsage(issues: DraftIssue[], usage: unknown, path: string): void {
  if (!isObject(usage)) {
    issues.push({ path, message: "is required" });
    return;
  }
  if (usage.source === "annotated") {
    let sum = 0;
    let complete = true;
    for (const key of ["p_use", "p_edit", "p_ignore"]) {
      const v = checkNumber(issues, usage, key, `${path}.${key}`, { min: 0 });
      if (v === null) {
        complete = false;
      } else {
        if (v > 1) issues.push({ path: `${path}.${key}`, message: "must be <= 1" });
        sum += v;
      }
    }
    // matches the service's simplex tolerance for rounded published tables
    if (complete && Math.abs(sum - 1) > 0.02) {
      issues.push({ path, message: `probabilities sum to ${sum.toFixed(4)}, not 1` });
    }
  } else if (usage.source === "perplexity") {
    checkNumber(issues, usage, "ppl", `${path}.ppl`, { min: 1 });
    const hasSet = typeof usage.coefficient_set === "string";
    const hasInline = isObject(usage.coefficients);
    if (hasSet === hasInline) {
      issues.push({
        path,
        message: "needs exactly one of coefficient_set / coefficients",
      });
    }
  } else {
    issues.push({ path: `${path}.source`, message: "must be annotated or perplexity" });
  }
}

function validateCost(issues: DraftIssue[], cost: unknown, path: string): void {
  if (!isObject(cost)) {
    issues.push({ path, message: "is required" });
    return;
  }
  if (cost.source === "explicit") {
    checkNumber(issues, cost, "usd_per_message", `${path}.usd_per_message`, { min: 0 });
  } else if (cost.source === "api") {
    checkNumber(issues, cost, "usd_per_1k_tokens", `${path}.usd_per_1k_tokens`,
      { min: 0 });
    const tokens = num(cost.tokens_per_message);
    if (tokens === null && !isObject(cost.message_shape)) {
      issues.push({
        path,
        message: "needs tokens_per_message or message_shape",
      });
    }
  } else if (cost.source === "self_hosted") {
    checkNumber(issues, cost, "latency_seconds", `${path}.latency_seconds`, { min: 0 });
    const gpu = cost.gpu;
    if (typeof gpu !== "string" && !isObject(gpu)) {
      issues.push({ path: `${path}.gpu`, message: "needs a GPU preset id or pricing" });
    }
  } else {
    issues.push({
      path: `${path}.source`,
      message: "must be explicit, api or self_hosted",
    });
  }
}

/** Convenience guard used by the submit path. */
export function isSubmittable(doc: unknown): doc is ScenarioDoc {
  return validateScenario(doc).length === 0;
}
