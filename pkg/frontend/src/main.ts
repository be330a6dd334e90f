/*
 * Application wiring: DOM events in, service requests out.
 *
 * All economics shown on screen come back from the service; this file only
 * moves values between form controls, the scenario draft, and the panels.
 */

import { ApiError, makeClient } from "./api.js";
import type { ApiClient } from "./api.js";
import { breakEvenChart } from "./chart.js";
import type { AxisMode } from "./chart.js";
import { validateScenario } from "./draft.js";
import {
  formatCents,
  formatPercentValue,
  formatSeconds,
  formatUsdSmall,
} from "./format.js";
import { rebalance } from "./simplex.js";
import type { Triple } from "./simplex.js";
import { liveQuery } from "./state.js";
import { comparisonTable, tableHtml } from "./table.js";
import type {
  BreakevenResult,
  EncsResponse,
  ModelSpec,
  PredictRuResponse,
  PresetCatalog,
  ReportPayload,
  ScenarioDoc,
} from "./types.js";

function byId<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el as T;
}

function numberOf(input: HTMLInputElement): number {
  const v = Number(input.value);
  return Number.isFinite(v) ? v : NaN;
}

// -- app state ---------------------------------------------------------------

const params = new URLSearchParams(window.location.search);
const initialBase = params.get("api") ?? "http://localhost:8157";

let client: ApiClient = makeClient(initialBase);
let catalog: PresetCatalog | null = null;
let doc: ScenarioDoc | null = null;
let report: ReportPayload | null = null;
let selectedModel: string | null = null;
let axis: AxisMode = "messages";
let unitTriple: Triple = [0.7, 0.15, 0.15];
let lastBreakeven: BreakevenResult | null = null;

const banner = byId<HTMLParagraphElement>("banner");

function showError(err: unknown): void {
  const text =
    err instanceof ApiError
      ? `${err.code}${err.fieldPath ? ` at ${err.fieldPath}` : ""}: ${err.message}`
      : String(err);
  banner.textContent = text;
  banner.classList.add("show");
}

function clearError(): void {
  banner.classList.remove("show");
}

// -- evaluation pipeline -------------------------------------------------------

const runEvaluate = liveQuery(
  250,
  (scenario: ScenarioDoc) => client.evaluate(scenario),
  (payload) => {
    clearError();
    report = payload;
    renderReport();
    scheduleBreakeven();
  },
  showError,
);

function scheduleEvaluate(): void {
  if (doc === null) return;
  const issues = validateScenario(doc);
  renderIssues(issues.map((i) => `${i.path}: ${i.message}`));
  if (issues.length === 0) runEvaluate(doc);
}

function renderIssues(texts: string[]): void {
  byId<HTMLUListElement>("issues").innerHTML = texts
    .map((t) => `<li>${t}</li>`)
    .join("");
}

// -- break-even pipeline -------------------------------------------------------

const runBreakeven = liveQuery(
  150,
  (args: { c_rnd: number; c_m: number; monthly_volume: number | null;
           encs_per_message: number }) =>
    client.breakeven({
      c_rnd: args.c_rnd,
      encs_per_message: args.encs_per_message,
      c_m: args.c_m,
      monthly_volume: args.monthly_volume,
      curve_points: 120,
    }),
  (result) => {
    lastBreakeven = result;
    renderChart();
  },
  showError,
);

function scheduleBreakeven(): void {
  lastBreakeven = null;
  if (report === null || report.breakeven_inputs === null) {
    renderChart();
    return;
  }
  const row =
    report.rows.find((r) => r.model_id === selectedModel) ?? report.rows[0];
  if (!row) {
    renderChart();
    return;
  }
  selectedModel = row.model_id;
  runBreakeven({
    c_rnd: report.breakeven_inputs.c_rnd,
    c_m: report.breakeven_inputs.c_m,
    monthly_volume: report.breakeven_inputs.monthly_volume,
    encs_per_message: row.encs_per_message,
  });
}

function renderChart(): void {
  const target = byId<HTMLDivElement>("chart");
  const label = byId<HTMLSpanElement>("chart-model");
  if (report === null || report.breakeven_inputs === null) {
    target.innerHTML =
      `<p class="muted">enable build &amp; maintenance to see break-even</p>`;
    label.textContent = "";
    return;
  }
  if (lastBreakeven === null) {
    label.textContent = selectedModel ? `— ${selectedModel}` : "";
    return;
  }
  const monthsAvailable = lastBreakeven.curve.months !== null;
  const monthsRadio = byId<HTMLInputElement>("axis-months");
  monthsRadio.disabled = !monthsAvailable;
  if (!monthsAvailable && axis === "months") axis = "messages";
  target.innerHTML = breakEvenChart({
    curve: lastBreakeven.curve,
    axis,
    breakEven:
      lastBreakeven.kind === "ok"
        ? { messages: lastBreakeven.messages, months: lastBreakeven.months }
        : null,
  });
  label.textContent = selectedModel ? `— ${selectedModel}` : "";
}

// -- comparison table ----------------------------------------------------------

function renderReport(): void {
  if (report === null) return;
  const view = comparisonTable(report);
  byId<HTMLDivElement>("table-wrap").innerHTML = tableHtml(view);
  byId<HTMLParagraphElement>("report-notes").textContent =
    view.notes.join(" · ");
  const rows = byId<HTMLDivElement>("table-wrap").querySelectorAll("tbody tr");
  rows.forEach((tr, i) => {
    const row = report!.rows[i];
    if (row.model_id === selectedModel) tr.classList.add("selected");
    tr.addEventListener("click", () => {
      selectedModel = row.model_id;
      rows.forEach((other) => other.classList.remove("selected"));
      tr.classList.add("selected");
      scheduleBreakeven();
    });
  });
}

// -- scenario scalar fields ------------------------------------------------------

interface ScalarBinding {
  id: string;
  get(): number | undefined;
  set(value: number): void;
}

function scalarBindings(): ScalarBinding[] {
  if (doc === null) return [];
  const d = doc;
  return [
    { id: "econ-rate", get: () => d.economics.hourly_rate,
      set: (v) => { d.economics.hourly_rate = v; } },
    { id: "econ-baseline", get: () => d.economics.baseline_response_time,
      set: (v) => { d.economics.baseline_response_time = v; } },
    { id: "t-use", get: () => d.timings.t_use, set: (v) => { d.timings.t_use = v; } },
    { id: "t-edit", get: () => d.timings.t_edit,
      set: (v) => { d.timings.t_edit = v; } },
    { id: "t-ignore", get: () => d.timings.t_ignore,
      set: (v) => { d.timings.t_ignore = v; } },
    { id: "vol-monthly", get: () => d.volumes.messages_per_month,
      set: (v) => { d.volumes.messages_per_month = v; } },
    { id: "vol-annual", get: () => d.volumes.annual_messages,
      set: (v) => { d.volumes.annual_messages = v; } },
    { id: "rnd-build", get: () => d.rnd?.build_cost,
      set: (v) => { if (d.rnd) d.rnd.build_cost = v; } },
    { id: "rnd-months", get: () => d.rnd?.amortization_months,
      set: (v) => { if (d.rnd) d.rnd.amortization_months = v; } },
    { id: "rnd-maint", get: () => d.rnd?.annual_maintenance,
      set: (v) => { if (d.rnd) d.rnd.annual_maintenance = v; } },
  ];
}

function hydrateScalarInputs(): void {
  for (const binding of scalarBindings()) {
    const input = byId<HTMLInputElement>(binding.id);
    const value = binding.get();
    input.value = value === undefined ? "" : String(value);
  }
  const rnd = byId<HTMLInputElement>("rnd-enabled");
  rnd.checked = doc?.rnd !== undefined && doc?.rnd !== null;
  byId<HTMLDivElement>("rnd-fields").style.display = rnd.checked ? "" : "none";
}

function wireScalarInputs(): void {
  for (const binding of scalarBindings()) {
    byId<HTMLInputElement>(binding.id).addEventListener("input", (ev) => {
      const input = ev.currentTarget as HTMLInputElement;
      if (input.value === "") {
        if (binding.id === "vol-monthly" && doc) {
          delete doc.volumes.messages_per_month;
        } else if (binding.id === "vol-annual" && doc) {
          delete doc.volumes.annual_messages;
        }
      } else {
        const v = numberOf(input);
        if (!Number.isNaN(v)) binding.set(v);
      }
      scheduleEvaluate();
    });
  }
  byId<HTMLInputElement>("rnd-enabled").addEventListener("change", (ev) => {
    if (doc === null) return;
    const checked = (ev.currentTarget as HTMLInputElement).checked;
    if (checked) {
      doc.rnd = doc.rnd ?? {
        build_cost: 50000, amortization_months: 36, annual_maintenance: 0,
      };
    } else {
      delete doc.rnd;
    }
    hydrateScalarInputs();
    scheduleEvaluate();
  });
}

// -- model cards -----------------------------------------------------------------

function gpuOptions(selected: string): string {
  if (catalog === null) return "";
  return Object.keys(catalog.gpus)
    .map((id) =>
      `<option value="${id}"${id === selected ? " selected" : ""}>${id}</option>`)
    .join("");
}

function coefficientSetOptions(selected: string): string {
  if (catalog === null) return "";
  return Object.keys(catalog.coefficient_sets)
    .map((id) =>
      `<option value="${id}"${id === selected ? " selected" : ""}>${id}</option>`)
    .join("");
}

function usageFields(model: ModelSpec, idx: number): string {
  const u = model.usage;
  if (u.source === "annotated") {
    return `
      <div class="row">
        <label>P(use)<input type="number" min="0" max="1" step="0.01"
          data-idx="${idx}" data-field="p_use" value="${u.p_use}" /></label>
        <label>P(edit)<input type="number" min="0" max="1" step="0.01"
          data-idx="${idx}" data-field="p_edit" value="${u.p_edit}" /></label>
        <label>P(ignore)<input type="number" min="0" max="1" step="0.01"
          data-idx="${idx}" data-field="p_ignore" value="${u.p_ignore}" /></label>
      </div>`;
  }
  const setId = u.coefficient_set ?? "";
  return `
    <div class="row two">
      <label>perplexity<input type="number" min="1" step="0.01"
        data-idx="${idx}" data-field="ppl" value="${u.ppl}" /></label>
      <label>coefficient set<select data-idx="${idx}" data-field="coefficient_set">
        ${coefficientSetOptions(setId)}</select></label>
    </div>`;
}

function costFields(model: ModelSpec, idx: number): string {
  const c = model.cost;
  if (c.source === "explicit") {
    return `
      <div class="row two">
        <label>cost ($/message)<input type="number" min="0" step="0.0001"
          data-idx="${idx}" data-field="usd_per_message"
          value="${c.usd_per_message}" /></label>
        <span></span>
      </div>`;
  }
  if (c.source === "api") {
    return `
      <div class="row two">
        <label>price ($/1k tokens)<input type="number" min="0" step="0.001"
          data-idx="${idx}" data-field="usd_per_1k_tokens"
          value="${c.usd_per_1k_tokens}" /></label>
        <label>tokens per message<input type="number" min="0" step="1"
          data-idx="${idx}" data-field="tokens_per_message"
          value="${c.tokens_per_message ?? ""}" /></label>
      </div>`;
  }
  const preset = typeof c.gpu === "string" ? c.gpu : "";
  return `
    <div class="row">
      <label>GPU preset<select data-idx="${idx}" data-field="gpu">
        ${gpuOptions(preset)}</select></label>
      <label>latency (s)<input type="number" min="0" step="0.001"
        data-idx="${idx}" data-field="latency_seconds"
        value="${c.latency_seconds}" /></label>
      <label>throughput (req/s)<input type="number" min="0" step="1"
        data-idx="${idx}" data-field="throughput_per_second"
        value="${c.throughput_per_second ?? ""}" /></label>
    </div>`;
}

function renderModels(): void {
  if (doc === null) return;
  const cards = doc.models.map((model, idx) => `
    <div class="model-card" data-card="${idx}">
      <div class="card-head">
        <input type="text" data-idx="${idx}" data-field="model_id"
               value="${model.model_id}" style="max-width:220px" />
        <button type="button" data-remove="${idx}">remove</button>
      </div>
      <div class="row two">
        <label>usage source<select data-idx="${idx}" data-field="usage_source">
          <option value="annotated"${model.usage.source === "annotated" ? " selected" : ""}>annotated</option>
          <option value="perplexity"${model.usage.source === "perplexity" ? " selected" : ""}>perplexity</option>
        </select></label>
        <label>cost source<select data-idx="${idx}" data-field="cost_source">
          <option value="explicit"${model.cost.source === "explicit" ? " selected" : ""}>explicit</option>
          <option value="api"${model.cost.source === "api" ? " selected" : ""}>api</option>
          <option value="self_hosted"${model.cost.source === "self_hosted" ? " selected" : ""}>self-hosted</option>
        </select></label>
      </div>
      ${usageFields(model, idx)}
      ${costFields(model, idx)}
    </div>`);
  byId<HTMLDivElement>("models").innerHTML = cards.join("");
}

function handleModelInput(target: HTMLInputElement | HTMLSelectElement): void {
  if (doc === null) return;
  const idx = Number(target.dataset.idx);
  const field = target.dataset.field;
  const model = doc.models[idx];
  if (!model || !field) return;

  if (field === "model_id") {
    model.model_id = target.value;
  } else if (field === "usage_source") {
    model.usage = target.value === "annotated"
      ? { source: "annotated", p_use: 0.7, p_edit: 0.15, p_ignore: 0.15 }
      : { source: "perplexity", ppl: 4.0,
          coefficient_set: firstCoefficientSet() };
    renderModels();
  } else if (field === "cost_source") {
    if (target.value === "explicit") {
      model.cost = { source: "explicit", usd_per_message: 0.001 };
    } else if (target.value === "api") {
      model.cost = { source: "api", usd_per_1k_tokens: 0.02,
                     tokens_per_message: 550 };
    } else {
      model.cost = { source: "self_hosted", latency_seconds: 0.05,
                     gpu: firstGpu() };
    }
    renderModels();
  } else if (["p_use", "p_edit", "p_ignore"].includes(field)
             && model.usage.source === "annotated") {
    const order: Array<"p_use" | "p_edit" | "p_ignore"> =
      ["p_use", "p_edit", "p_ignore"];
    const edited = order.indexOf(field as "p_use");
    const triple: Triple = [
      model.usage.p_use, model.usage.p_edit, model.usage.p_ignore,
    ];
    const next = rebalance(triple, edited as 0 | 1 | 2,
      Number(target.value));
    model.usage.p_use = next[0];
    model.usage.p_edit = next[1];
    model.usage.p_ignore = next[2];
    // refresh the sibling inputs without a full re-render
    const card = target.closest(".model-card");
    order.forEach((key, i) => {
      const input = card?.querySelector<HTMLInputElement>(
        `input[data-field="${key}"]`);
      if (input && input !== target) input.value = next[i].toFixed(4);
    });
  } else if (field === "ppl" && model.usage.source === "perplexity") {
    model.usage.ppl = Number(target.value);
  } else if (field === "coefficient_set" && model.usage.source === "perplexity") {
    model.usage.coefficient_set = target.value;
    delete model.usage.coefficients;
  } else if (field === "usd_per_message" && model.cost.source === "explicit") {
    model.cost.usd_per_message = Number(target.value);
  } else if (model.cost.source === "api"
             && ["usd_per_1k_tokens", "tokens_per_message"].includes(field)) {
    if (field === "usd_per_1k_tokens") {
      model.cost.usd_per_1k_tokens = Number(target.value);
    } else if (target.value === "") {
      delete model.cost.tokens_per_message;
    } else {
      model.cost.tokens_per_message = Number(target.value);
    }
  } else if (model.cost.source === "self_hosted"
             && ["gpu", "latency_seconds", "throughput_per_second"]
               .includes(field)) {
    if (field === "gpu") {
      model.cost.gpu = target.value;
    } else if (field === "latency_seconds") {
      model.cost.latency_seconds = Number(target.value);
    } else if (target.value === "") {
      delete model.cost.throughput_per_second;
    } else {
      model.cost.throughput_per_second = Number(target.value);
    }
  }
  scheduleEvaluate();
}

function firstCoefficientSet(): string {
  return catalog === null ? "" : Object.keys(catalog.coefficient_sets)[0] ?? "";
}

function firstGpu(): string {
  return catalog === null ? "" : Object.keys(catalog.gpus)[0] ?? "";
}

function wireModelPanel(): void {
  const container = byId<HTMLDivElement>("models");
  container.addEventListener("input", (ev) => {
    const target = ev.target as HTMLElement;
    if (target instanceof HTMLInputElement
        || target instanceof HTMLSelectElement) {
      handleModelInput(target);
    }
  });
  container.addEventListener("click", (ev) => {
    const target = ev.target as HTMLElement;
    const removeIdx = target.dataset.remove;
    if (removeIdx !== undefined && doc !== null) {
      doc.models.splice(Number(removeIdx), 1);
      renderModels();
      scheduleEvaluate();
    }
  });
  byId<HTMLButtonElement>("add-model").addEventListener("click", () => {
    if (doc === null) return;
    doc.models.push({
      model_id: `model-${doc.models.length + 1}`,
      usage: { source: "annotated", p_use: 0.7, p_edit: 0.15, p_ignore: 0.15 },
      cost: { source: "explicit", usd_per_message: 0.001 },
    });
    renderModels();
    scheduleEvaluate();
  });
}

// -- unit economics panel ---------------------------------------------------------

const ACTION_LABELS = ["use", "edit", "ignore"] as const;

const runUnitEncs = liveQuery(
  200,
  (): Promise<EncsResponse | null> => {
    if (doc === null) return Promise.resolve(null);
    return client.encs({
      economics: doc.economics,
      timings: doc.timings,
      usage: {
        p_use: unitTriple[0], p_edit: unitTriple[1], p_ignore: unitTriple[2],
      },
      cost_per_message: numberOf(byId<HTMLInputElement>("unit-cost")) || 0,
    });
  },
  (result) => {
    if (result !== null) renderUnitReadout(result);
  },
  showError,
);

function renderUnitSliders(): void {
  const host = byId<HTMLDivElement>("unit-sliders");
  host.innerHTML = ACTION_LABELS.map((label, i) => `
    <div class="slider-row">
      <span class="muted">P(${label})</span>
      <input type="range" min="0" max="100" step="0.1" data-slider="${i}"
             value="${(unitTriple[i] * 100).toFixed(1)}" />
      <output data-readout="${i}">${(unitTriple[i] * 100).toFixed(1)}%</output>
    </div>`).join("");
  host.querySelectorAll<HTMLInputElement>("input[data-slider]").forEach((input) => {
    input.addEventListener("input", () => {
      const i = Number(input.dataset.slider) as 0 | 1 | 2;
      unitTriple = rebalance(unitTriple, i, Number(input.value) / 100);
      host.querySelectorAll<HTMLInputElement>("input[data-slider]")
        .forEach((other) => {
          const j = Number(other.dataset.slider) as 0 | 1 | 2;
          if (other !== input) other.value = (unitTriple[j] * 100).toFixed(1);
        });
      host.querySelectorAll<HTMLOutputElement>("output[data-readout]")
        .forEach((out) => {
          const j = Number(out.dataset.readout) as 0 | 1 | 2;
          out.textContent = `${(unitTriple[j] * 100).toFixed(1)}%`;
        });
      runUnitEncs();
    });
  });
}

function renderUnitReadout(result: EncsResponse): void {
  clearError();
  const dl = byId<HTMLDListElement>("unit-readout");
  const encsClass = result.per_message < 0 ? "highlight negative-value" : "highlight";
  dl.innerHTML = `
    <dt>ENCS per message</dt>
      <dd class="${encsClass}">${formatCents(result.per_message_cents)}¢</dd>
    <dt>gross savings</dt><dd>${formatUsdSmall(result.gross_savings)}</dd>
    <dt>generation cost</dt><dd>${formatUsdSmall(result.generation_cost)}</dd>
    <dt>S(use)</dt><dd>${formatUsdSmall(result.savings.s_use)}</dd>
    <dt>S(edit)</dt><dd>${formatUsdSmall(result.savings.s_edit)}</dd>
    <dt>S(ignore)</dt><dd>${formatUsdSmall(result.savings.s_ignore)}</dd>
    <dt>assisted time</dt><dd>${formatSeconds(result.assisted_time_seconds)}</dd>`;
}

// -- perplexity explorer ------------------------------------------------------------

const runPredict = liveQuery(
  150,
  (ppl: number, set: string) => client.predictRu({ ppl, coefficient_set: set }),
  renderPplReadout,
  showError,
);

let lastPrediction: PredictRuResponse | null = null;

function renderPplReadout(result: PredictRuResponse): void {
  clearError();
  lastPrediction = result;
  byId<HTMLDListElement>("ppl-readout").innerHTML = `
    <dt>use</dt><dd>${formatPercentValue(result.percent.use)}%</dd>
    <dt>edit</dt><dd>${formatPercentValue(result.percent.edit)}%</dd>
    <dt>ignore</dt><dd>${formatPercentValue(result.percent.ignore)}%</dd>
    <dt>raw sum</dt><dd>${formatPercentValue(result.raw_sum)}</dd>`;
}

function wirePplExplorer(): void {
  const slider = byId<HTMLInputElement>("ppl-slider");
  const setSelect = byId<HTMLSelectElement>("ppl-set");
  const trigger = () => {
    byId<HTMLOutputElement>("ppl-value").textContent =
      Number(slider.value).toFixed(2);
    if (setSelect.value !== "") runPredict(Number(slider.value), setSelect.value);
  };
  slider.addEventListener("input", trigger);
  setSelect.addEventListener("change", trigger);
  byId<HTMLButtonElement>("ppl-apply").addEventListener("click", () => {
    if (doc === null || lastPrediction === null) return;
    const model =
      doc.models.find((m) => m.model_id === selectedModel) ?? doc.models[0];
    if (!model) return;
    model.usage = {
      source: "perplexity",
      ppl: Number(slider.value),
      coefficient_set: setSelect.value,
    };
    renderModels();
    scheduleEvaluate();
  });
}

// -- presets and bootstrapping --------------------------------------------------------

function loadScenario(scenario: ScenarioDoc): void {
  doc = structuredClone(scenario);
  report = null;
  selectedModel = doc.models[0]?.model_id ?? null;
  hydrateScalarInputs();
  renderModels();
  scheduleEvaluate();
  runUnitEncs();
}

async function loadCatalog(): Promise<void> {
  catalog = await client.presets();
  byId<HTMLSpanElement>("catalog-version").textContent =
    `catalog v${catalog.version}`;
  const select = byId<HTMLSelectElement>("preset-select");
  select.innerHTML = Object.keys(catalog.scenarios)
    .sort()
    .map((name) => `<option value="${name}">${name}</option>`)
    .join("");
  const setSelect = byId<HTMLSelectElement>("ppl-set");
  setSelect.innerHTML = coefficientSetOptions(firstCoefficientSet());
}

async function init(): Promise<void> {
  byId<HTMLInputElement>("api-base").value = initialBase;
  byId<HTMLInputElement>("api-base").addEventListener("change", (ev) => {
    client = makeClient((ev.currentTarget as HTMLInputElement).value);
    void loadCatalog().then(() => scheduleEvaluate()).catch(showError);
  });

  wireScalarInputs();
  wireModelPanel();
  wirePplExplorer();
  renderUnitSliders();
  byId<HTMLInputElement>("unit-cost").addEventListener("input", () => runUnitEncs());

  document.querySelectorAll<HTMLInputElement>('input[name="axis"]')
    .forEach((radio) => {
      radio.addEventListener("change", () => {
        axis = radio.value as AxisMode;
        renderChart();
      });
    });

  byId<HTMLButtonElement>("load-preset").addEventListener("click", () => {
    if (catalog === null) return;
    const name = byId<HTMLSelectElement>("preset-select").value;
    const scenario = catalog.scenarios[name];
    if (scenario) loadScenario(scenario);
  });

  try {
    await loadCatalog();
    const first = catalog?.scenarios["ar_table4"] ??
      Object.values(catalog?.scenarios ?? {})[0];
    if (first) loadScenario(first);
    const slider = byId<HTMLInputElement>("ppl-slider");
    const setSelect = byId<HTMLSelectElement>("ppl-set");
    if (setSelect.value !== "") {
      runPredict(Number(slider.value), setSelect.value);
    }
  } catch (err) {
    showError(err);
  }
}

void init();
