/*
 * Comparison table view built from an evaluation report.
 *
 * Each cell is a formatted copy of one response field; rows derived from a
 * perplexity extrapolation are flagged so the rendering can mark them.
 */

import {
  formatCents,
  formatCostCents,
  formatMessages,
  formatMonths,
  formatPpl,
  formatProbabilityPercent,
  formatUsdWhole,
} from "./format.js";
import type { ReportPayload, ReportRow } from "./types.js";

export interface TableRowView {
  modelId: string;
  extrapolated: boolean;
  neverBreaksEven: boolean;
  negative: boolean;
  cells: string[];
}

export interface TableView {
  header: string[];
  rows: TableRowView[];
  hasBreakEven: boolean;
  notes: string[];
}

const BASE_HEADER = [
  "model",
  "ppl",
  "use",
  "edit",
  "ignore",
  "cost ¢/msg",
  "ENCS ¢/msg",
  "ENCS $/yr",
];

const BREAK_EVEN_HEADER = ["break-even msgs", "break-even months"];

function rowCells(row: ReportRow, hasBreakEven: boolean): string[] {
  const cells = [
    row.model_id,
    formatPpl(row.ppl),
    formatProbabilityPercent(row.p_use),
    formatProbabilityPercent(row.p_edit),
    formatProbabilityPercent(row.p_ignore),
    formatCostCents(row.cost_cents_per_message),
    formatCents(row.encs_cents_per_message),
    formatUsdWhole(row.encs_per_year),
  ];
  if (hasBreakEven) {
    cells.push(formatMessages(row.break_even_messages, row.never_breaks_even));
    cells.push(formatMonths(row.break_even_months, row.never_breaks_even));
  }
  return cells;
}

export function comparisonTable(report: ReportPayload): TableView {
  const hasBreakEven = report.breakeven_inputs !== null;
  return {
    header: hasBreakEven ? [...BASE_HEADER, ...BREAK_EVEN_HEADER] : [...BASE_HEADER],
    rows: report.rows.map((row) => ({
      modelId: row.model_id,
      extrapolated: row.usage_source === "perplexity",
      neverBreaksEven: row.never_breaks_even,
      negative: row.encs_per_message < 0,
      cells: rowCells(row, hasBreakEven),
    })),
    hasBreakEven,
    notes: [...report.notes],
  };
}

/** Render the view as an HTML table; extrapolated rows get a marker and class. */
export function tableHtml(view: TableView): string {
  const head = view.header.map((h) => `<th>${escapeHtml(h)}</th>`).join("");
  const body = view.rows
    .map((row) => {
      const classes = [
        row.extrapolated ? "extrapolated" : "annotated",
        row.negative ? "negative" : "",
        row.neverBreaksEven ? "never" : "",
      ].filter(Boolean).join(" ");
      const cells = row.cells
        .map((cell, i) => {
          const marker = i === 0 && row.extrapolated ? " <sup>†</sup>" : "";
          return `<td>${escapeHtml(cell)}${marker}</td>`;
        })
        .join("");
      return `<tr class="${classes}">${cells}</tr>`;
    })
    .join("");
  const legend = view.rows.some((r) => r.extrapolated)
    ? `<p class="legend"><sup>†</sup> usability extrapolated from perplexity</p>`
    : "";
  return `<table><thead><tr>${head}</tr></thead><tbody>${body}</tbody></table>${legend}`;
}

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}
