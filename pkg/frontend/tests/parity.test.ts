/*
 * End-to-end display parity: every figure the UI renders must equal the
 * corresponding service response field after display rounding, nothing
 * else. Expected strings here are built with Intl, independently of the
 * formatting code under test, so a drift in either layer fails loudly.
 */

import { describe, expect, it } from "vitest";

import { formatPercentValue, formatProbabilityPercent } from "../src/format.js";
import { comparisonTable } from "../src/table.js";
import type {
  EncsResponse,
  PredictRuResponse,
  ReportPayload,
} from "../src/types.js";
import encsPu1C0 from "./fixtures/encs_pu1_c0.json";
import encsReference from "./fixtures/encs_reference.json";
import predictRu from "./fixtures/predict_ru.json";
import reportAppendixK from "./fixtures/report_appendix_k.json";
import reportArTable4 from "./fixtures/report_ar_table4.json";

const arReport = reportArTable4 as unknown as ReportPayload;
const akReport = reportAppendixK as unknown as ReportPayload;
const predictions = predictRu as unknown as Record<string, PredictRuResponse>;

// independent renderings of the display conventions, via Intl
const grouped0 = new Intl.NumberFormat("en-US", { maximumFractionDigits: 0 });
const plain1 = new Intl.NumberFormat("en-US", {
  minimumFractionDigits: 1, maximumFractionDigits: 1, useGrouping: false,
});
const plain2 = new Intl.NumberFormat("en-US", {
  minimumFractionDigits: 2, maximumFractionDigits: 2, useGrouping: false,
});
const plain4trim = new Intl.NumberFormat("en-US", {
  maximumFractionDigits: 4, useGrouping: false,
});

function expectedDollarsWhole(raw: number): string {
  const rounded = Math.round(raw);
  return rounded < 0 ? `-$${grouped0.format(-rounded)}` : `$${grouped0.format(rounded)}`;
}

function expectedCell(idx: number, raw: ReportPayload["rows"][number],
                      hasBreakEven: boolean): string {
  switch (idx) {
    case 0: return raw.model_id;
    case 1: return raw.ppl === null ? "—" : plain2.format(raw.ppl);
    case 2: return `${plain1.format(raw.p_use * 100)}%`;
    case 3: return `${plain1.format(raw.p_edit * 100)}%`;
    case 4: return `${plain1.format(raw.p_ignore * 100)}%`;
    case 5: return plain4trim.format(raw.cost_cents_per_message);
    case 6: return plain2.format(raw.encs_cents_per_message);
    case 7: return expectedDollarsWhole(raw.encs_per_year);
    case 8:
      if (!hasBreakEven) throw new Error("no break-even column");
      if (raw.never_breaks_even) return "never";
      return raw.break_even_messages === null
        ? "—" : grouped0.format(Math.round(raw.break_even_messages));
    case 9:
      if (raw.never_breaks_even) return "never";
      return raw.break_even_months === null
        ? "—" : plain2.format(raw.break_even_months);
    default:
      throw new Error(`unexpected column ${idx}`);
  }
}

describe("comparison table parity with the evaluation response", () => {
  it.each([
    ["ar_table4", arReport],
    ["appendix_k", akReport],
  ] as Array<[string, ReportPayload]>)(
    "every rendered cell in %s equals the rounded response field",
    (_name, report) => {
      const view = comparisonTable(report);
      view.rows.forEach((row, i) => {
        const raw = report.rows[i];
        row.cells.forEach((cell, idx) => {
          expect(cell).toBe(expectedCell(idx, raw, view.hasBreakEven));
        });
      });
    },
  );

  it("freezes the headline row strings", () => {
    const view = comparisonTable(arReport);
    expect(view.rows[0].cells).toEqual([
      "gpt2-bft-bd", "—", "57.0%", "16.0%", "28.0%", "0.0011", "4.46", "$53,487",
    ]);
    const akView = comparisonTable(akReport);
    expect(akView.rows.map((r) => [r.cells[8], r.cells[9]])).toEqual([
      ["905,313", "0.24"],
      ["1,078,347", "0.29"],
    ]);
  });
});

// reference usability shares at the eight catalogued perplexities, in
// percent. Interior points must agree to 0.1 point after display rounding;
// the two anchor perplexities must reproduce exactly.
const REFERENCE_SHARES: Record<string, [number, number, number]> = {
  "1.93": [64.7, 16.0, 19.3],
  "4.05": [62.6, 16.7, 20.7],
  "4.14": [62.5, 16.8, 20.7],
  "4.15": [62.5, 16.8, 20.7],
  "4.27": [62.4, 16.8, 20.8],
  "4.5": [62.1, 16.9, 21.0],
  "5.31": [61.3, 17.2, 21.5],
  "7.08": [59.5, 17.8, 22.7],
};

describe("perplexity slider parity with the prediction response", () => {
  it("covers all eight catalogued perplexities", () => {
    expect(Object.keys(predictions).sort()).toEqual(
      Object.keys(REFERENCE_SHARES).sort(),
    );
  });

  it("rendered one-decimal shares sit within 0.1 point of the references", () => {
    for (const [key, [use, edit, ignore]] of Object.entries(REFERENCE_SHARES)) {
      const resp = predictions[key];
      const rendered = [
        formatPercentValue(resp.percent.use),
        formatPercentValue(resp.percent.edit),
        formatPercentValue(resp.percent.ignore),
      ];
      const reference = [use, edit, ignore];
      rendered.forEach((text, i) => {
        expect(Math.abs(Number(text) - reference[i]),
          `ppl ${key} share ${i}: rendered ${text} vs ${reference[i]}`)
          .toBeLessThanOrEqual(0.1 + 1e-9);
      });
    }
  });

  it("reproduces the anchor triples exactly", () => {
    const low = predictions["1.93"];
    expect([
      formatPercentValue(low.percent.use),
      formatPercentValue(low.percent.edit),
      formatPercentValue(low.percent.ignore),
    ]).toEqual(["64.7", "16.0", "19.3"]);
    const high = predictions["7.08"];
    expect([
      formatPercentValue(high.percent.use),
      formatPercentValue(high.percent.edit),
      formatPercentValue(high.percent.ignore),
    ]).toEqual(["59.5", "17.8", "22.7"]);
  });

  it("matches the extrapolated table rows to the same predictions", () => {
    const rows = arReport.rows.filter((r) => r.usage_source === "perplexity");
    expect(rows).toHaveLength(8);
    for (const row of rows) {
      const resp = predictions[String(row.ppl)];
      expect(resp, `prediction for ppl ${row.ppl}`).toBeDefined();
      expect(formatProbabilityPercent(row.p_use))
        .toBe(`${formatPercentValue(resp.percent.use)}%`);
      expect(formatProbabilityPercent(row.p_edit))
        .toBe(`${formatPercentValue(resp.percent.edit)}%`);
      expect(formatProbabilityPercent(row.p_ignore))
        .toBe(`${formatPercentValue(resp.percent.ignore)}%`);
    }
  });
});

describe("unit economics identities", () => {
  it("certain use with free generation shows ENCS equal to the use saving", () => {
    const resp = encsPu1C0 as unknown as EncsResponse;
    expect(resp.per_message).toBe(resp.savings.s_use);
    expect(resp.generation_cost).toBe(0);
    expect(plain2.format(resp.per_message_cents)).toBe("6.94");
    expect(plain2.format(resp.savings.s_use * 100)).toBe("6.94");
  });

  it("the reference mix renders the documented per-message figure", () => {
    const resp = encsReference as unknown as EncsResponse;
    expect(plain2.format(resp.per_message_cents)).toBe("4.24");
    expect(resp.assisted_time_seconds).toBeCloseTo(10.8, 12);
  });
});
