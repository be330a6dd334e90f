import { describe, expect, it } from "vitest";

import { comparisonTable, escapeHtml, tableHtml } from "../src/table.js";
import type { ReportPayload } from "../src/types.js";
import reportAppendixK from "./fixtures/report_appendix_k.json";
import reportArTable4 from "./fixtures/report_ar_table4.json";
import reportNever from "./fixtures/report_never.json";

const arReport = reportArTable4 as unknown as ReportPayload;
const akReport = reportAppendixK as unknown as ReportPayload;
const nvReport = reportNever as unknown as ReportPayload;

function rowByModel(report: ReportPayload, modelId: string) {
  const view = comparisonTable(report);
  const row = view.rows.find((r) => r.modelId === modelId);
  if (!row) throw new Error(`missing row ${modelId}`);
  return row;
}

describe("comparison table without break-even columns", () => {
  const view = comparisonTable(arReport);

  it("renders one row per model and an eight-column header", () => {
    expect(view.rows).toHaveLength(11);
    expect(view.header).toHaveLength(8);
    expect(view.hasBreakEven).toBe(false);
    expect(view.header[0]).toBe("model");
    expect(view.header[6]).toBe("ENCS ¢/msg");
  });

  it("renders the annotated flagship row", () => {
    // raw: encs 4.457233...c, 53486.8 $/yr, cost 0.0011 c
    const row = rowByModel(arReport, "gpt2-bft-bd");
    expect(row.cells).toEqual([
      "gpt2-bft-bd", "—", "57.0%", "16.0%", "28.0%", "0.0011", "4.46", "$53,487",
    ]);
    expect(row.extrapolated).toBe(false);
    expect(row.negative).toBe(false);
  });

  it("renders the priced api model", () => {
    const row = rowByModel(arReport, "gpt3-pe");
    expect(row.cells[5]).toBe("1.09");
    expect(row.cells[6]).toBe("4.24");
    expect(row.cells[7]).toBe("$50,920");
    expect(row.extrapolated).toBe(false);
  });

  it("renders an anchor extrapolated row with its exact shares", () => {
    const row = rowByModel(arReport, "gpt2");
    expect(row.cells[1]).toBe("7.08");
    expect(row.cells.slice(2, 5)).toEqual(["59.5%", "17.8%", "22.7%"]);
    expect(row.extrapolated).toBe(true);
  });

  it("renders a loss-making model with signs", () => {
    const row = rowByModel(arReport, "gpt3-bft");
    expect(row.cells[5]).toBe("6.54");
    expect(row.cells[6]).toBe("-1.56");
    expect(row.cells[7]).toBe("-$18,701");
    expect(row.negative).toBe(true);
  });

  it("flags exactly the perplexity-derived rows", () => {
    const flags = view.rows.map((r) => r.extrapolated);
    expect(flags.filter(Boolean)).toHaveLength(8);
    expect(flags.slice(0, 3)).toEqual([false, false, false]);
  });

  it("passes the report notes through untouched", () => {
    expect(view.notes).toEqual(arReport.notes);
    expect(view.notes[0]).toContain("extrapolated from perplexity");
  });
});

describe("comparison table with break-even columns", () => {
  const view = comparisonTable(akReport);

  it("appends the two break-even columns", () => {
    expect(view.header).toHaveLength(10);
    expect(view.hasBreakEven).toBe(true);
    expect(view.header.slice(8)).toEqual([
      "break-even msgs", "break-even months",
    ]);
  });

  it("renders both deployments' break-even points", () => {
    const inHouse = rowByModel(akReport, "in-house");
    expect(inHouse.cells[8]).toBe("905,313");
    expect(inHouse.cells[9]).toBe("0.24");
    const thirdParty = rowByModel(akReport, "third-party");
    expect(thirdParty.cells[8]).toBe("1,078,347");
    expect(thirdParty.cells[9]).toBe("0.29");
  });
});

describe("never-breaks-even rendering", () => {
  it("renders the never literal instead of numbers", () => {
    const pricey = rowByModel(nvReport, "pricey");
    expect(pricey.neverBreaksEven).toBe(true);
    expect(pricey.cells[8]).toBe("never");
    expect(pricey.cells[9]).toBe("never");
    expect(pricey.cells[6]).toBe("-1.55");
  });

  it("keeps numeric cells for the model that does break even", () => {
    const cheap = rowByModel(nvReport, "cheap");
    expect(cheap.neverBreaksEven).toBe(false);
    expect(cheap.cells[8]).toBe("18,543");
    expect(cheap.cells[9]).toBe("0.19");
  });
});

// every cell must be the raw response field after display rounding and
// nothing else, so parsing it back must land within the rounding quantum
describe("cells stay within rounding distance of the raw fields", () => {
  const cases: Array<[string, ReportPayload]> = [
    ["ar_table4", arReport],
    ["appendix_k", akReport],
    ["never-demo", nvReport],
  ];

  function parseCell(cell: string): number | null {
    if (cell === "—" || cell === "never") return null;
    return Number(cell.replace(/[$,%]/g, "").replace(/,/g, ""));
  }

  it.each(cases)("%s", (_name, report) => {
    const view = comparisonTable(report);
    view.rows.forEach((row, i) => {
      const raw = report.rows[i];
      const checks: Array<[number, number | null, number]> = [
        [1, raw.ppl, 0.005],
        [2, raw.p_use * 100, 0.05],
        [3, raw.p_edit * 100, 0.05],
        [4, raw.p_ignore * 100, 0.05],
        [5, raw.cost_cents_per_message, 0.00005],
        [6, raw.encs_cents_per_message, 0.005],
        [7, raw.encs_per_year, 0.5],
      ];
      if (view.hasBreakEven) {
        checks.push([8, raw.break_even_messages, 0.5]);
        checks.push([9, raw.break_even_months, 0.005]);
      }
      for (const [idx, rawValue, quantum] of checks) {
        const parsed = parseCell(row.cells[idx]);
        if (rawValue === null || (idx >= 8 && raw.never_breaks_even)) {
          expect(parsed).toBeNull();
        } else {
          expect(parsed).not.toBeNull();
          expect(Math.abs((parsed as number) - rawValue))
            .toBeLessThanOrEqual(quantum + 1e-9);
        }
      }
    });
  });
});

describe("tableHtml", () => {
  it("marks extrapolated rows and adds the legend", () => {
    const html = tableHtml(comparisonTable(arReport));
    expect(html).toContain("<sup>†</sup>");
    expect(html).toContain("usability extrapolated from perplexity");
    expect(html).toContain('class="extrapolated');
    expect(html).toContain('class="annotated"');
  });

  it("omits the legend when nothing is extrapolated", () => {
    const html = tableHtml(comparisonTable(nvReport));
    expect(html).not.toContain("<sup>");
    expect(html).not.toContain("legend");
  });

  it("tags negative and never rows with classes", () => {
    const html = tableHtml(comparisonTable(nvReport));
    expect(html).toContain("negative");
    expect(html).toContain("never");
  });

  it("escapes markup in cell content", () => {
    const html = tableHtml({
      header: ["model"],
      rows: [{
        modelId: "x",
        extrapolated: false,
        neverBreaksEven: false,
        negative: false,
        cells: ['<script>alert("x")</script>'],
      }],
      hasBreakEven: false,
      notes: [],
    });
    expect(html).not.toContain("<script>");
    expect(html).toContain("&lt;script&gt;");
  });
});

describe("escapeHtml", () => {
  it("escapes the four risky characters", () => {
    expect(escapeHtml('<a href="x">&</a>'))
      .toBe("&lt;a href=&quot;x&quot;&gt;&amp;&lt;/a&gt;");
  });
});
