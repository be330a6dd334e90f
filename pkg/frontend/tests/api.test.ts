import { describe, expect, it } from "vitest";

import { ApiError, makeClient } from "../src/api.js";
import type { FetchLike, MinimalResponse } from "../src/api.js";
import type { PresetCatalog, ReportPayload, ScenarioDoc } from "../src/types.js";
import breakevenNever from "./fixtures/breakeven_never.json";
import breakevenSuccess from "./fixtures/breakeven_success.json";
import encsReference from "./fixtures/encs_reference.json";
import errorSimplex from "./fixtures/error_simplex.json";
import predictRu from "./fixtures/predict_ru.json";
import presets from "./fixtures/presets.json";
import reportArTable4 from "./fixtures/report_ar_table4.json";

interface RecordedCall {
  url: string;
  method?: string;
  headers?: Record<string, string>;
  body?: string;
}

function stub(responses: Array<{ status: number; body: unknown }>): {
  fetchFn: FetchLike;
  calls: RecordedCall[];
} {
  const calls: RecordedCall[] = [];
  const queue = [...responses];
  const fetchFn: FetchLike = async (url, init) => {
    calls.push({ url, ...init });
    const next = queue.shift();
    if (!next) throw new Error("stub exhausted");
    const resp: MinimalResponse = {
      ok: next.status >= 200 && next.status < 300,
      status: next.status,
      json: async () => next.body,
    };
    return resp;
  };
  return { fetchFn, calls };
}

describe("request plumbing", () => {
  it("normalizes the base url and hits the versioned path", async () => {
    const { fetchFn, calls } = stub([{ status: 200, body: presets }]);
    const client = makeClient("http://svc:8157/", fetchFn);
    await client.presets();
    expect(calls[0].url).toBe("http://svc:8157/api/v1/presets");
    expect(calls[0].method).toBe("GET");
    expect(calls[0].body).toBeUndefined();
  });

  it("posts JSON bodies with the right content type", async () => {
    const { fetchFn, calls } = stub([{ status: 200, body: reportArTable4 }]);
    const client = makeClient("http://svc:8157", fetchFn);
    const doc = (presets as unknown as PresetCatalog).scenarios["ar_table4"];
    await client.evaluate(doc as ScenarioDoc);
    expect(calls[0].url).toBe("http://svc:8157/api/v1/scenario/evaluate");
    expect(calls[0].method).toBe("POST");
    expect(calls[0].headers?.["Content-Type"]).toBe("application/json");
    expect(JSON.parse(calls[0].body ?? "{}").name).toBe("ar_table4");
  });

  it("wraps network failures as unreachable", async () => {
    const failing: FetchLike = async () => {
      throw new TypeError("connection refused");
    };
    const client = makeClient("http://down:1", failing);
    const err = await client.presets().catch((e: unknown) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect((err as ApiError).code).toBe("unreachable");
    expect((err as ApiError).status).toBe(0);
  });

  it("wraps non-JSON responses", async () => {
    const fetchFn: FetchLike = async () => ({
      ok: false,
      status: 502,
      json: async () => {
        throw new SyntaxError("not json");
      },
    });
    const client = makeClient("http://svc:1", fetchFn);
    const err = await client.presets().catch((e: unknown) => e);
    expect((err as ApiError).code).toBe("bad_response");
    expect((err as ApiError).status).toBe(502);
  });
});

describe("response passthrough", () => {
  it("returns the evaluation payload verbatim", async () => {
    const { fetchFn } = stub([{ status: 200, body: reportArTable4 }]);
    const client = makeClient("http://svc:1", fetchFn);
    const doc = (presets as unknown as PresetCatalog).scenarios["ar_table4"];
    const report = await client.evaluate(doc as ScenarioDoc);
    expect(report.rows).toHaveLength(11);
    expect(report.rows[0].model_id).toBe("gpt2-bft-bd");
    expect(report.breakeven_inputs).toBeNull();
  });

  it("returns unit economics verbatim", async () => {
    const { fetchFn } = stub([{ status: 200, body: encsReference }]);
    const client = makeClient("http://svc:1", fetchFn);
    const resp = await client.encs({
      economics: { hourly_rate: 10, baseline_response_time: 30 },
      timings: { t_use: 5, t_edit: 10, t_ignore: 35 },
      usage: { p_use: 0.7, p_edit: 0.15, p_ignore: 0.15 },
      cost_per_message: 0.0109,
    });
    expect(resp.per_message_cents).toBeCloseTo(4.243333333333333, 12);
    expect(resp.savings.s_use).toBeCloseTo(0.06944444444444445, 15);
  });

  it("returns usability predictions verbatim", async () => {
    const body = (predictRu as Record<string, unknown>)["7.08"];
    const { fetchFn } = stub([{ status: 200, body }]);
    const client = makeClient("http://svc:1", fetchFn);
    const resp = await client.predictRu({
      ppl: 7.08,
      coefficient_set: "ru_ppl_reconstructed_v1",
    });
    expect(resp.percent.use).toBe(59.5);
    expect(resp.p_use).toBe(0.595);
  });
});

describe("error envelopes", () => {
  it("rethrows the envelope as a typed error", async () => {
    const { fetchFn } = stub([{ status: 400, body: errorSimplex }]);
    const client = makeClient("http://svc:1", fetchFn);
    const err = await client
      .encs({
        economics: { hourly_rate: 10, baseline_response_time: 30 },
        timings: { t_use: 5, t_edit: 10, t_ignore: 35 },
        usage: { p_use: 0.7, p_edit: 0.4, p_ignore: 0.3 },
        cost_per_message: 0,
      })
      .catch((e: unknown) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect((err as ApiError).code).toBe("simplex_violation");
    expect((err as ApiError).status).toBe(400);
  });

  it("carries the field path when the service names one", async () => {
    const body = {
      error: {
        code: "invalid_input",
        message: "must be positive",
        field_path: "economics.hourly_rate",
      },
    };
    const { fetchFn } = stub([{ status: 400, body }]);
    const client = makeClient("http://svc:1", fetchFn);
    const err = await client.presets().catch((e: unknown) => e);
    expect((err as ApiError).fieldPath).toBe("economics.hourly_rate");
  });

  it("does not treat 422 on other endpoints as a typed outcome", async () => {
    const { fetchFn } = stub([{ status: 422, body: errorSimplex }]);
    const client = makeClient("http://svc:1", fetchFn);
    const err = await client
      .encs({
        economics: { hourly_rate: 10, baseline_response_time: 30 },
        timings: { t_use: 5, t_edit: 10, t_ignore: 35 },
        usage: { p_use: 0.7, p_edit: 0.4, p_ignore: 0.3 },
        cost_per_message: 0,
      })
      .catch((e: unknown) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect((err as ApiError).code).toBe("simplex_violation");
  });
});

describe("break-even outcomes", () => {
  it("maps a 200 to the ok variant", async () => {
    const { fetchFn } = stub([{ status: 200, body: breakevenSuccess }]);
    const client = makeClient("http://svc:1", fetchFn);
    const result = await client.breakeven({
      c_rnd: 50100,
      encs_per_message: 0.05561111111111111,
      c_m: 0.0014844444444444445,
      monthly_volume: 3750000,
    });
    expect(result.kind).toBe("ok");
    if (result.kind === "ok") {
      expect(result.messages).toBeCloseTo(905312.6129382002, 6);
      expect(result.messages_ceiling).toBe(905313);
      expect(result.months).toBeCloseTo(0.24141669678352007, 12);
      expect(result.curve.messages).toHaveLength(50);
      expect(result.curve.months).toHaveLength(50);
    }
  });

  it("maps the 422 envelope with a curve to the never variant", async () => {
    const { fetchFn } = stub([{ status: 422, body: breakevenNever }]);
    const client = makeClient("http://svc:1", fetchFn);
    const result = await client.breakeven({
      c_rnd: 1000,
      encs_per_message: -0.01,
      monthly_volume: 500,
    });
    expect(result.kind).toBe("never");
    if (result.kind === "never") {
      expect(result.message).toContain("never recovered");
      expect(result.curve.messages).toHaveLength(13);
      expect(result.curve.labor_offset).toHaveLength(13);
    }
  });

  it("still throws on break-even envelopes with other codes", async () => {
    const body = { error: { code: "invalid_input", message: "bad" } };
    const { fetchFn } = stub([{ status: 422, body }]);
    const client = makeClient("http://svc:1", fetchFn);
    const err = await client
      .breakeven({ c_rnd: 1, encs_per_message: 1 })
      .catch((e: unknown) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect((err as ApiError).code).toBe("invalid_input");
  });
});

// keep the fixture honest: the report used above is the one the table tests render
describe("fixture sanity", () => {
  it("ar_table4 report carries the per-row display fields", () => {
    const report = reportArTable4 as unknown as ReportPayload;
    for (const row of report.rows) {
      expect(typeof row.cost_cents_per_message).toBe("number");
      expect(typeof row.encs_cents_per_message).toBe("number");
      expect(row.cost_cents_per_message).toBeCloseTo(
        row.cost_per_message * 100,
        9,
      );
    }
  });
});
