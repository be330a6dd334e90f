/*
 * Thin typed client for the service endpoints. Every method returns the
 * parsed response body verbatim; errors arrive as the service's envelope
 * and are rethrown as ApiError. The fetch implementation is injectable so
 * tests can replay captured fixtures.
 */

import type {
  BreakevenRequest,
  BreakevenResult,
  EncsRequest,
  EncsResponse,
  ErrorEnvelope,
  PredictRuRequest,
  PredictRuResponse,
  PresetCatalog,
  ReportPayload,
  ScenarioDoc,
} from "./types.js";

export interface MinimalResponse {
  ok: boolean;
  status: number;
  json(): Promise<unknown>;
}

export type FetchLike = (url: string, init?: {
  method?: string;
  headers?: Record<string, string>;
  body?: string;
}) => Promise<MinimalResponse>;

export class ApiError extends Error {
  readonly code: string;
  readonly fieldPath: string | undefined;
  readonly status: number;

  constructor(code: string, message: string, status: number, fieldPath?: string) {
    super(message);
    this.name = "ApiError";
    this.code = code;
    this.status = status;
    this.fieldPath = fieldPath;
  }
}

function isErrorEnvelope(body: unknown): body is ErrorEnvelope {
  return (
    typeof body === "object" && body !== null &&
    typeof (body as ErrorEnvelope).error === "object" &&
    (body as ErrorEnvelope).error !== null &&
    typeof (body as ErrorEnvelope).error.code === "string"
  );
}

export interface ApiClient {
  presets(): Promise<PresetCatalog>;
  encs(body: EncsRequest): Promise<EncsResponse>;
  predictRu(body: PredictRuRequest): Promise<PredictRuResponse>;
  breakeven(body: BreakevenRequest): Promise<BreakevenResult>;
  evaluate(doc: ScenarioDoc): Promise<ReportPayload>;
}

export function makeClient(baseUrl: string, fetchFn?: FetchLike): ApiClient {
  const doFetch: FetchLike =
    fetchFn ?? ((url, init) => fetch(url, init) as Promise<MinimalResponse>);
  const base = baseUrl.replace(/\/$/, "") + "/api/v1";

  async function request(method: string, path: string, body?: unknown):
      Promise<unknown> {
    let resp: MinimalResponse;
    try {
      resp = await doFetch(base + path, {
        method,
        headers: { "Content-Type": "application/json" },
        body: body === undefined ? undefined : JSON.stringify(body),
      });
    } catch (err) {
      throw new ApiError("unreachable", `service unreachable: ${String(err)}`, 0);
    }
    let parsed: unknown;
    try {
      parsed = await resp.json();
    } catch {
      throw new ApiError("bad_response", `non-JSON response (${resp.status})`,
        resp.status);
    }
    if (!resp.ok && !(resp.status === 422 && path === "/breakeven")) {
      if (isErrorEnvelope(parsed)) {
        const e = parsed.error;
        throw new ApiError(e.code, e.message, resp.status, e.field_path);
      }
      throw new ApiError("http_error", `request failed (${resp.status})`,
        resp.status);
    }
    return parsed;
  }

  return {
    async presets() {
      return (await request("GET", "/presets")) as PresetCatalog;
    },

    async encs(body) {
      return (await request("POST", "/encs", body)) as EncsResponse;
    },

    async predictRu(body) {
      return (await request("POST", "/predict-ru", body)) as PredictRuResponse;
    },

    async breakeven(body) {
      const parsed = await request("POST", "/breakeven", body);
      // 422 carries the typed never-breaks-even outcome, curve included
      if (isErrorEnvelope(parsed)) {
        if (parsed.error.code !== "never_breaks_even") {
          throw new ApiError(parsed.error.code, parsed.error.message, 422,
            parsed.error.field_path);
        }
        const withCurve = parsed as ErrorEnvelope & {
          curve: BreakevenResult["curve"];
        };
        return {
          kind: "never",
          message: parsed.error.message,
          curve: withCurve.curve,
        };
      }
      return { kind: "ok", ...(parsed as object) } as BreakevenResult;
    },

    async evaluate(doc) {
      return (await request("POST", "/scenario/evaluate", doc)) as ReportPayload;
    },
  };
}
