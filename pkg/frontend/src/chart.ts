/*
 * Break-even chart: cumulative model spend vs. cumulative labor offset,
 * rendered as an inline SVG string from the service's curve series.
 *
 * Geometry only: the series values, the break-even point and the axis
 * endpoint labels all come from the service; this module maps them to
 * pixels. The x axis is switchable between message volume and calendar
 * months whenever the service supplied a months series.
 */

import { formatMessages, formatMonths, formatUsdWhole } from "./format.js";
import type { CurvePayload } from "./types.js";

export type AxisMode = "messages" | "months";

export interface ChartBreakEven {
  messages: number;
  months: number | null;
}

export interface ChartSpec {
  curve: CurvePayload;
  axis: AxisMode;
  breakEven: ChartBreakEven | null; // null renders the never-breaks-even badge
  width?: number;
  height?: number;
}

interface Mapper {
  x(value: number): number;
  y(value: number): number;
}

const PAD = { left: 64, right: 16, top: 18, bottom: 34 };

function mapper(xs: number[], ys: number[][], width: number, height: number): Mapper {
  const x0 = Math.min(...xs);
  const x1 = Math.max(...xs);
  let y0 = Infinity;
  let y1 = -Infinity;
  for (const series of ys) {
    for (const v of series) {
      if (v < y0) y0 = v;
      if (v > y1) y1 = v;
    }
  }
  const xSpan = x1 - x0 || 1;
  const ySpan = y1 - y0 || 1;
  const innerW = width - PAD.left - PAD.right;
  const innerH = height - PAD.top - PAD.bottom;
  return {
    x: (v) => PAD.left + ((v - x0) / xSpan) * innerW,
    y: (v) => PAD.top + innerH - ((v - y0) / ySpan) * innerH,
  };
}

function polyline(xs: number[], ys: number[], m: Mapper, cls: string): string {
  const points = xs
    .map((x, i) => `${m.x(x).toFixed(1)},${m.y(ys[i]).toFixed(1)}`)
    .join(" ");
  return `<polyline class="${cls}" fill="none" points="${points}" />`;
}

function axisValues(curve: CurvePayload, axis: AxisMode): number[] {
  if (axis === "months") {
    if (curve.months === null) {
      throw new Error("months axis requires a curve with a months series");
    }
    return curve.months;
  }
  return curve.messages;
}

function formatAxisValue(value: number, axis: AxisMode): string {
  return axis === "months" ? formatMonths(value, false) : formatMessages(value, false);
}

export function breakEvenChart(spec: ChartSpec): string {
  const width = spec.width ?? 640;
  const height = spec.height ?? 280;
  const xs = axisValues(spec.curve, spec.axis);
  const series = [
    spec.curve.model_spend,
    spec.curve.model_spend_upfront_only,
    spec.curve.labor_offset,
  ];
  const m = mapper(xs, series, width, height);

  const parts: string[] = [];
  parts.push(
    `<svg viewBox="0 0 ${width} ${height}" xmlns="http://www.w3.org/2000/svg" ` +
    `class="breakeven-chart" role="img">`,
  );

  // frame
  const xAxisY = height - PAD.bottom;
  parts.push(
    `<line class="axis" x1="${PAD.left}" y1="${xAxisY}" ` +
    `x2="${width - PAD.right}" y2="${xAxisY}" />`,
  );
  parts.push(
    `<line class="axis" x1="${PAD.left}" y1="${PAD.top}" ` +
    `x2="${PAD.left}" y2="${xAxisY}" />`,
  );

  parts.push(polyline(xs, spec.curve.model_spend, m, "spend"));
  parts.push(polyline(xs, spec.curve.model_spend_upfront_only, m, "spend-upfront"));
  parts.push(polyline(xs, spec.curve.labor_offset, m, "offset"));

  // endpoint labels: actual series values, no synthetic ticks
  const xFirst = formatAxisValue(xs[0], spec.axis);
  const xLast = formatAxisValue(xs[xs.length - 1], spec.axis);
  parts.push(
    `<text class="tick" x="${PAD.left}" y="${height - 10}">${xFirst}</text>`,
  );
  parts.push(
    `<text class="tick" text-anchor="end" x="${width - PAD.right}" ` +
    `y="${height - 10}">${xLast}</text>`,
  );
  let yMin = Infinity;
  let yMax = -Infinity;
  for (const s of series) {
    for (const v of s) {
      if (v < yMin) yMin = v;
      if (v > yMax) yMax = v;
    }
  }
  parts.push(
    `<text class="tick" text-anchor="end" x="${PAD.left - 6}" ` +
    `y="${PAD.top + 4}">${formatUsdWhole(yMax)}</text>`,
  );
  parts.push(
    `<text class="tick" text-anchor="end" x="${PAD.left - 6}" ` +
    `y="${xAxisY}">${formatUsdWhole(yMin)}</text>`,
  );

  if (spec.breakEven !== null) {
    const beValue =
      spec.axis === "months" ? spec.breakEven.months : spec.breakEven.messages;
    if (beValue !== null && xs.length > 0) {
      const px = m.x(beValue);
      const label =
        spec.axis === "months"
          ? `break-even: ${formatMonths(beValue, false)} months`
          : `break-even: ${formatMessages(beValue, false)} messages`;
      parts.push(
        `<line class="marker" x1="${px.toFixed(1)}" y1="${PAD.top}" ` +
        `x2="${px.toFixed(1)}" y2="${xAxisY}" />`,
      );
      const anchor = px > width / 2 ? "end" : "start";
      const tx = px > width / 2 ? px - 6 : px + 6;
      parts.push(
        `<text class="marker-label" text-anchor="${anchor}" ` +
        `x="${tx.toFixed(1)}" y="${PAD.top + 12}">${label}</text>`,
      );
    }
  } else {
    parts.push(
      `<text class="never-badge" x="${PAD.left + 8}" y="${PAD.top + 14}">` +
      `never breaks even within this horizon</text>`,
    );
  }

  parts.push("</svg>");
  return parts.join("");
}
