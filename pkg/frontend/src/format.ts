/*
 * Display formatting only: rounding, grouping, units. Inputs are always
 * service response values; nothing here computes an economic quantity.
 */

const LOCALE = "en-US";

/** ENCS in cents, two decimals: 4.46, -1.56. */
export function formatCents(cents: number): string {
  return cents.toFixed(2);
}

/** Whole dollars with thousands grouping and sign: $53,487 / -$18,691. */
export function formatUsdWhole(usd: number): string {
  const rounded = Math.round(usd);
  const sign = rounded < 0 ? "-" : "";
  return `${sign}$${Math.abs(rounded).toLocaleString(LOCALE)}`;
}

/** Per-message generation cost in cents: 1.09, 0.0126, 0.002. */
export function formatCostCents(cents: number): string {
  const fixed = cents.toFixed(4);
  const trimmed = fixed.replace(/0+$/, "").replace(/\.$/, "");
  return trimmed === "" || trimmed === "-" ? "0" : trimmed;
}

/** Probability as a percentage with one decimal: 0.595 -> "59.5%". */
export function formatProbabilityPercent(p: number): string {
  return `${(p * 100).toFixed(1)}%`;
}

/** A value already in percent units, one decimal: 59.5 -> "59.5". */
export function formatPercentValue(pct: number): string {
  return pct.toFixed(1);
}

/** Message counts: grouped integer, "never", or an em dash when absent. */
export function formatMessages(messages: number | null, never: boolean): string {
  if (never) return "never";
  if (messages === null) return "—";
  return Math.round(messages).toLocaleString(LOCALE);
}

/** Months to two decimals, with the same "never"/absent handling. */
export function formatMonths(months: number | null, never: boolean): string {
  if (never) return "never";
  if (months === null) return "—";
  return months.toFixed(2);
}

export function formatPpl(ppl: number | null): string {
  return ppl === null ? "—" : ppl.toFixed(2);
}

export function formatSeconds(seconds: number): string {
  return `${seconds.toFixed(2)} s`;
}

/** Small dollar figures (per-message savings): 4 decimals, sign first. */
export function formatUsdSmall(usd: number): string {
  const sign = usd < 0 ? "-" : "";
  return `${sign}$${Math.abs(usd).toFixed(4)}`;
}
