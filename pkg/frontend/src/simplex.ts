/*
 * Linked-simplex control for the three action probabilities.
 *
 * Editing one probability rescales the other two so they keep their mutual
 * proportion and the triple keeps summing to exactly 1. This adjusts user
 * INPUT before it is sent to the service; it is not cost arithmetic.
 */

export type Triple = [number, number, number];

export function clamp01(x: number): number {
  if (Number.isNaN(x)) return 0;
  return Math.min(1, Math.max(0, x));
}

/**
 * Set slot `edited` to `value` and rebalance the other two proportionally.
 *
 * The remaining mass (1 - value) is split between the untouched slots in
 * their current ratio; if both are zero it is split evenly. The second
 * rebalanced slot is computed as a complement of the rest, which pins the
 * sum to 1 at machine precision (bit-exact for most slot orders).
 */
export function rebalance(current: Triple, edited: 0 | 1 | 2, value: number): Triple {
  const v = clamp01(value);
  const others: number[] = [0, 1, 2].filter((i) => i !== edited);
  const a = current[others[0] as 0 | 1 | 2];
  const b = current[others[1] as 0 | 1 | 2];
  const remainder = 1 - v;

  let first: number;
  if (a + b > 0) {
    first = remainder * (a / (a + b));
  } else {
    first = remainder / 2;
  }
  let second = 1 - (v + first);
  if (second < 0) {
    // rounding pushed the complement negative by an ulp; rebuild exactly
    second = 0;
    first = 1 - v;
  }

  const out: Triple = [0, 0, 0];
  out[edited] = v;
  out[others[0] as 0 | 1 | 2] = first;
  out[others[1] as 0 | 1 | 2] = second;
  return out;
}

export function tripleSum(t: Triple): number {
  return t[0] + t[1] + t[2];
}

export function isSimplex(t: Triple, tolerance = 1e-9): boolean {
  return (
    t.every((p) => p >= 0 && p <= 1) && Math.abs(tripleSum(t) - 1) <= tolerance
  );
}
