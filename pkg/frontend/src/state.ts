/*
 * Input-to-request scheduling: debounce plus latest-wins.
 *
 * Slider drags fire many times a second; only the latest value matters,
 * and a slow response for an old value must never overwrite the result of
 * a newer one. Timer functions are injectable for deterministic tests.
 */

export interface TimerHost {
  set(fn: () => void, ms: number): unknown;
  clear(handle: unknown): void;
}

const realTimers: TimerHost = {
  set: (fn, ms) => setTimeout(fn, ms),
  clear: (handle) => clearTimeout(handle as ReturnType<typeof setTimeout>),
};

/** Trailing-edge debounce: the call runs once input has been quiet for ms. */
export function debounce<A extends unknown[]>(
  ms: number,
  fn: (...args: A) => void,
  timers: TimerHost = realTimers,
): (...args: A) => void {
  let handle: unknown = null;
  return (...args: A) => {
    if (handle !== null) timers.clear(handle);
    handle = timers.set(() => {
      handle = null;
      fn(...args);
    }, ms);
  };
}

/**
 * Wrap an async operation so only the most recent invocation may deliver.
 * Stale resolutions and stale rejections are dropped silently.
 */
export function latestWins<A extends unknown[], R>(
  run: (...args: A) => Promise<R>,
  onResult: (result: R) => void,
  onError: (err: unknown) => void,
): (...args: A) => Promise<void> {
  let latest = 0;
  return async (...args: A) => {
    const token = ++latest;
    try {
      const result = await run(...args);
      if (token === latest) onResult(result);
    } catch (err) {
      if (token === latest) onError(err);
    }
  };
}

/** Debounced latest-wins pipeline, the shape every live panel uses. */
export function liveQuery<A extends unknown[], R>(
  ms: number,
  run: (...args: A) => Promise<R>,
  onResult: (result: R) => void,
  onError: (err: unknown) => void,
  timers: TimerHost = realTimers,
): (...args: A) => void {
  const guarded = latestWins(run, onResult, onError);
  return debounce(ms, (...args: A) => void guarded(...args), timers);
}
