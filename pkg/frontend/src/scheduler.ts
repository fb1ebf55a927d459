/** Debounced, self-cancelling query dispatch: one request in flight at a
 * time, rapid lock changes collapse into the last one. */

import type { LockMap, ScenarioResult } from "./types.js";

export type QueryFn = (locks: LockMap, signal: AbortSignal) => Promise<ScenarioResult>;

export class QueryScheduler {
  private timer: ReturnType<typeof setTimeout> | null = null;
  private inflight: AbortController | null = null;
  private seq = 0;

  constructor(
    private run: QueryFn,
    private onResult: (r: ScenarioResult) => void,
    private onError: (e: unknown) => void,
    private debounceMs = 150,
  ) {}

  /** Schedule a query; supersedes any pending or in-flight one. */
  request(locks: LockMap): void {
    if (this.timer !== null) {
      clearTimeout(this.timer);
    }
    this.timer = setTimeout(() => {
      this.timer = null;
      void this.fire(locks);
    }, this.debounceMs);
  }

  private async fire(locks: LockMap): Promise<void> {
    this.inflight?.abort();
    const ctrl = new AbortController();
    this.inflight = ctrl;
    const seq = ++this.seq;
    try {
      const result = await this.run(locks, ctrl.signal);
      if (seq === this.seq) {
        this.onResult(result);
      }
    } catch (err) {
      if (ctrl.signal.aborted) {
        return; // superseded on purpose
      }
      if (seq === this.seq) {
        this.onError(err);
      }
    }
  }
}
