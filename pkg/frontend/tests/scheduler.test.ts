import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { QueryScheduler } from "../src/scheduler.js";
import type { ScenarioResult } from "../src/types.js";

const OK: ScenarioResult = {
  consistent: true, reason: "", posteriors: {}, utilities: {},
};

beforeEach(() => vi.useFakeTimers());
afterEach(() => vi.useRealTimers());

describe("QueryScheduler", () => {
  it("debounces rapid lock changes into the last request", async () => {
    const run = vi.fn().mockResolvedValue(OK);
    const onResult = vi.fn();
    const s = new QueryScheduler(run, onResult, vi.fn(), 150);

    s.request({ a: 1 });
    vi.advanceTimersByTime(100);
    s.request({ a: 2 });
    vi.advanceTimersByTime(100);
    s.request({ a: 3 });
    expect(run).not.toHaveBeenCalled();

    await vi.advanceTimersByTimeAsync(150);
    expect(run).toHaveBeenCalledOnce();
    expect(run.mock.calls[0][0]).toEqual({ a: 3 });
    expect(onResult).toHaveBeenCalledWith(OK);
  });

  it("aborts a superseded in-flight request and drops its result", async () => {
    const signals: AbortSignal[] = [];
    let release: (r: ScenarioResult) => void = () => {};
    const slow = new Promise<ScenarioResult>((res) => { release = res; });
    const run = vi.fn()
      .mockImplementationOnce((_l, sig) => { signals.push(sig); return slow; })
      .mockImplementationOnce((_l, sig) => {
        signals.push(sig);
        return Promise.resolve({ ...OK, reason: "second" });
      });
    const onResult = vi.fn();
    const s = new QueryScheduler(run, onResult, vi.fn(), 150);

    s.request({ a: 1 });
    await vi.advanceTimersByTimeAsync(150);
    s.request({ a: 2 });
    await vi.advanceTimersByTimeAsync(150);

    expect(signals[0].aborted).toBe(true);
    expect(signals[1].aborted).toBe(false);

    release(OK); // the stale response arrives late
    await Promise.resolve();
    expect(onResult).toHaveBeenCalledOnce();
    expect(onResult.mock.calls[0][0].reason).toBe("second");
  });

  it("reports non-abort failures through onError", async () => {
    const run = vi.fn().mockRejectedValue(new TypeError("network down"));
    const onError = vi.fn();
    const s = new QueryScheduler(run, vi.fn(), onError, 150);
    s.request({});
    await vi.advanceTimersByTimeAsync(150);
    expect(onError).toHaveBeenCalledOnce();
  });

  it("swallows its own aborts", async () => {
    const run = vi.fn().mockImplementation((_l, sig: AbortSignal) =>
      new Promise((_res, rej) => {
        sig.addEventListener("abort", () => rej(new DOMException("x", "AbortError")));
      }),
    );
    const onError = vi.fn();
    const s = new QueryScheduler(run, vi.fn(), onError, 150);
    s.request({ a: 1 });
    await vi.advanceTimersByTimeAsync(150);
    s.request({ a: 2 });
    await vi.advanceTimersByTimeAsync(150);
    expect(onError).not.toHaveBeenCalled();
  });
});
