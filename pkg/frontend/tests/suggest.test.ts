import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { SuggestController } from "../src/suggest.js";
import type { Suggestion } from "../src/types.js";

function suggestion(term: string): Suggestion {
  return { term, score: 0.9, category: "unknown" };
}

describe("SuggestController", () => {
  beforeEach(() => {
    vi.useFakeTimers();
  });
  afterEach(() => {
    vi.useRealTimers();
  });

  it("debounces input by 150 ms and renders the planted partner in time", async () => {
    const calls: string[] = [];
    const results: Suggestion[][] = [];
    const controller = new SuggestController(
      async (prompt) => {
        calls.push(prompt);
        return [suggestion("apartment")];
      },
      { onResult: (s) => results.push(s), onError: () => {} },
    );

    const typedAt = Date.now();
    controller.input("i");
    controller.input("in");
    controller.input("interior");
    await vi.advanceTimersByTimeAsync(149);
    expect(calls).toHaveLength(0); // still inside the debounce window

    await vi.advanceTimersByTimeAsync(1);
    await vi.runAllTimersAsync();
    expect(calls).toEqual(["interior"]); // one request for the final text
    expect(results[0][0].term).toBe("apartment");
    expect(Date.now() - typedAt).toBeLessThanOrEqual(300); // render deadline incl. debounce
  });

  it("keeps at most one request in flight (older ones aborted)", async () => {
    const aborted: string[] = [];
    const controller = new SuggestController(
      (prompt, _k, signal) =>
        new Promise<Suggestion[]>((resolve, reject) => {
          signal.addEventListener("abort", () => {
            aborted.push(prompt);
            reject(new DOMException("aborted", "AbortError"));
          });
          setTimeout(() => resolve([suggestion(prompt)]), 1000);
        }),
      { onResult: () => {}, onError: () => {} },
    );
    controller.refresh("first");
    controller.refresh("second");
    await vi.runAllTimersAsync();
    expect(aborted).toEqual(["first"]);
  });

  it("discards stale responses (latest wins)", async () => {
    const rendered: string[] = [];
    const delays: Record<string, number> = { slow: 500, fast: 10 };
    const controller = new SuggestController(
      (prompt) =>
        new Promise<Suggestion[]>((resolve) => {
          // deliberately ignore the abort signal: force the stale-response path
          setTimeout(() => resolve([suggestion(prompt)]), delays[prompt]);
        }),
      { onResult: (s) => rendered.push(s[0].term), onError: () => {} },
    );
    controller.refresh("slow");
    controller.refresh("fast");
    await vi.runAllTimersAsync();
    expect(rendered).toEqual(["fast"]); // the late "slow" response never renders
  });

  it("reports fetch failures without clearing prior results", async () => {
    const rendered: string[][] = [];
    let failures = 0;
    let shouldFail = false;
    const controller = new SuggestController(
      async (prompt) => {
        if (shouldFail) {
          throw new Error("connection refused");
        }
        return [suggestion(prompt)];
      },
      {
        onResult: (s) => rendered.push(s.map((x) => x.term)),
        onError: () => {
          failures += 1;
        },
      },
    );
    controller.refresh("ok");
    await vi.runAllTimersAsync();
    shouldFail = true;
    controller.refresh("down");
    await vi.runAllTimersAsync();
    expect(rendered).toEqual([["ok"]]); // old render retained, no new render
    expect(failures).toBe(1);
  });

  it("abort is not reported as an error", async () => {
    let failures = 0;
    const controller = new SuggestController(
      (_p, _k, signal) =>
        new Promise<Suggestion[]>((_resolve, reject) => {
          signal.addEventListener("abort", () => reject(new DOMException("x", "AbortError")));
        }),
      { onResult: () => {}, onError: () => (failures += 1) },
    );
    controller.refresh("a");
    controller.refresh("b");
    await vi.advanceTimersByTimeAsync(5);
    expect(failures).toBe(0);
  });
});
