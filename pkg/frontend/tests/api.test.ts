import { afterEach, describe, expect, it, vi } from "vitest";

import { ApiClient, ServiceError } from "../src/api.js";

function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "content-type": "application/json" },
  });
}

describe("ApiClient", () => {
  afterEach(() => {
    vi.unstubAllGlobals();
  });

  it("builds /suggest URLs with encoded params", async () => {
    const seen: string[] = [];
    vi.stubGlobal("fetch", async (url: string) => {
      seen.push(String(url));
      return jsonResponse({ suggestions: [] });
    });
    const api = new ApiClient("http://svc:1234");
    await api.suggest("cozy interior", 5);
    expect(seen).toEqual(["http://svc:1234/suggest?prompt=cozy+interior&k=5"]);
  });

  it("returns parsed suggestion arrays", async () => {
    vi.stubGlobal("fetch", async () =>
      jsonResponse({ suggestions: [{ term: "apartment", score: 0.8, category: "content" }] }),
    );
    const api = new ApiClient("");
    const suggestions = await api.suggest("interior", 3);
    expect(suggestions[0].term).toBe("apartment");
  });

  it("raises ServiceError with the status code on non-OK responses", async () => {
    vi.stubGlobal("fetch", async () => jsonResponse({ error: "unknown term" }, 404));
    const api = new ApiClient("");
    await expect(api.neighbors("zzz", 5)).rejects.toMatchObject({ status: 404 });
    await expect(api.neighbors("zzz", 5)).rejects.toBeInstanceOf(ServiceError);
  });

  it("fetches stats endpoints", async () => {
    const seen: string[] = [];
    vi.stubGlobal("fetch", async (url: string) => {
      seen.push(String(url));
      if (String(url).includes("workflows")) {
        return jsonResponse({ per_class: {}, mean_length_by_action: {}, n_chains: 0 });
      }
      if (String(url).includes("frequencies")) {
        return jsonResponse({ scope: "all", total: 0, rows: [] });
      }
      return jsonResponse({ rows: [] });
    });
    const api = new ApiClient("");
    await api.workflows();
    await api.frequencies("filtered");
    await api.architects();
    expect(seen).toEqual([
      "/stats/workflows",
      "/stats/frequencies?scope=filtered",
      "/stats/architects",
    ]);
  });
});
