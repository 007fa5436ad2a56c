import type {
  ArchitectRows,
  FrequencyRows,
  Neighbor,
  Scope,
  Suggestion,
  WorkflowStats,
} from "./types.js";

export class ServiceError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

async function getJson<T>(url: string, signal?: AbortSignal): Promise<T> {
  const response = await fetch(url, { signal });
  if (!response.ok) {
    throw new ServiceError(response.status, `${url} -> ${response.status}`);
  }
  return (await response.json()) as T;
}

export class ApiClient {
  constructor(private readonly base: string = "") {}

  async suggest(prompt: string, k: number, signal?: AbortSignal): Promise<Suggestion[]> {
    const query = new URLSearchParams({ prompt, k: String(k) });
    const body = await getJson<{ suggestions: Suggestion[] }>(
      `${this.base}/suggest?${query}`,
      signal,
    );
    return body.suggestions;
  }

  async neighbors(term: string, k: number, signal?: AbortSignal): Promise<Neighbor[]> {
    const query = new URLSearchParams({ term, k: String(k) });
    const body = await getJson<{ neighbors: Neighbor[] }>(
      `${this.base}/neighbors?${query}`,
      signal,
    );
    return body.neighbors;
  }

  workflows(signal?: AbortSignal): Promise<WorkflowStats> {
    return getJson(`${this.base}/stats/workflows`, signal);
  }

  frequencies(scope: Scope, signal?: AbortSignal): Promise<FrequencyRows> {
    return getJson(`${this.base}/stats/frequencies?scope=${scope}`, signal);
  }

  architects(signal?: AbortSignal): Promise<ArchitectRows> {
    return getJson(`${this.base}/stats/architects`, signal);
  }
}
