import type { Suggestion } from "./types.js";

export interface SuggestEvents {
  onResult: (suggestions: Suggestion[], prompt: string) => void;
  onError: (error: unknown) => void;
}

/**
 * Debounced, latest-wins suggestion fetching: input is held for the debounce
 * window, at most one request is in flight (older ones are aborted), and a
 * response is dropped if a newer one already rendered.
 */
export class SuggestController {
  private sequence = 0;
  private rendered = 0;
  private timer: ReturnType<typeof setTimeout> | null = null;
  private inflight: AbortController | null = null;

  constructor(
    private readonly fetcher: (prompt: string, k: number, signal: AbortSignal) => Promise<Suggestion[]>,
    private readonly events: SuggestEvents,
    private readonly k: number = 8,
    private readonly debounceMs: number = 150,
  ) {}

  /** Feed a keystroke; the request fires after the debounce window. */
  input(prompt: string): void {
    if (this.timer !== null) {
      clearTimeout(this.timer);
    }
    this.timer = setTimeout(() => {
      this.timer = null;
      void this.fire(prompt);
    }, this.debounceMs);
  }

  /** Fire immediately (used after clicking a suggestion). */
  refresh(prompt: string): void {
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
    void this.fire(prompt);
  }

  private async fire(prompt: string): Promise<void> {
    const id = ++this.sequence;
    this.inflight?.abort();
    const controller = new AbortController();
    this.inflight = controller;
    try {
      const suggestions = await this.fetcher(prompt, this.k, controller.signal);
      if (id <= this.rendered) {
        return; // a newer response already rendered
      }
      this.rendered = id;
      this.events.onResult(suggestions, prompt);
    } catch (error) {
      if (controller.signal.aborted) {
        return; // superseded, not an error
      }
      this.events.onError(error);
    }
  }
}
