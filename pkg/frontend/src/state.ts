import type { Category } from "./types.js";

export interface PromptToken {
  term: string;
  category: Category;
}

export interface Snapshot {
  tokens: PromptToken[];
}

/** Prompt under construction: token list, category balance, undo history. */
export class PromptState {
  private tokens: PromptToken[] = [];
  private history: Snapshot[] = [];

  current(): PromptToken[] {
    return this.tokens.map((t) => ({ ...t }));
  }

  text(): string {
    return this.tokens.map((t) => t.term).join(" ");
  }

  isEmpty(): boolean {
    return this.tokens.length === 0;
  }

  has(term: string): boolean {
    return this.tokens.some((t) => t.term === term);
  }

  /** Replace tokens from free-typed text; categories of kept tokens survive.
   * Typing does not create undo history; only append() snapshots. */
  setFromText(text: string): void {
    const known = new Map(this.tokens.map((t) => [t.term, t.category]));
    this.tokens = text
      .split(/\s+/)
      .filter((term) => term.length > 0)
      .map((term) => ({ term, category: known.get(term) ?? "unknown" }));
  }

  /** Append a picked suggestion; duplicate terms are a no-op (returns false). */
  append(term: string, category: Category): boolean {
    if (this.has(term)) {
      return false;
    }
    this.pushHistory();
    this.tokens = [...this.tokens, { term, category }];
    return true;
  }

  /** Restore the exact previous snapshot; false when nothing to undo. */
  undo(): boolean {
    const previous = this.history.pop();
    if (!previous) {
      return false;
    }
    this.tokens = previous.tokens;
    return true;
  }

  canUndo(): boolean {
    return this.history.length > 0;
  }

  /** Category percentages over current tokens; sums to 100 when non-empty. */
  percentages(): Record<Category, number> {
    const counts: Record<Category, number> = { style: 0, content: 0, quality: 0, unknown: 0 };
    for (const token of this.tokens) {
      counts[token.category] += 1;
    }
    const total = this.tokens.length;
    if (total === 0) {
      return counts;
    }
    const out = { ...counts };
    for (const key of Object.keys(out) as Category[]) {
      out[key] = (100 * counts[key]) / total;
    }
    return out;
  }

  private pushHistory(): void {
    this.history.push({ tokens: this.tokens.map((t) => ({ ...t })) });
  }
}
