// Response shapes, mirroring the service JSON exactly.

export type Category = "style" | "content" | "quality" | "unknown";

export interface Suggestion {
  term: string;
  score: number;
  category: Category;
}

export interface Neighbor {
  term: string;
  cosine: number;
}

export interface ClassStats {
  chain_count: number;
  mean_total_steps: number;
  mean_steps_by_action: Record<string, number>;
}

export interface WorkflowStats {
  per_class: Record<string, ClassStats>;
  mean_length_by_action: Record<string, number>;
  category_pct_by_action: Record<string, Record<string, number>>;
  single_share: number;
  n_chains: number;
  n_records: number;
}

export type Scope = "all" | "filtered" | "explicit";

export interface FrequencyRows {
  scope: Scope;
  total: number;
  rows: [string, number][];
}

export interface ArchitectRows {
  rows: [string, number][];
}
