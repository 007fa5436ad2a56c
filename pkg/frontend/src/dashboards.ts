import type { ApiClient } from "./api.js";
import { renderBars } from "./charts.js";
import type { Scope } from "./types.js";

function panelBody(panel: HTMLElement): HTMLElement {
  let body = panel.querySelector<HTMLElement>(".panel-body");
  if (!body) {
    body = document.createElement("div");
    body.className = "panel-body";
    panel.appendChild(body);
  }
  return body;
}

function showError(panel: HTMLElement, error: unknown): void {
  const body = panelBody(panel);
  body.replaceChildren();
  const message = document.createElement("p");
  message.className = "panel-error";
  message.textContent = `failed to load: ${error instanceof Error ? error.message : error}`;
  body.appendChild(message);
}

export class Dashboards {
  scope: Scope = "all";

  constructor(
    private readonly api: ApiClient,
    private readonly panels: {
      workflows: HTMLElement;
      lengths: HTMLElement;
      frequencies: HTMLElement;
      architects: HTMLElement;
    },
  ) {}

  async loadAll(): Promise<void> {
    await Promise.all([
      this.loadWorkflows(),
      this.loadFrequencies(),
      this.loadArchitects(),
    ]);
  }

  async loadWorkflows(): Promise<void> {
    try {
      const stats = await this.api.workflows();
      renderBars(
        panelBody(this.panels.workflows),
        Object.entries(stats.per_class).map(([cls, s]) => ({
          label: `${cls} (${s.chain_count})`,
          value: s.mean_total_steps,
        })),
      );
      renderBars(
        panelBody(this.panels.lengths),
        Object.entries(stats.mean_length_by_action).map(([kind, mean]) => ({
          label: kind,
          value: mean,
        })),
        "#2f9e44",
      );
    } catch (error) {
      showError(this.panels.workflows, error);
      showError(this.panels.lengths, error);
    }
  }

  async loadFrequencies(): Promise<void> {
    try {
      const body = await this.api.frequencies(this.scope);
      renderBars(
        panelBody(this.panels.frequencies),
        body.rows.slice(0, 15).map(([term, count]) => ({ label: term, value: count })),
      );
    } catch (error) {
      showError(this.panels.frequencies, error);
    }
  }

  async setScope(scope: Scope): Promise<void> {
    this.scope = scope;
    await this.loadFrequencies();
  }

  async loadArchitects(): Promise<void> {
    try {
      const body = await this.api.architects();
      renderBars(
        panelBody(this.panels.architects),
        body.rows.slice(0, 12).map(([name, count]) => ({ label: name, value: count })),
        "#e8590c",
      );
    } catch (error) {
      showError(this.panels.architects, error);
    }
  }
}
