import { ApiClient } from "./api.js";
import { CATEGORY_COLORS, serviceUrl } from "./config.js";
import { Dashboards } from "./dashboards.js";
import { PromptState } from "./state.js";
import { SuggestController } from "./suggest.js";
import type { Category, Scope, Suggestion } from "./types.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) {
    throw new Error(`missing element #${id}`);
  }
  return node as T;
}

export function wireStudio(api: ApiClient = new ApiClient(serviceUrl())): void {
  const input = el<HTMLInputElement>("prompt-input");
  const suggestionList = el<HTMLUListElement>("suggestions");
  const categoryBar = el<HTMLDivElement>("category-bar");
  const categoryLegend = el<HTMLDivElement>("category-legend");
  const undoButton = el<HTMLButtonElement>("undo-btn");
  const banner = el<HTMLDivElement>("error-banner");

  const state = new PromptState();

  function renderCategoryBar(): void {
    const pct = state.percentages();
    categoryBar.replaceChildren();
    categoryLegend.replaceChildren();
    if (state.isEmpty()) {
      categoryBar.classList.add("empty");
      return;
    }
    categoryBar.classList.remove("empty");
    for (const category of ["style", "content", "quality", "unknown"] as Category[]) {
      if (pct[category] <= 0) {
        continue;
      }
      const segment = document.createElement("div");
      segment.className = `bar-segment cat-${category}`;
      segment.style.width = `${pct[category]}%`;
      segment.style.background = CATEGORY_COLORS[category];
      segment.title = `${category} ${pct[category].toFixed(1)}%`;
      categoryBar.appendChild(segment);
      const item = document.createElement("span");
      item.className = "legend-item";
      item.textContent = `${category} ${pct[category].toFixed(1)}%`;
      item.style.color = CATEGORY_COLORS[category];
      categoryLegend.appendChild(item);
    }
    undoButton.disabled = !state.canUndo();
  }

  function renderSuggestions(suggestions: Suggestion[]): void {
    banner.hidden = true;
    suggestionList.replaceChildren();
    for (const suggestion of suggestions) {
      const item = document.createElement("li");
      item.className = "suggestion";
      const dot = document.createElement("span");
      dot.className = `dot cat-${suggestion.category}`;
      dot.style.background = CATEGORY_COLORS[suggestion.category];
      const term = document.createElement("span");
      term.className = "term";
      term.textContent = suggestion.term;
      const score = document.createElement("span");
      score.className = "score";
      score.textContent = suggestion.score.toFixed(3);
      item.append(dot, term, score);
      item.addEventListener("click", () => {
        if (!state.append(suggestion.term, suggestion.category)) {
          item.classList.add("dup-hint");
          setTimeout(() => item.classList.remove("dup-hint"), 600);
          return;
        }
        input.value = state.text();
        renderCategoryBar();
        controller.refresh(state.text());
      });
      suggestionList.appendChild(item);
    }
  }

  const controller = new SuggestController(
    (prompt, k, signal) => api.suggest(prompt, k, signal),
    {
      onResult: renderSuggestions,
      onError: () => {
        banner.hidden = false; // previous suggestions stay on screen
      },
    },
  );

  input.addEventListener("input", () => {
    state.setFromText(input.value);
    renderCategoryBar();
    controller.input(input.value);
  });

  undoButton.addEventListener("click", () => {
    if (state.undo()) {
      input.value = state.text();
      renderCategoryBar();
      controller.refresh(state.text());
    }
  });

  // neighbor exploration
  const neighborInput = el<HTMLInputElement>("neighbor-term");
  const neighborButton = el<HTMLButtonElement>("neighbor-btn");
  const neighborsOut = el<HTMLDivElement>("neighbors-out");
  neighborButton.addEventListener("click", async () => {
    const term = neighborInput.value.trim().toLowerCase();
    if (!term) {
      return;
    }
    try {
      const neighbors = await api.neighbors(term, 10);
      neighborsOut.replaceChildren();
      for (const n of neighbors) {
        const row = document.createElement("div");
        row.className = "neighbor-row";
        row.textContent = `${n.term}  ${n.cosine.toFixed(3)}`;
        neighborsOut.appendChild(row);
      }
    } catch (error) {
      neighborsOut.textContent =
        error instanceof Error && /404/.test(error.message)
          ? `"${term}" is not in the vocabulary`
          : "neighbors unavailable";
    }
  });

  // dashboards
  const dashboards = new Dashboards(api, {
    workflows: el("panel-workflows"),
    lengths: el("panel-lengths"),
    frequencies: el("panel-frequencies"),
    architects: el("panel-architects"),
  });
  el<HTMLSelectElement>("scope-select").addEventListener("change", (event) => {
    void dashboards.setScope((event.target as HTMLSelectElement).value as Scope);
  });
  void dashboards.loadAll();

  renderCategoryBar();
  controller.refresh(""); // show global top terms on load
}

if (typeof document !== "undefined" && document.getElementById("prompt-input")) {
  wireStudio();
}
