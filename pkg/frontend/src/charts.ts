const SVG_NS = "http://www.w3.org/2000/svg";

export interface BarRow {
  label: string;
  value: number;
  color?: string;
}

const BAR_WIDTH = 320;
const ROW_HEIGHT = 22;
const LABEL_WIDTH = 150;

function svgElement<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string>,
): SVGElementTagNameMap[K] {
  const el = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) {
    el.setAttribute(key, value);
  }
  return el;
}

/** Render a horizontal bar chart into `container` (replacing its content). */
export function renderBars(container: HTMLElement, rows: BarRow[], defaultColor = "#4878a8"): void {
  container.replaceChildren();
  if (rows.length === 0) {
    const empty = document.createElement("p");
    empty.className = "empty";
    empty.textContent = "no data";
    container.appendChild(empty);
    return;
  }
  const max = Math.max(...rows.map((r) => (r.value > 0 ? r.value : 0)), 1e-12);
  const svg = svgElement("svg", {
    width: String(LABEL_WIDTH + BAR_WIDTH + 80),
    height: String(rows.length * ROW_HEIGHT + 6),
    role: "img",
  });
  rows.forEach((row, i) => {
    const y = i * ROW_HEIGHT + 4;
    const label = svgElement("text", { x: "2", y: String(y + 12), "font-size": "12" });
    label.textContent = row.label;
    svg.appendChild(label);
    const width = row.value > 0 ? (BAR_WIDTH * row.value) / max : 0;
    svg.appendChild(
      svgElement("rect", {
        x: String(LABEL_WIDTH),
        y: String(y),
        width: width.toFixed(2),
        height: String(ROW_HEIGHT - 7),
        fill: row.color ?? defaultColor,
        class: "bar",
      }),
    );
    const value = svgElement("text", {
      x: (LABEL_WIDTH + width + 5).toFixed(2),
      y: String(y + 12),
      "font-size": "11",
    });
    value.textContent = Number.isInteger(row.value) ? String(row.value) : row.value.toFixed(2);
    svg.appendChild(value);
  });
  container.appendChild(svg);
}
