/** DOM rendering: the weighted view as an SVG node-link picture and the
 * history as a clickable breadcrumb strip. Any rendering failure falls back
 * to a plain list so the payload stays visible. */

import { buildScene } from "./layout.js";
import { describeState, type BreadcrumbModel } from "./history.js";
import type { ViewPayload } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export function renderView(
  container: HTMLElement,
  view: ViewPayload,
  selected: ReadonlySet<string>,
  onVertexClick: (id: string) => void,
): void {
  container.textContent = "";
  if (view.vertices.length === 0) {
    const empty = document.createElement("p");
    empty.className = "empty-state";
    empty.textContent = "Nothing to show: every vertex of this view has weight 0.";
    container.appendChild(empty);
    return;
  }
  try {
    renderSvg(container, view, selected, onVertexClick);
  } catch (err) {
    console.error("svg rendering failed, falling back to list", err);
    renderList(container, view, selected, onVertexClick);
  }
}

function renderSvg(
  container: HTMLElement,
  view: ViewPayload,
  selected: ReadonlySet<string>,
  onVertexClick: (id: string) => void,
): void {
  const width = container.clientWidth || 800;
  const height = 520;
  const scene = buildScene(view, width, height, selected);

  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("width", String(width));
  svg.setAttribute("height", String(height));
  svg.setAttribute("viewBox", `0 0 ${width} ${height}`);

  for (const edge of scene.edges) {
    const line = document.createElementNS(SVG_NS, "line");
    line.setAttribute("x1", edge.x1.toFixed(1));
    line.setAttribute("y1", edge.y1.toFixed(1));
    line.setAttribute("x2", edge.x2.toFixed(1));
    line.setAttribute("y2", edge.y2.toFixed(1));
    line.setAttribute("stroke-width", edge.strokeWidth.toFixed(2));
    line.setAttribute("class", "view-edge");
    const title = document.createElementNS(SVG_NS, "title");
    title.textContent = `${edge.u} - ${edge.v}: ${edge.weight}`;
    line.appendChild(title);
    svg.appendChild(line);
  }

  for (const node of scene.nodes) {
    const group = document.createElementNS(SVG_NS, "g");
    group.setAttribute("class", node.selected ? "view-node selected" : "view-node");
    group.addEventListener("click", () => onVertexClick(node.id));

    const circle = document.createElementNS(SVG_NS, "circle");
    circle.setAttribute("cx", node.x.toFixed(1));
    circle.setAttribute("cy", node.y.toFixed(1));
    circle.setAttribute("r", node.radius.toFixed(1));
    group.appendChild(circle);

    const text = document.createElementNS(SVG_NS, "text");
    text.setAttribute("x", node.x.toFixed(1));
    text.setAttribute("y", (node.y + node.radius + 12).toFixed(1));
    text.setAttribute("text-anchor", "middle");
    text.textContent = node.caption;
    group.appendChild(text);

    const title = document.createElementNS(SVG_NS, "title");
    title.textContent = `${node.id} [${node.label}] weight ${node.weight}`;
    group.appendChild(title);

    svg.appendChild(group);
  }
  container.appendChild(svg);
}

export function renderList(
  container: HTMLElement,
  view: ViewPayload,
  selected: ReadonlySet<string>,
  onVertexClick: (id: string) => void,
): void {
  container.textContent = "";
  const list = document.createElement("ul");
  list.className = "view-fallback";
  for (const vertex of view.vertices) {
    const item = document.createElement("li");
    item.textContent = `${vertex.id} [${vertex.label}] weight ${vertex.weight}`;
    if (selected.has(vertex.id)) item.classList.add("selected");
    item.addEventListener("click", () => onVertexClick(vertex.id));
    list.appendChild(item);
  }
  container.appendChild(list);
}

export function renderBreadcrumb(
  container: HTMLElement,
  model: BreadcrumbModel,
  onStateClick: (walkPosition: number) => void,
): void {
  container.textContent = "";
  const strip = document.createElement("div");
  strip.className = "breadcrumb";
  const opNames: Record<string, string> = { sigma: "select", xi: "expand", eta: "navigate" };

  model.walk.forEach((digest, position) => {
    if (position > 0) {
      const step = model.steps[position - 1];
      const arrow = document.createElement("span");
      arrow.className = "breadcrumb-op";
      arrow.textContent = ` → ${opNames[step.op] ?? step.op} → `;
      strip.appendChild(arrow);
    }
    const node = model.nodes.find((n) => n.digest === digest);
    const button = document.createElement("button");
    button.className = "breadcrumb-state";
    if (position === model.walk.length - 1) button.classList.add("current");
    if (node && node.firstVisit !== position) button.classList.add("revisit");
    button.textContent = node ? describeState(node.state) : digest;
    button.title = node && node.inEdges > 1 ? `visited ${node.inEdges} times` : digest;
    button.addEventListener("click", () => onStateClick(position));
    strip.appendChild(button);
  });
  container.appendChild(strip);
}
