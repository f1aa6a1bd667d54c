import { el, svgEl } from "../dom.js";
import { LAYOUT_SEED, layoutGraph } from "../layout.js";
import { CLASS_COLORS, CLASS_ORDER } from "../types.js";
import type { GraphEdgeDoc, MergedGraphDoc } from "../types.js";

export interface GraphView {
  /** Assets currently toggled into the scenario's compromised set. */
  compromised: ReadonlySet<string>;
  /** Link id of the edge whose protections are being inspected, if any. */
  selectedLink: string | null;
}

export interface GraphCallbacks {
  onNodeClick?: (assetId: string) => void;
  onEdgeClick?: (edge: GraphEdgeDoc) => void;
}

const WIDTH = 720;
const HEIGHT = 480;
const NODE_RADIUS = 18;
const NEUTRAL_EDGE = "#8a8a8a";
const ATTACKER_FILL = "firebrick";
const NODE_FILL = "#d7e3f4";

/**
 * Draw a merged attack-graph payload as an interactive node-link view.
 * Edge colors come from the payload's per-edge worst coverage class; node
 * styling marks assets the user has toggled as attacker-controlled. A
 * malformed payload renders an error surface instead of throwing.
 */
export function renderGraph(
  container: HTMLElement,
  graph: MergedGraphDoc,
  view: GraphView,
  callbacks: GraphCallbacks = {},
  seed: number = LAYOUT_SEED,
): void {
  try {
    renderGraphInto(container, graph, view, callbacks, seed);
  } catch (error) {
    container.replaceChildren(
      el("div", { class: "render-error" }, [
        `could not draw the attack graph: ${String(error)}`,
      ]),
    );
  }
}

function renderGraphInto(
  container: HTMLElement,
  graph: MergedGraphDoc,
  view: GraphView,
  callbacks: GraphCallbacks,
  seed: number,
): void {
  if (
    graph === null ||
    typeof graph !== "object" ||
    !Array.isArray(graph.nodes) ||
    !Array.isArray(graph.edges)
  ) {
    throw new Error("payload is missing its nodes or edges");
  }
  if (graph.nodes.length === 0) {
    container.replaceChildren(
      el("p", { class: "empty-state" }, [
        "no attack chains reach a critical asset for this selection",
      ]),
    );
    return;
  }

  const positions = layoutGraph(graph.nodes, WIDTH, HEIGHT, seed);
  const svg = svgEl("svg", {
    class: "attack-graph",
    viewBox: `0 0 ${WIDTH} ${HEIGHT}`,
    width: String(WIDTH),
    height: String(HEIGHT),
  });
  svg.append(
    svgEl("defs", {}, [
      svgEl(
        "marker",
        {
          id: "arrow",
          viewBox: "0 0 10 10",
          refX: "9",
          refY: "5",
          markerWidth: "7",
          markerHeight: "7",
          orient: "auto-start-reverse",
        },
        [svgEl("path", { d: "M 0 0 L 10 5 L 0 10 z", fill: "#555555" })],
      ),
    ]),
  );

  const edgeLayer = svgEl("g", { class: "edges" });
  for (const edge of graph.edges) {
    const a = positions.get(edge.from);
    const b = positions.get(edge.to);
    if (a === undefined || b === undefined) {
      throw new Error(`edge ${edge.link} references an unknown node`);
    }
    const [start, end] = trimToRadius(a, b, NODE_RADIUS + 3);
    const selected = edge.link === view.selectedLink;
    const color =
      edge.worst_class === null ? NEUTRAL_EDGE : CLASS_COLORS[edge.worst_class];
    const line = svgEl(
      "line",
      {
        class: selected ? "edge selected" : "edge",
        x1: String(start.x),
        y1: String(start.y),
        x2: String(end.x),
        y2: String(end.y),
        stroke: color,
        "stroke-width": selected ? "4" : "2.5",
        "marker-end": "url(#arrow)",
        "data-link": edge.link,
        "data-from": edge.from,
        "data-to": edge.to,
      },
      [svgEl("title", {}, [`${edge.from} → ${edge.to}`])],
    );
    if (callbacks.onEdgeClick) {
      line.addEventListener("click", () => callbacks.onEdgeClick?.(edge));
    }
    edgeLayer.append(line);
  }
  svg.append(edgeLayer);

  const nodeLayer = svgEl("g", { class: "nodes" });
  for (const node of graph.nodes) {
    const pos = positions.get(node.id);
    if (pos === undefined) continue;
    const compromised = view.compromised.has(node.id);
    const group = svgEl(
      "g",
      {
        class: compromised ? "node compromised" : "node",
        transform: `translate(${pos.x},${pos.y})`,
        "data-asset": node.id,
      },
      [
        svgEl("circle", {
          r: String(NODE_RADIUS),
          fill: compromised ? ATTACKER_FILL : NODE_FILL,
          stroke: compromised ? "#7a1010" : "#44597a",
          "stroke-width": "1.5",
        }),
        svgEl(
          "text",
          {
            y: String(NODE_RADIUS + 14),
            "text-anchor": "middle",
            class: "node-label",
          },
          [node.name ?? node.id],
        ),
        svgEl("title", {}, [
          compromised ? `${node.id} (attacker-controlled)` : node.id,
        ]),
      ],
    );
    if (callbacks.onNodeClick) {
      group.addEventListener("click", () => callbacks.onNodeClick?.(node.id));
    }
    nodeLayer.append(group);
  }
  svg.append(nodeLayer);

  container.replaceChildren(svg, buildLegend());
}

function buildLegend(): HTMLElement {
  const items = CLASS_ORDER.map((cls) =>
    el("span", { class: "legend-item" }, [
      el("span", {
        class: "legend-swatch",
        style: `background:${CLASS_COLORS[cls]}`,
      }),
      cls,
    ]),
  );
  items.push(
    el("span", { class: "legend-item" }, [
      el("span", {
        class: "legend-swatch",
        style: `background:${ATTACKER_FILL}`,
      }),
      "attacker-controlled asset",
    ]),
  );
  return el("div", { class: "legend" }, items);
}

function trimToRadius(
  a: { x: number; y: number },
  b: { x: number; y: number },
  margin: number,
): [{ x: number; y: number }, { x: number; y: number }] {
  const dx = b.x - a.x;
  const dy = b.y - a.y;
  const length = Math.hypot(dx, dy) || 1;
  const ux = dx / length;
  const uy = dy / length;
  return [
    { x: round2(a.x + ux * margin), y: round2(a.y + uy * margin) },
    { x: round2(b.x - ux * margin), y: round2(b.y - uy * margin) },
  ];
}

function round2(value: number): number {
  return Math.round(value * 100) / 100;
}
