/** Deterministic force-directed layout.
 *
 * The random starting positions are seeded from a hash of the view content,
 * so the same payload always lands on the same picture (stable screenshots,
 * stable tests). The simulation itself is a plain spring embedder: uniform
 * node repulsion, edge springs, mild centering pull.
 */

import type { ViewPayload } from "./types.js";

export interface Point {
  x: number;
  y: number;
}

export function hashView(view: ViewPayload): number {
  const canonical = JSON.stringify([
    view.l_c,
    view.l_b,
    view.filter,
    view.vertices.map((v) => [v.id, v.weight]),
    view.edges.map((e) => [e.u, e.v, e.weight]),
  ]);
  // FNV-1a, 32 bit
  let h = 0x811c9dc5;
  for (let i = 0; i < canonical.length; i++) {
    h ^= canonical.charCodeAt(i);
    h = Math.imul(h, 0x01000193);
  }
  return h >>> 0;
}

export function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) | 0;
    let t = Math.imul(a ^ (a >>> 15), 1 | a);
    t = (t + Math.imul(t ^ (t >>> 7), 61 | t)) ^ t;
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export function computeLayout(
  view: ViewPayload,
  width: number,
  height: number,
  iterations = 150,
): Map<string, Point> {
  const ids = view.vertices.map((v) => v.id);
  const positions = new Map<string, Point>();
  if (ids.length === 0) return positions;

  const rand = mulberry32(hashView(view));
  for (const id of ids) {
    positions.set(id, {
      x: width * (0.15 + 0.7 * rand()),
      y: height * (0.15 + 0.7 * rand()),
    });
  }
  if (ids.length === 1) {
    positions.set(ids[0], { x: width / 2, y: height / 2 });
    return positions;
  }

  const area = width * height;
  const k = Math.sqrt(area / ids.length) * 0.6;
  const edges = view.edges.map((e) => [e.u, e.v] as const);

  for (let iter = 0; iter < iterations; iter++) {
    const temperature = 0.1 * Math.min(width, height) * (1 - iter / iterations) + 1;
    const disp = new Map<string, Point>(ids.map((id) => [id, { x: 0, y: 0 }]));

    for (let i = 0; i < ids.length; i++) {
      for (let j = i + 1; j < ids.length; j++) {
        const a = positions.get(ids[i])!;
        const b = positions.get(ids[j])!;
        let dx = a.x - b.x;
        let dy = a.y - b.y;
        let dist = Math.hypot(dx, dy);
        if (dist < 0.01) {
          dx = 0.01 * (i - j);
          dy = 0.01;
          dist = Math.hypot(dx, dy);
        }
        const force = (k * k) / dist;
        const da = disp.get(ids[i])!;
        const db = disp.get(ids[j])!;
        da.x += (dx / dist) * force;
        da.y += (dy / dist) * force;
        db.x -= (dx / dist) * force;
        db.y -= (dy / dist) * force;
      }
    }

    for (const [u, v] of edges) {
      const a = positions.get(u);
      const b = positions.get(v);
      if (!a || !b) continue;
      const dx = a.x - b.x;
      const dy = a.y - b.y;
      const dist = Math.max(Math.hypot(dx, dy), 0.01);
      const force = (dist * dist) / k;
      const da = disp.get(u)!;
      const db = disp.get(v)!;
      da.x -= (dx / dist) * force;
      da.y -= (dy / dist) * force;
      db.x += (dx / dist) * force;
      db.y += (dy / dist) * force;
    }

    for (const id of ids) {
      const p = positions.get(id)!;
      const d = disp.get(id)!;
      // centering pull keeps disconnected parts on screen
      d.x += (width / 2 - p.x) * 0.03;
      d.y += (height / 2 - p.y) * 0.03;
      const mag = Math.max(Math.hypot(d.x, d.y), 0.01);
      const step = Math.min(mag, temperature);
      p.x += (d.x / mag) * step;
      p.y += (d.y / mag) * step;
      p.x = Math.min(width - 20, Math.max(20, p.x));
      p.y = Math.min(height - 20, Math.max(20, p.y));
    }
  }
  return positions;
}

export interface SceneNode {
  id: string;
  x: number;
  y: number;
  radius: number;
  weight: number;
  label: string;
  caption: string;
  selected: boolean;
}

export interface SceneEdge {
  u: string;
  v: string;
  x1: number;
  y1: number;
  x2: number;
  y2: number;
  strokeWidth: number;
  weight: number;
}

export interface Scene {
  width: number;
  height: number;
  nodes: SceneNode[];
  edges: SceneEdge[];
}

/** Pure description of one rendered view: weights drive node radius and
 * edge thickness; every payload vertex appears exactly once. */
export function buildScene(
  view: ViewPayload,
  width: number,
  height: number,
  selected: ReadonlySet<string> = new Set(),
): Scene {
  const layout = computeLayout(view, width, height);
  const maxWeight = Math.max(1, ...view.vertices.map((v) => v.weight));
  const nodes: SceneNode[] = view.vertices.map((v) => {
    const p = layout.get(v.id)!;
    return {
      id: v.id,
      x: p.x,
      y: p.y,
      radius: 8 + 14 * Math.sqrt(v.weight / maxWeight),
      weight: v.weight,
      label: v.label,
      caption: `${v.id} (${v.weight})`,
      selected: selected.has(v.id),
    };
  });
  const maxEdge = Math.max(1, ...view.edges.map((e) => e.weight));
  const edges: SceneEdge[] = view.edges.flatMap((e) => {
    const a = layout.get(e.u);
    const b = layout.get(e.v);
    if (!a || !b) return [];
    return [
      {
        u: e.u,
        v: e.v,
        x1: a.x,
        y1: a.y,
        x2: b.x,
        y2: b.y,
        strokeWidth: 1 + 5 * (e.weight / maxEdge),
        weight: e.weight,
      },
    ];
  });
  return { width, height, nodes, edges };
}
