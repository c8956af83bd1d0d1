/** Parse the server's history export and fold it into a breadcrumb graph:
 * states deduplicated by digest, steps in walk order. */

export interface HistoryState {
  digest: string;
  filter: string[];
  l_c: string[];
  l_b: string[];
}

export interface HistoryStep {
  from: string;
  op: string; // sigma | xi | eta
  to: string;
}

export interface History {
  entry: string;
  states: Map<string, HistoryState>;
  steps: HistoryStep[];
}

export interface BreadcrumbNode {
  digest: string;
  state: HistoryState;
  /** index of the first walk position showing this state (0 = entry) */
  firstVisit: number;
  inEdges: number;
}

export interface BreadcrumbModel {
  nodes: BreadcrumbNode[];
  steps: HistoryStep[];
  /** state digests along the walk, entry first */
  walk: string[];
}

function parseFields(parts: string[]): { filter: string[]; l_c: string[]; l_b: string[] } {
  const out: Record<string, string[]> = { F: [], LC: [], LB: [] };
  for (const part of parts) {
    const eq = part.indexOf("=");
    if (eq < 0) continue;
    const key = part.slice(0, eq);
    const value = part.slice(eq + 1);
    out[key] = value ? value.split(",") : [];
  }
  return { filter: out.F ?? [], l_c: out.LC ?? [], l_b: out.LB ?? [] };
}

export function parseHistory(text: string): History {
  const states = new Map<string, HistoryState>();
  const steps: HistoryStep[] = [];
  let entry = "";
  for (const raw of text.split("\n")) {
    const line = raw.trim();
    if (!line || line.startsWith("#")) continue;
    const parts = line.split(/\s+/);
    if (parts[0] === "state" && parts.length >= 2) {
      const digest = parts[1];
      states.set(digest, { digest, ...parseFields(parts.slice(2)) });
    } else if (parts[0] === "entry" && parts.length === 2) {
      entry = parts[1];
    } else if (parts[0] === "step" && parts.length === 4) {
      steps.push({ from: parts[1], op: parts[2], to: parts[3] });
    }
  }
  if (!entry) throw new Error("history export has no entry state");
  return { entry, states, steps };
}

/** A revisited state appears once, collecting one in-edge per arriving step. */
export function buildBreadcrumb(history: History): BreadcrumbModel {
  const walk = [history.entry, ...history.steps.map((s) => s.to)];
  const nodes = new Map<string, BreadcrumbNode>();
  walk.forEach((digest, position) => {
    const existing = nodes.get(digest);
    if (existing) return;
    const state = history.states.get(digest);
    if (!state) throw new Error(`walk references unknown state ${digest}`);
    nodes.set(digest, { digest, state, firstVisit: position, inEdges: 0 });
  });
  for (const step of history.steps) {
    const node = nodes.get(step.to);
    if (node) node.inEdges += 1;
  }
  return { nodes: [...nodes.values()], steps: history.steps, walk };
}

export function describeState(state: HistoryState): string {
  const filter = state.filter.length ? `{${state.filter.join(",")}}` : "{}";
  return `${state.l_c.join("+") || "?"} / ${state.l_b.join("+") || "?"} ${filter}`;
}
