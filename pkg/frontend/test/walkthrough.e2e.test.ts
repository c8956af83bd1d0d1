/** Scripted walkthrough against the real backend: entry view, select two
 * view vertices, navigate to the other label, select the cluster, expand
 * back. Each step must issue exactly one operator request and the
 * breadcrumb must show the 4-step walk. */

import { spawn, type ChildProcess } from "node:child_process";
import { mkdtempSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient, type FetchLike } from "../src/api.js";
import { AppCore } from "../src/app.js";

const G0 = `N x1 X
N x2 X
N y1 Y
N y2 Y
N y3 Y
N z1 Z
N z2 Z
E x1 y1
E x1 y2
E x2 y2
E x2 y3
E y1 z1
E y2 z1
E y3 z2
`;

const PORT = 8000 + Math.floor(Math.random() * 20000);
const BASE = `http://127.0.0.1:${PORT}`;

let server: ChildProcess;
const operatorCalls: string[] = [];

const countingFetch: FetchLike = (url, init) => {
  const method = init?.method ?? "GET";
  if (method === "POST" && /\/(select|expand|navigate)$/.test(url)) {
    operatorCalls.push(url.slice(url.lastIndexOf("/") + 1));
  }
  return fetch(url, init);
};

async function waitForServer(): Promise<void> {
  for (let attempt = 0; attempt < 120; attempt++) {
    try {
      const response = await fetch(`${BASE}/graphs/none/schema`);
      if (response.status === 404) return;
    } catch {
      // not up yet
    }
    await new Promise((resolve) => setTimeout(resolve, 250));
  }
  throw new Error("backend did not come up");
}

beforeAll(async () => {
  const dataDir = mkdtempSync(join(tmpdir(), "graphlens-ui-e2e-"));
  server = spawn(
    "graphlens",
    ["serve", "--host", "127.0.0.1", "--port", String(PORT), "--data-dir", dataDir],
    { stdio: "ignore" },
  );
  await waitForServer();
}, 40_000);

afterAll(() => {
  server?.kill("SIGTERM");
});

describe("figure-style walkthrough", () => {
  it("drives entry -> select -> navigate -> select cluster -> expand back", async () => {
    const snapshots: string[] = [];
    const app = new AppCore(new ApiClient(BASE, countingFetch), (snapshot) => {
      if (!snapshot.busy) {
        snapshots.push(`${snapshot.view.l_c.join("+")}|${snapshot.view.filter.join(",")}`);
      }
    });

    // entry view: both X vertices, connected through their shared bridge
    await app.startWithGraphText(G0, ["X"], ["Y"]);
    let view = app.snapshot().view;
    expect(view.vertices.map((v) => v.id)).toEqual(["x1", "x2"]);
    expect(view.edges).toEqual([{ u: "x1", v: "x2", weight: 1, support: ["y2"] }]);
    expect(operatorCalls).toEqual([]);

    // step 1: select both technologies-, er, X vertices
    app.toggleStaged("x1");
    app.toggleStaged("x2");
    await app.applySelection();
    view = app.snapshot().view;
    expect(view.filter).toEqual(["x1", "x2"]);
    expect(operatorCalls).toEqual(["select"]);

    // step 2: navigate to the Z view for the selection
    await app.navigateTo(["Z"], ["Y"]);
    view = app.snapshot().view;
    expect(view.l_c).toEqual(["Z"]);
    expect(view.filter).toEqual(["x1", "x2"]);
    expect(view.vertices).toEqual([
      { id: "z1", label: "Z", weight: 2, support: ["y1", "y2"] },
      { id: "z2", label: "Z", weight: 1, support: ["y3"] },
    ]);
    expect(operatorCalls).toEqual(["select", "navigate"]);

    // step 3: select the interesting cluster
    app.toggleStaged("z1");
    await app.applySelection();
    view = app.snapshot().view;
    expect(view.filter).toEqual(["x1", "x2", "z1"]);
    expect(operatorCalls).toEqual(["select", "navigate", "select"]);

    // step 4: expand back to the X view; X-selections are shed
    await app.expandTo(["X"]);
    view = app.snapshot().view;
    expect(view.l_c).toEqual(["X"]);
    expect(view.filter).toEqual(["z1"]);
    expect(view.vertices).toEqual([
      { id: "x1", label: "X", weight: 2, support: ["y1", "y2"] },
      { id: "x2", label: "X", weight: 1, support: ["y2"] },
    ]);
    expect(view.edges).toEqual([{ u: "x1", v: "x2", weight: 1, support: ["y2"] }]);

    // exactly one operator request per step
    expect(operatorCalls).toEqual(["select", "navigate", "select", "expand"]);

    // the breadcrumb shows the full 4-step walk
    const breadcrumb = app.snapshot().breadcrumb;
    expect(breadcrumb.steps.map((s) => s.op)).toEqual(["sigma", "eta", "sigma", "xi"]);
    expect(breadcrumb.walk).toHaveLength(5);
    expect(breadcrumb.nodes).toHaveLength(5); // no revisits in this walk

    // the UI always mirrors the last payload
    expect(snapshots.at(-1)).toBe("X|z1");
  }, 30_000);

  it("clicking a past breadcrumb state replays into a fresh session", async () => {
    const app = new AppCore(new ApiClient(BASE, countingFetch));
    await app.startWithGraphText(G0, ["X"], ["Y"]);
    const firstSession = app.snapshot().sessionId;

    app.toggleStaged("x1");
    await app.applySelection();
    await app.navigateTo(["Z"], ["Y"]);
    expect(app.snapshot().view.l_c).toEqual(["Z"]);

    await app.replayTo(1); // back to the state right after the select
    const snapshot = app.snapshot();
    expect(snapshot.sessionId).not.toBe(firstSession);
    expect(snapshot.view.l_c).toEqual(["X"]);
    expect(snapshot.view.filter).toEqual(["x1"]);
    expect(snapshot.breadcrumb.walk).toHaveLength(2);

    // the replayed-from session is untouched on the server
    const original = await new ApiClient(BASE).getHistory(firstSession);
    expect(original.split("\n").filter((l) => l.startsWith("step "))).toHaveLength(2);
  }, 30_000);

  it("surfaces a disjointness violation inline", async () => {
    const app = new AppCore(new ApiClient(BASE, countingFetch));
    await app.startWithGraphText(G0, ["X"], ["Y"]);
    await expect(app.navigateTo(["Y"], ["Y"])).rejects.toThrow(/overlap/);
    expect(app.snapshot().error).toMatch(/overlap/);
  }, 30_000);
});
