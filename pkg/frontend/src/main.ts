/** Browser bootstrap: wire the app core to the page controls.
 *
 * The API base defaults to the page origin (the service can mount this UI
 * at /ui); override with ?api=http://host:port when serving the files from
 * elsewhere. */

import { ApiClient } from "./api.js";
import { AppCore, type Snapshot } from "./app.js";
import { renderBreadcrumb, renderView } from "./render.js";

function el<T extends HTMLElement>(id: string): T {
  const found = document.getElementById(id);
  if (!found) throw new Error(`missing element #${id}`);
  return found as T;
}

function readMultiSelect(select: HTMLSelectElement): string[] {
  return [...select.selectedOptions].map((o) => o.value);
}

function fillLabelPicker(select: HTMLSelectElement, labels: string[], chosen: string[]): void {
  select.textContent = "";
  for (const label of labels) {
    const option = document.createElement("option");
    option.value = label;
    option.textContent = label;
    option.selected = chosen.includes(label);
    select.appendChild(option);
  }
}

function main(): void {
  const params = new URLSearchParams(location.search);
  const api = new ApiClient(params.get("api") ?? "");

  const viewBox = el<HTMLElement>("view");
  const crumbBox = el<HTMLElement>("breadcrumb");
  const statusBox = el<HTMLElement>("status");
  const lcPicker = el<HTMLSelectElement>("lc-picker");
  const lbPicker = el<HTMLSelectElement>("lb-picker");
  const controls = [
    el<HTMLButtonElement>("apply-select"),
    el<HTMLButtonElement>("apply-expand"),
    el<HTMLButtonElement>("apply-navigate"),
  ];

  let pickersFilled = false;

  const app = new AppCore(api, (snapshot: Snapshot) => {
    statusBox.textContent = snapshot.error
      ? `error: ${snapshot.error}`
      : snapshot.busy
        ? "working..."
        : `session ${snapshot.sessionId} | view ${snapshot.view.l_c.join("+")} over ` +
          `${snapshot.view.l_b.join("+")} | filter {${snapshot.view.filter.join(",")}}` +
          (snapshot.staged.length ? ` | staged: ${snapshot.staged.join(",")}` : "");
    statusBox.classList.toggle("error", snapshot.error !== null);
    for (const control of controls) control.disabled = snapshot.busy;
    lcPicker.disabled = snapshot.busy;
    lbPicker.disabled = snapshot.busy;
    if (!pickersFilled) {
      fillLabelPicker(lcPicker, snapshot.schema.labels, snapshot.view.l_c);
      fillLabelPicker(lbPicker, snapshot.schema.labels, snapshot.view.l_b);
      pickersFilled = true;
    }
    if (!snapshot.busy) {
      renderView(viewBox, snapshot.view, new Set(snapshot.staged), (id) =>
        app.toggleStaged(id),
      );
      renderBreadcrumb(crumbBox, snapshot.breadcrumb, (position) => {
        app.replayTo(position).catch(() => {});
      });
    }
  });

  const swallow = (p: Promise<void>) => p.catch(() => {});

  el<HTMLButtonElement>("apply-select").addEventListener("click", () =>
    swallow(app.applySelection()),
  );
  el<HTMLButtonElement>("apply-expand").addEventListener("click", () =>
    swallow(app.expandTo(readMultiSelect(lcPicker))),
  );
  el<HTMLButtonElement>("apply-navigate").addEventListener("click", () =>
    swallow(app.navigateTo(readMultiSelect(lcPicker), readMultiSelect(lbPicker))),
  );

  el<HTMLButtonElement>("load-graph").addEventListener("click", async () => {
    const fileInput = el<HTMLInputElement>("graph-file");
    const lC = el<HTMLInputElement>("entry-lc").value.split(",").filter(Boolean);
    const lB = el<HTMLInputElement>("entry-lb").value.split(",").filter(Boolean);
    try {
      const file = fileInput.files?.[0];
      if (file) {
        await app.startWithGraphText(await file.text(), lC, lB);
      } else {
        const graphId = el<HTMLInputElement>("graph-id").value.trim();
        if (!graphId) throw new Error("choose a graph file or enter a graph id");
        await app.startWithGraphId(graphId, lC, lB);
      }
      pickersFilled = false;
      el<HTMLElement>("setup").classList.add("started");
    } catch (err) {
      statusBox.textContent = `error: ${err instanceof Error ? err.message : err}`;
      statusBox.classList.add("error");
    }
  });
}

main();
