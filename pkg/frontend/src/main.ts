/** DOM wiring for the workbench page. All numbers of record come from the
 * API; this file only moves them into the document. */

import { WorkbenchApi, ApiError } from "./api";
import { barsFromStats, textReport } from "./chart";
import { meshToBuffers, type MeshBuffers } from "./mesh";
import { cssColor, loupePatch, samplePixel, type PixelSource } from "./picker";
import { drawScene } from "./render";
import { ViewState } from "./state";
import type { StatsDoc } from "./types";

const api = new WorkbenchApi("");
const state = new ViewState();

const $ = <T extends HTMLElement>(id: string): T => {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el as T;
};

const imageCanvas = $<HTMLCanvasElement>("image-canvas");
const sceneCanvas = $<HTMLCanvasElement>("scene-canvas");
const seedList = $<HTMLUListElement>("seed-list");
const statusLine = $<HTMLDivElement>("status");
const loupe = $<HTMLDivElement>("loupe");

let pixelSource: PixelSource | null = null;
let meshBuffers: MeshBuffers[] = [];
let lastStats: StatsDoc | null = null;

function toast(message: string, isError = false): void {
  statusLine.textContent = message;
  statusLine.className = isError ? "status error" : "status";
}

function drawImageToCanvas(img: HTMLImageElement): void {
  imageCanvas.width = img.naturalWidth;
  imageCanvas.height = img.naturalHeight;
  const ctx = imageCanvas.getContext("2d")!;
  ctx.drawImage(img, 0, 0);
  pixelSource = ctx.getImageData(0, 0, imageCanvas.width, imageCanvas.height);
}

function canvasCoords(event: MouseEvent): { x: number; y: number } {
  const rect = imageCanvas.getBoundingClientRect();
  return {
    x: Math.floor(((event.clientX - rect.left) / rect.width) * imageCanvas.width),
    y: Math.floor(((event.clientY - rect.top) / rect.height) * imageCanvas.height),
  };
}

function renderSeedList(): void {
  seedList.innerHTML = "";
  state.seeds.forEach((seed, i) => {
    const li = document.createElement("li");
    const swatch = document.createElement("span");
    swatch.className = "swatch";
    swatch.style.backgroundColor = cssColor(seed.color);
    const badge = seed.isBackground ? " — Cluster 1 (background)" : ` — Cluster ${i + 1}`;
    li.append(swatch, `(${seed.x}, ${seed.y}) ${seed.label}${badge}`);
    seedList.appendChild(li);
  });
  $<HTMLButtonElement>("run-pipeline").disabled = !state.canRunPipeline() || !state.sessionId;
}

function renderLoupe(x: number, y: number): void {
  if (!pixelSource) return;
  loupe.innerHTML = "";
  for (const row of loupePatch(pixelSource, x, y)) {
    for (const cell of row) {
      const div = document.createElement("div");
      div.className = "loupe-cell";
      div.style.backgroundColor = cell ? cssColor(cell) : "transparent";
      loupe.appendChild(div);
    }
  }
}

function renderStatsPanel(stats: StatsDoc): void {
  lastStats = stats;
  const chart = $<HTMLDivElement>("bar-chart");
  chart.innerHTML = "";
  const maxPct = Math.max(...barsFromStats(stats).map((b) => b.percent), 1);
  for (const bar of barsFromStats(stats)) {
    const row = document.createElement("div");
    row.className = "bar-row";
    row.dataset.cluster = String(bar.cluster);
    const label = document.createElement("span");
    label.className = "bar-label";
    label.textContent = `${bar.cluster}: ${bar.label}`;
    const track = document.createElement("div");
    track.className = "bar-track";
    const fill = document.createElement("div");
    fill.className = "bar-fill";
    fill.style.width = `${(bar.percent / maxPct) * 100}%`;
    fill.style.backgroundColor = cssColor(bar.color);
    const value = document.createElement("span");
    value.className = "bar-value";
    value.textContent = `${bar.percent.toFixed(2)}%`;
    track.appendChild(fill);
    row.append(label, track, value);
    row.addEventListener("mouseenter", () => showView({ kind: "mask", cluster: bar.cluster }));
    row.addEventListener("mouseleave", () => showView(state.view));
    chart.appendChild(row);
  }
  $<HTMLPreElement>("text-report").textContent = textReport(stats);
}

function showView(view: typeof state.view): void {
  if (!state.sessionId) return;
  const display = $<HTMLImageElement>("artifact-view");
  if (view.kind === "original") {
    display.src = imageCanvas.toDataURL();
  } else if (view.kind === "segmented") {
    display.src = api.artifactUrl(state.sessionId, "segmented");
  } else {
    display.src = api.artifactUrl(state.sessionId, "mask", view.cluster);
  }
}

function redrawScene(): void {
  const ctx = sceneCanvas.getContext("2d")!;
  drawScene(ctx, meshBuffers, state.camera, sceneCanvas.width, sceneCanvas.height);
}

async function refreshMeshes(): Promise<void> {
  if (!state.sessionId || !lastStats) return;
  const buffers: MeshBuffers[] = [];
  for (const row of lastStats.clusters.slice(1)) {
    if (!state.visibleClusters.has(row.index)) continue;
    try {
      buffers.push(meshToBuffers(await api.getMesh(state.sessionId, row.index)));
    } catch (err) {
      // non-blocking: keep the previous scene for this cluster
      toast(`mesh ${row.index} unavailable: ${(err as Error).message}`, true);
      return;
    }
  }
  meshBuffers = buffers;
  redrawScene();
}

function renderClusterToggles(stats: StatsDoc): void {
  const box = $<HTMLDivElement>("cluster-toggles");
  box.innerHTML = "";
  for (const row of stats.clusters.slice(1)) {
    const label = document.createElement("label");
    const cb = document.createElement("input");
    cb.type = "checkbox";
    cb.checked = true;
    state.visibleClusters.add(row.index);
    cb.addEventListener("change", () => {
      state.toggleCluster(row.index);
      void refreshMeshes();
    });
    label.append(cb, ` ${row.index}: ${row.label}`);
    box.appendChild(label);
  }
}

$<HTMLInputElement>("image-file").addEventListener("change", async (event) => {
  const input = event.target as HTMLInputElement;
  const file = input.files?.[0];
  if (!file) return;
  const bytes = await file.arrayBuffer();
  try {
    const meta = await api.createSession(bytes);
    state.sessionId = meta.id;
    state.seeds = [];
    const img = new Image();
    img.onload = () => {
      drawImageToCanvas(img);
      showView({ kind: "original" });
      renderSeedList();
      toast(`session ${meta.id.slice(0, 8)}: ${meta.width}x${meta.height}, pick seeds (first = background)`);
    };
    img.src = URL.createObjectURL(file);
  } catch (err) {
    toast(`upload failed: ${(err as Error).message}`, true);
  }
});

imageCanvas.addEventListener("mousemove", (event) => {
  const { x, y } = canvasCoords(event);
  renderLoupe(x, y);
});

imageCanvas.addEventListener("click", (event) => {
  if (!pixelSource) return;
  const { x, y } = canvasCoords(event);
  const result = state.addSeed(x, y, samplePixel(pixelSource, x, y));
  if (!result.ok) {
    toast(
      result.reason === "duplicate-color"
        ? "palette colors must be distinct; pick a different pixel"
        : "click landed outside the image",
      true
    );
    return;
  }
  renderSeedList();
  toast(
    result.seed.isBackground
      ? "Cluster 1 (background) picked"
      : `Cluster ${state.seeds.length} picked at (${x}, ${y})`
  );
});

$<HTMLButtonElement>("run-pipeline").addEventListener("click", async () => {
  if (!state.sessionId || !state.canRunPipeline()) return;
  toast("running pipeline…");
  try {
    await api.runPipeline(state.sessionId, {
      palette: state.paletteDraft(),
      iso_level_fraction: state.appliedIsoFraction,
    });
    const stats = await api.getStats(state.sessionId);
    renderStatsPanel(stats);
    renderClusterToggles(stats);
    showView({ kind: "segmented" });
    state.view = { kind: "segmented" };
    await refreshMeshes();
    toast("pipeline complete");
  } catch (err) {
    const detail = err instanceof ApiError ? `${err.status}: ${err.message}` : String(err);
    toast(`pipeline failed — ${detail}`, true);
  }
});

for (const [id, view] of [
  ["view-original", { kind: "original" }],
  ["view-segmented", { kind: "segmented" }],
] as const) {
  $<HTMLButtonElement>(id).addEventListener("click", () => {
    state.view = view;
    showView(view);
  });
}

const isoSlider = $<HTMLInputElement>("iso-slider");
isoSlider.addEventListener("input", () => {
  state.isoFraction = Number(isoSlider.value) / 100;
  $<HTMLSpanElement>("iso-value").textContent = `${isoSlider.value}%`;
});
$<HTMLButtonElement>("iso-apply").addEventListener("click", async () => {
  // applying re-runs the pipeline at the new level; slider moves alone
  // never mutate persisted artifacts
  state.applyIsoFraction();
  $<HTMLButtonElement>("run-pipeline").click();
});

let dragging = false;
let last = { x: 0, y: 0 };
sceneCanvas.addEventListener("mousedown", (e) => {
  dragging = true;
  last = { x: e.clientX, y: e.clientY };
});
window.addEventListener("mouseup", () => (dragging = false));
window.addEventListener("mousemove", (e) => {
  if (!dragging) return;
  state.camera.yaw += (e.clientX - last.x) * 0.01;
  state.camera.pitch += (e.clientY - last.y) * 0.01;
  last = { x: e.clientX, y: e.clientY };
  redrawScene();
});
sceneCanvas.addEventListener("wheel", (e) => {
  e.preventDefault();
  state.camera.zoom = Math.max(0.2, Math.min(4, state.camera.zoom * (e.deltaY < 0 ? 1.1 : 0.9)));
  redrawScene();
});

redrawScene();
toast("upload a PNG/JPEG to start");
