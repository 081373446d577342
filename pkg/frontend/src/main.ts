/**
 * Application entry point: binds the DOM to the view model, the gesture
 * handlers, and the engine socket, and runs the frame loop.
 *
 * The loop each animation frame: flush the throttled pending commands,
 * send one Tick while the engine reports an unsettled transition, then
 * repaint the last received snapshot.
 */

import { EngineClient } from "./client.js";
import {
  canActivateLens,
  changeEdgeFilter,
  changeGuideMode,
  changeMetric,
  changeThreshold,
  groupAttributes,
  initialControls,
  selectedNames,
  toggleAttribute,
} from "./controls.js";
import {
  DEFAULT_GESTURES,
  pointerDown,
  pointerMove,
  pointerUp,
  wheelZoom,
} from "./gestures.js";
import type {
  Command,
  EdgeFilterName,
  GuideModeName,
  Metric,
} from "./protocol.js";
import {
  activateLens,
  deactivateLens,
  isSceneFrame,
  loadUsecase,
  runBaseLayout,
  setAttributes,
  setMetric,
  setThreshold,
} from "./protocol.js";
import { buildDrawList, paint } from "./render.js";
import {
  fitTransform,
  flushPending,
  initialView,
  screenToWorld,
  tickCommands,
} from "./view.js";

const $ = <T extends HTMLElement>(id: string): T => {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el as T;
};

const canvas = $<HTMLCanvasElement>("scene");
const ctx = canvas.getContext("2d")!;
const statusEl = $<HTMLDivElement>("status");
const logEl = $<HTMLUListElement>("log");
const attrsEl = $<HTMLDivElement>("attrs");
const activateBtn = $<HTMLButtonElement>("activate");
const deactivateBtn = $<HTMLButtonElement>("deactivate");
const guideKInput = $<HTMLInputElement>("guide-k");

const view = initialView();
const controls = initialControls();
const gestureOpts = { ...DEFAULT_GESTURES };
let fitOnNextFrame = true;

const client = new EngineClient(
  `${location.protocol === "https:" ? "wss" : "ws"}://${location.host}/ws`,
);

function log(kind: "info" | "warning" | "error", message: string): void {
  const li = document.createElement("li");
  if (kind !== "info") li.className = kind;
  li.textContent = message;
  logEl.prepend(li);
  while (logEl.children.length > 40) logEl.lastChild?.remove();
}

function send(command: Command): void {
  if (!client.send(command)) log("error", "not connected");
}

function syncLensButtons(): void {
  const lensed = view.snapshot?.lens !== undefined;
  activateBtn.disabled = lensed || !canActivateLens(controls);
  deactivateBtn.disabled = !lensed;
}

// ── Graph loading ───────────────────────────────────────────────────

async function loadGraph(): Promise<void> {
  const graphSeed = Number($<HTMLInputElement>("graph-seed").value) || 1;
  const layoutSeed = Number($<HTMLInputElement>("layout-seed").value) || 0;
  send(loadUsecase(graphSeed));
  send(runBaseLayout({ seed: layoutSeed }));
  fitOnNextFrame = true;

  try {
    const res = await fetch(`/usecase.json?seed=${graphSeed}`);
    const doc = (await res.json()) as { schema: string[] };
    controls.schema = doc.schema;
    controls.selected.clear();
    renderAttributePicker();
  } catch {
    log("error", "could not fetch the graph schema");
  }
  syncLensButtons();
}

function renderAttributePicker(): void {
  attrsEl.textContent = "";
  for (const group of groupAttributes(controls.schema)) {
    const div = document.createElement("div");
    div.className = "group";
    const title = document.createElement("div");
    title.className = "group-label";
    title.textContent = group.label;
    div.appendChild(title);
    for (const name of group.names) {
      const label = document.createElement("label");
      const box = document.createElement("input");
      box.type = "checkbox";
      box.checked = controls.selected.has(name);
      box.addEventListener("change", () => {
        const command = toggleAttribute(controls, name);
        if (command) {
          send(command);
        } else if (view.snapshot?.lens) {
          send(deactivateLens());
        }
        syncLensButtons();
      });
      label.append(box, document.createTextNode(name.replace(/_/g, " ")));
      div.appendChild(label);
    }
    attrsEl.appendChild(div);
  }
}

// ── Control bindings ────────────────────────────────────────────────

$<HTMLButtonElement>("load").addEventListener("click", () => {
  void loadGraph();
});

activateBtn.addEventListener("click", () => {
  const rect = canvas.getBoundingClientRect();
  const [wx, wy] = screenToWorld(
    view.transform,
    rect.width / 2,
    rect.height / 2,
  );
  const radius = 160 / view.transform.scale;
  send(activateLens([wx, wy], radius));
});

deactivateBtn.addEventListener("click", () => {
  send(deactivateLens());
});

$<HTMLSelectElement>("metric").addEventListener("change", (ev) => {
  const metric = (ev.target as HTMLSelectElement).value as Metric;
  send(changeMetric(controls, metric));
});

const thresholdValue = $<HTMLSpanElement>("threshold-value");
$<HTMLInputElement>("threshold").addEventListener("input", (ev) => {
  const t = Number((ev.target as HTMLInputElement).value);
  thresholdValue.textContent = t.toFixed(2);
  send(changeThreshold(controls, t));
});

$<HTMLSelectElement>("guide-mode").addEventListener("change", (ev) => {
  const mode = (ev.target as HTMLSelectElement).value as GuideModeName;
  guideKInput.disabled = mode !== "equidistant";
  gestureOpts.dynamicGuides = mode === "dynamic";
  send(changeGuideMode(controls, mode, Number(guideKInput.value) || 4));
});

guideKInput.addEventListener("change", () => {
  if (controls.guideMode === "equidistant") {
    send(changeGuideMode(controls, "equidistant", Number(guideKInput.value) || 4));
  }
});

$<HTMLSelectElement>("edge-filter").addEventListener("change", (ev) => {
  const mode = (ev.target as HTMLSelectElement).value as EdgeFilterName;
  send(changeEdgeFilter(controls, mode));
});

// ── Canvas gestures ─────────────────────────────────────────────────

canvas.addEventListener("pointerdown", (ev) => {
  canvas.setPointerCapture(ev.pointerId);
  pointerDown(view, ev.offsetX, ev.offsetY, gestureOpts);
});
canvas.addEventListener("pointermove", (ev) => {
  pointerMove(view, ev.offsetX, ev.offsetY, gestureOpts);
});
canvas.addEventListener("pointerup", (ev) => {
  pointerUp(view, ev.offsetX, ev.offsetY, gestureOpts);
});
canvas.addEventListener("wheel", (ev) => {
  ev.preventDefault();
  wheelZoom(view, ev.offsetX, ev.offsetY, ev.deltaY);
});

// ── Engine events ───────────────────────────────────────────────────

client.onStatus = (connected) => {
  statusEl.className = connected ? "connected" : "disconnected";
  statusEl.textContent = connected ? "connected" : "disconnected";
  if (connected) {
    void loadGraph();
    const names = selectedNames(controls);
    if (names.length > 0) {
      send(setAttributes(names));
      send(setMetric(controls.metric));
      send(setThreshold(controls.threshold));
    }
  }
};

client.onEvent = (event) => {
  if (event.type === "frame") {
    if (isSceneFrame(event)) {
      view.snapshot = event.payload.scene;
      if (fitOnNextFrame) {
        const rect = canvas.getBoundingClientRect();
        view.transform = fitTransform(view.snapshot, rect.width, rect.height);
        fitOnNextFrame = false;
      }
      syncLensButtons();
    }
    return;
  }
  log(event.type, event.payload.message);
};

// ── Frame loop ──────────────────────────────────────────────────────

function resizeCanvas(): void {
  const rect = canvas.getBoundingClientRect();
  const dpr = window.devicePixelRatio || 1;
  canvas.width = Math.round(rect.width * dpr);
  canvas.height = Math.round(rect.height * dpr);
  ctx.setTransform(dpr, 0, 0, dpr, 0, 0);
}

window.addEventListener("resize", resizeCanvas);
resizeCanvas();

function frame(): void {
  if (client.connected) {
    for (const command of flushPending(view)) send(command);
    for (const command of tickCommands(view)) send(command);
  }
  const rect = canvas.getBoundingClientRect();
  ctx.clearRect(0, 0, rect.width, rect.height);
  if (view.snapshot) {
    paint(ctx, buildDrawList(view.snapshot), view.transform, view.hoverNode);
  }
  requestAnimationFrame(frame);
}

client.connect();
requestAnimationFrame(frame);
