/**
 * View state: pan/zoom transform, hover and drag tracking, the pending
 * command queue, and the last received snapshot.
 *
 * The view never computes similarity or layout; it only maps between
 * screen and world coordinates and renders what the engine sent.
 */

import type { Command, SceneNode, SceneSnapshot } from "./protocol.js";
import { nodeRadius } from "./colors.js";
import { tick } from "./protocol.js";

/** screen = world * scale + (tx, ty) */
export interface Transform {
  scale: number;
  tx: number;
  ty: number;
}

export type DragMode = "lens-move" | "lens-resize" | "pan";

export interface DragState {
  mode: DragMode;
  /** Screen point where the pointer went down. */
  startX: number;
  startY: number;
  /** True once the pointer left the click slop; a click never fires then. */
  moved: boolean;
  /** lens-move: world offset from grab point to lens center. */
  grabDx: number;
  grabDy: number;
  /** pan: transform at drag start. */
  startTransform: Transform;
}

export interface ViewState {
  transform: Transform;
  hoverNode: string | null;
  drag: DragState | null;
  pending: Command[];
  snapshot: SceneSnapshot | null;
}

export function initialView(): ViewState {
  return {
    transform: { scale: 1, tx: 0, ty: 0 },
    hoverNode: null,
    drag: null,
    pending: [],
    snapshot: null,
  };
}

// ── Coordinate mapping ──────────────────────────────────────────────

export function worldToScreen(
  t: Transform,
  x: number,
  y: number,
): [number, number] {
  return [x * t.scale + t.tx, y * t.scale + t.ty];
}

export function screenToWorld(
  t: Transform,
  x: number,
  y: number,
): [number, number] {
  return [(x - t.tx) / t.scale, (y - t.ty) / t.scale];
}

export function panBy(t: Transform, dx: number, dy: number): Transform {
  return { scale: t.scale, tx: t.tx + dx, ty: t.ty + dy };
}

/** Zoom by a factor keeping the given screen point fixed. */
export function zoomAt(
  t: Transform,
  sx: number,
  sy: number,
  factor: number,
): Transform {
  const scale = Math.min(40, Math.max(0.025, t.scale * factor));
  const applied = scale / t.scale;
  return {
    scale,
    tx: sx - (sx - t.tx) * applied,
    ty: sy - (sy - t.ty) * applied,
  };
}

/** Transform that centers the snapshot's bounding box in the viewport. */
export function fitTransform(
  snapshot: SceneSnapshot,
  width: number,
  height: number,
  padding = 30,
): Transform {
  if (snapshot.nodes.length === 0) {
    return { scale: 1, tx: width / 2, ty: height / 2 };
  }
  let minX = Infinity;
  let maxX = -Infinity;
  let minY = Infinity;
  let maxY = -Infinity;
  for (const node of snapshot.nodes) {
    if (node.x < minX) minX = node.x;
    if (node.x > maxX) maxX = node.x;
    if (node.y < minY) minY = node.y;
    if (node.y > maxY) maxY = node.y;
  }
  const spanX = Math.max(maxX - minX, 1e-6);
  const spanY = Math.max(maxY - minY, 1e-6);
  const scale = Math.min(
    (width - 2 * padding) / spanX,
    (height - 2 * padding) / spanY,
  );
  return {
    scale,
    tx: width / 2 - ((minX + maxX) / 2) * scale,
    ty: height / 2 - ((minY + maxY) / 2) * scale,
  };
}

// ── Hit testing ─────────────────────────────────────────────────────

/** Nearest node whose disc (plus tolerance) covers the world point. */
export function nodeAt(
  snapshot: SceneSnapshot,
  wx: number,
  wy: number,
  tolWorld: number,
): SceneNode | null {
  let best: SceneNode | null = null;
  let bestDist = Infinity;
  for (const node of snapshot.nodes) {
    const d = Math.hypot(node.x - wx, node.y - wy);
    if (d <= nodeRadius(node.sizeScalar) + tolWorld && d < bestDist) {
      best = node;
      bestDist = d;
    }
  }
  return best;
}

export type LensZone = "inside" | "border" | "outside";

/** Classify a world point against the lens ring, or null without a lens. */
export function lensZoneAt(
  snapshot: SceneSnapshot,
  wx: number,
  wy: number,
  borderTolWorld: number,
): LensZone | null {
  const lens = snapshot.lens;
  if (!lens) return null;
  const d = Math.hypot(wx - lens.center[0], wy - lens.center[1]);
  if (Math.abs(d - lens.R) <= borderTolWorld) return "border";
  return d < lens.R ? "inside" : "outside";
}

// ── Command queue ───────────────────────────────────────────────────

const THROTTLED = new Set(["MoveLens", "ResizeLens", "SetCursor"]);

/**
 * Drain the pending queue for one animation frame.
 *
 * Continuous gestures may enqueue many MoveLens/ResizeLens/SetCursor
 * commands between frames; only the latest of each survives, capping the
 * rate at one per frame. Everything else is kept in gesture order.
 */
export function flushPending(view: ViewState): Command[] {
  const queue = view.pending;
  if (queue.length === 0) return [];
  const lastIndex = new Map<string, number>();
  queue.forEach((command, i) => {
    if (THROTTLED.has(command.cmd)) lastIndex.set(command.cmd, i);
  });
  const out = queue.filter(
    (command, i) =>
      !THROTTLED.has(command.cmd) || lastIndex.get(command.cmd) === i,
  );
  view.pending = [];
  return out;
}

/** Commands that drive time forward: one Tick while the scene is moving. */
export function tickCommands(view: ViewState): Command[] {
  const snapshot = view.snapshot;
  if (snapshot && !snapshot.transitionSettled) return [tick(1)];
  return [];
}
