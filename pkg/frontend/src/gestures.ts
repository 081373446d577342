/**
 * Pointer gestures mapped to protocol commands.
 *
 * Dragging the lens body enqueues MoveLens, dragging its border enqueues
 * ResizeLens, a click on a node enqueues SelectFocus, and cursor motion
 * enqueues SetCursor while dynamic guides are on. Continuous commands go
 * through the pending queue, which the frame loop throttles to one per
 * animation frame. Dragging empty space pans the view; the wheel zooms.
 */

import { moveLens, resizeLens, selectFocus, setCursor } from "./protocol.js";
import type { ViewState } from "./view.js";
import { lensZoneAt, nodeAt, panBy, screenToWorld, zoomAt } from "./view.js";

export interface GestureOptions {
  /** Pointer travel in px below which a press still counts as a click. */
  clickSlopPx: number;
  /** Half-width of the grabbable band around the lens ring, in px. */
  borderTolPx: number;
  /** Smallest radius a border drag may request, in world units. */
  minLensRadius: number;
  /** Whether the dynamic guide mode is active (cursor motion matters). */
  dynamicGuides: boolean;
}

export const DEFAULT_GESTURES: GestureOptions = {
  clickSlopPx: 4,
  borderTolPx: 8,
  minLensRadius: 10,
  dynamicGuides: false,
};

export function pointerDown(
  view: ViewState,
  sx: number,
  sy: number,
  opts: GestureOptions = DEFAULT_GESTURES,
): void {
  const t = view.transform;
  const [wx, wy] = screenToWorld(t, sx, sy);
  const base = {
    startX: sx,
    startY: sy,
    moved: false,
    grabDx: 0,
    grabDy: 0,
    startTransform: { ...t },
  };
  const snapshot = view.snapshot;
  if (snapshot?.lens) {
    const zone = lensZoneAt(snapshot, wx, wy, opts.borderTolPx / t.scale);
    if (zone === "border") {
      view.drag = { ...base, mode: "lens-resize" };
      return;
    }
    if (zone === "inside") {
      view.drag = {
        ...base,
        mode: "lens-move",
        grabDx: snapshot.lens.center[0] - wx,
        grabDy: snapshot.lens.center[1] - wy,
      };
      return;
    }
  }
  view.drag = { ...base, mode: "pan" };
}

export function pointerMove(
  view: ViewState,
  sx: number,
  sy: number,
  opts: GestureOptions = DEFAULT_GESTURES,
): void {
  const drag = view.drag;
  const snapshot = view.snapshot;
  if (!drag) {
    const [wx, wy] = screenToWorld(view.transform, sx, sy);
    if (snapshot) {
      const hit = nodeAt(snapshot, wx, wy, 3 / view.transform.scale);
      view.hoverNode = hit ? hit.id : null;
      if (opts.dynamicGuides && snapshot.lens) {
        view.pending.push(setCursor(wx, wy));
      }
    }
    return;
  }

  if (!drag.moved) {
    const travel = Math.hypot(sx - drag.startX, sy - drag.startY);
    if (travel <= opts.clickSlopPx) return;
    drag.moved = true;
  }

  if (drag.mode === "pan") {
    view.transform = panBy(
      drag.startTransform,
      sx - drag.startX,
      sy - drag.startY,
    );
    return;
  }

  if (!snapshot?.lens) return;
  const [wx, wy] = screenToWorld(view.transform, sx, sy);
  if (drag.mode === "lens-move") {
    view.pending.push(moveLens([wx + drag.grabDx, wy + drag.grabDy]));
  } else {
    const lens = snapshot.lens;
    const r = Math.hypot(wx - lens.center[0], wy - lens.center[1]);
    view.pending.push(resizeLens(Math.max(opts.minLensRadius, r)));
  }
}

export function pointerUp(
  view: ViewState,
  sx: number,
  sy: number,
  opts: GestureOptions = DEFAULT_GESTURES,
): void {
  const drag = view.drag;
  view.drag = null;
  if (!drag || drag.moved) return;
  const snapshot = view.snapshot;
  if (!snapshot?.lens) return;
  const [wx, wy] = screenToWorld(view.transform, sx, sy);
  const hit = nodeAt(snapshot, wx, wy, 3 / view.transform.scale);
  if (hit) view.pending.push(selectFocus(hit.id));
}

export function wheelZoom(
  view: ViewState,
  sx: number,
  sy: number,
  deltaY: number,
): void {
  const factor = Math.pow(1.0015, -deltaY);
  view.transform = zoomAt(view.transform, sx, sy, factor);
}
