import { describe, expect, it } from "vitest";

import {
  DEFAULT_GESTURES,
  pointerDown,
  pointerMove,
  pointerUp,
  wheelZoom,
} from "../src/gestures.js";
import type { GestureOptions } from "../src/gestures.js";
import { flushPending, initialView } from "../src/view.js";
import type { ViewState } from "../src/view.js";
import { goldenScenes, loadGoldenStream, makeSnapshot } from "./helpers.js";

function lensedView(): ViewState {
  const view = initialView();
  view.snapshot = makeSnapshot();
  return view;
}

const opts: GestureOptions = { ...DEFAULT_GESTURES };

describe("lens drag", () => {
  it("dragging the body by (dx,dy) emits MoveLens(center+(dx,dy))", () => {
    const view = lensedView();
    pointerDown(view, 10, 5, opts);
    expect(view.drag?.mode).toBe("lens-move");
    pointerMove(view, 30, -15, opts);
    expect(flushPending(view)).toEqual([
      { cmd: "MoveLens", center: [20, -20] },
    ]);
  });

  it("a continuous drag is throttled to the latest center per flush", () => {
    const view = lensedView();
    pointerDown(view, 0, 0, opts);
    for (let i = 1; i <= 10; i++) pointerMove(view, i * 6, 0, opts);
    const out = flushPending(view);
    expect(out).toHaveLength(1);
    expect(out[0]).toEqual({ cmd: "MoveLens", center: [60, 0] });
    expect(view.pending).toHaveLength(0);
  });

  it("travel inside the click slop emits nothing", () => {
    const view = lensedView();
    pointerDown(view, 10, 5, opts);
    pointerMove(view, 12, 6, opts);
    expect(view.pending).toEqual([]);
  });
});

describe("lens resize", () => {
  it("dragging the border emits ResizeLens with the new radius", () => {
    const view = lensedView();
    pointerDown(view, 79, 0, opts);
    expect(view.drag?.mode).toBe("lens-resize");
    pointerMove(view, 120, 0, opts);
    expect(flushPending(view)).toEqual([{ cmd: "ResizeLens", radius: 120 }]);
  });

  it("never requests a radius below the minimum", () => {
    const view = lensedView();
    pointerDown(view, 80, 0, opts);
    pointerMove(view, 2, 0, opts);
    const out = flushPending(view);
    expect(out).toEqual([{ cmd: "ResizeLens", radius: opts.minLensRadius }]);
  });
});

describe("focus selection", () => {
  it("a click on a node emits SelectFocus with its id", () => {
    const view = lensedView();
    pointerDown(view, 1, 1, opts);
    pointerUp(view, 1, 1, opts);
    expect(flushPending(view)).toEqual([{ cmd: "SelectFocus", id: "a" }]);
  });

  it("selects nodes outside the lens too", () => {
    const view = lensedView();
    pointerDown(view, 200, 200, opts);
    pointerUp(view, 200, 200, opts);
    expect(flushPending(view)).toEqual([{ cmd: "SelectFocus", id: "d" }]);
  });

  it("a click on empty space emits nothing", () => {
    const view = lensedView();
    pointerDown(view, 150, 0, opts);
    pointerUp(view, 150, 0, opts);
    expect(flushPending(view)).toEqual([]);
  });

  it("a completed drag never doubles as a click", () => {
    const view = lensedView();
    pointerDown(view, 1, 1, opts);
    pointerMove(view, 50, 50, opts);
    pointerUp(view, 50, 50, opts);
    const out = flushPending(view);
    expect(out.every((c) => c.cmd === "MoveLens")).toBe(true);
  });

  it("without a lens a node click stays local", () => {
    const view = initialView();
    view.snapshot = makeSnapshot({ lens: undefined });
    pointerDown(view, 1, 1, opts);
    pointerUp(view, 1, 1, opts);
    expect(flushPending(view)).toEqual([]);
  });
});

describe("pan and zoom", () => {
  it("dragging empty space pans the transform and sends nothing", () => {
    const view = lensedView();
    pointerDown(view, 300, 300, opts);
    expect(view.drag?.mode).toBe("pan");
    pointerMove(view, 340, 280, opts);
    expect(view.transform).toEqual({ scale: 1, tx: 40, ty: -20 });
    expect(flushPending(view)).toEqual([]);
  });

  it("wheel zoom keeps the pointer position anchored", () => {
    const view = lensedView();
    wheelZoom(view, 100, 50, -400);
    expect(view.transform.scale).toBeGreaterThan(1);
    const t = view.transform;
    expect((100 - t.tx) / t.scale).toBeCloseTo(100, 9);
    expect((50 - t.ty) / t.scale).toBeCloseTo(50, 9);
  });
});

describe("cursor tracking", () => {
  it("hover with dynamic guides enqueues SetCursor in world coords", () => {
    const view = lensedView();
    view.transform = { scale: 2, tx: 10, ty: 10 };
    pointerMove(view, 30, 50, { ...opts, dynamicGuides: true });
    expect(flushPending(view)).toEqual([{ cmd: "SetCursor", x: 10, y: 20 }]);
  });

  it("hover without dynamic guides only updates the hover node", () => {
    const view = lensedView();
    pointerMove(view, 1, 1, opts);
    expect(view.pending).toEqual([]);
    expect(view.hoverNode).toBe("a");
    pointerMove(view, 150, 0, opts);
    expect(view.hoverNode).toBeNull();
  });
});

describe("golden drag conformance", () => {
  const lines = loadGoldenStream();
  const scenes = goldenScenes(lines);

  it("the rendered focus follows the node nearest each commanded center", () => {
    const base = scenes[0]!;
    expect(base.lens).toBeUndefined();
    const nearest = (cx: number, cy: number): string => {
      let bestId = "";
      let best = Infinity;
      for (const node of base.nodes) {
        const d = Math.hypot(node.x - cx, node.y - cy);
        if (d < best || (d === best && node.id < bestId)) {
          best = d;
          bestId = node.id;
        }
      }
      return bestId;
    };

    let checked = 0;
    for (let i = 0; i < lines.length; i++) {
      const sent = lines[i]!.sent;
      if (!sent || sent.cmd !== "MoveLens") continue;
      const [cx, cy] = sent.center as [number, number];
      for (let j = i + 1; j < lines.length && !lines[j]!.sent; j++) {
        const event = lines[j]!.event;
        if (event && event.type === "frame" && "scene" in event.payload) {
          expect(event.payload.scene.lens?.focusId).toBe(nearest(cx, cy));
          checked += 1;
          break;
        }
      }
    }
    expect(checked).toBe(3);
  });

  it("clicking the use-case goalkeeper emits SelectFocus for it", () => {
    const lensed = scenes.find((s) => s.lens)!;
    const keeper = lensed.nodes.find((n) => n.id === "p07")!;
    const view = initialView();
    view.snapshot = lensed;
    pointerDown(view, keeper.x, keeper.y, opts);
    pointerUp(view, keeper.x, keeper.y, opts);
    expect(flushPending(view)).toEqual([{ cmd: "SelectFocus", id: "p07" }]);
  });
});
