/**
 * Scene rendering: a pure draw-list builder plus a canvas painter.
 *
 * The draw list preserves the layering of the exported figures: edges at
 * the bottom, then radial guides, the lens ring, and nodes on top. Hidden
 * edges never produce a draw op. Tests count and inspect draw ops without
 * a canvas.
 */

import type { SceneSnapshot } from "./protocol.js";
import {
  EDGE_ALPHA,
  EDGE_COLOR,
  FOCUS_OUTLINE,
  FOCUS_OUTLINE_WIDTH,
  GUIDE_COLOR,
  GUIDE_DASH,
  GUIDE_WIDTH,
  RING_COLOR,
  RING_WIDTH,
  edgeWidth,
  nodeFill,
  nodeRadius,
} from "./colors.js";
import type { Transform } from "./view.js";
import { worldToScreen } from "./view.js";

export type DrawOp =
  | { kind: "edge"; x1: number; y1: number; x2: number; y2: number; width: number }
  | { kind: "guide"; cx: number; cy: number; r: number }
  | { kind: "ring"; cx: number; cy: number; r: number }
  | {
      kind: "node";
      id: string;
      cx: number;
      cy: number;
      r: number;
      fill: string;
      outlined: boolean;
    };

export function buildDrawList(snapshot: SceneSnapshot): DrawOp[] {
  const ops: DrawOp[] = [];
  const pos = new Map<string, [number, number]>();
  for (const node of snapshot.nodes) pos.set(node.id, [node.x, node.y]);

  for (const edge of snapshot.edges) {
    if (!edge.visible) continue;
    const a = pos.get(edge.source);
    const b = pos.get(edge.target);
    if (!a || !b) continue;
    ops.push({
      kind: "edge",
      x1: a[0],
      y1: a[1],
      x2: b[0],
      y2: b[1],
      width: edgeWidth(edge.widthScalar),
    });
  }

  const lens = snapshot.lens;
  if (lens) {
    const [cx, cy] = lens.center;
    for (const r of lens.guideRadii) {
      ops.push({ kind: "guide", cx, cy, r });
    }
    ops.push({ kind: "ring", cx, cy, r: lens.R });
  }

  const focusId = lens?.focusId ?? null;
  for (const node of snapshot.nodes) {
    ops.push({
      kind: "node",
      id: node.id,
      cx: node.x,
      cy: node.y,
      r: nodeRadius(node.sizeScalar),
      fill: nodeFill(node),
      outlined: node.id === focusId,
    });
  }
  return ops;
}

export interface ElementCounts {
  nodes: number;
  edges: number;
  guides: number;
  rings: number;
}

export function countElements(ops: DrawOp[]): ElementCounts {
  const counts: ElementCounts = { nodes: 0, edges: 0, guides: 0, rings: 0 };
  for (const op of ops) {
    if (op.kind === "node") counts.nodes += 1;
    else if (op.kind === "edge") counts.edges += 1;
    else if (op.kind === "guide") counts.guides += 1;
    else counts.rings += 1;
  }
  return counts;
}

export function paint(
  ctx: CanvasRenderingContext2D,
  ops: DrawOp[],
  t: Transform,
  hoverNode: string | null = null,
): void {
  for (const op of ops) {
    switch (op.kind) {
      case "edge": {
        const [x1, y1] = worldToScreen(t, op.x1, op.y1);
        const [x2, y2] = worldToScreen(t, op.x2, op.y2);
        ctx.globalAlpha = EDGE_ALPHA;
        ctx.strokeStyle = EDGE_COLOR;
        ctx.lineWidth = op.width * t.scale;
        ctx.setLineDash([]);
        ctx.beginPath();
        ctx.moveTo(x1, y1);
        ctx.lineTo(x2, y2);
        ctx.stroke();
        ctx.globalAlpha = 1;
        break;
      }
      case "guide": {
        const [cx, cy] = worldToScreen(t, op.cx, op.cy);
        ctx.strokeStyle = GUIDE_COLOR;
        ctx.lineWidth = GUIDE_WIDTH * t.scale;
        ctx.setLineDash([GUIDE_DASH[0] * t.scale, GUIDE_DASH[1] * t.scale]);
        ctx.beginPath();
        ctx.arc(cx, cy, op.r * t.scale, 0, 2 * Math.PI);
        ctx.stroke();
        ctx.setLineDash([]);
        break;
      }
      case "ring": {
        const [cx, cy] = worldToScreen(t, op.cx, op.cy);
        ctx.strokeStyle = RING_COLOR;
        ctx.lineWidth = RING_WIDTH * t.scale;
        ctx.setLineDash([]);
        ctx.beginPath();
        ctx.arc(cx, cy, op.r * t.scale, 0, 2 * Math.PI);
        ctx.stroke();
        break;
      }
      case "node": {
        const [cx, cy] = worldToScreen(t, op.cx, op.cy);
        ctx.fillStyle = op.fill;
        ctx.setLineDash([]);
        ctx.beginPath();
        ctx.arc(cx, cy, op.r * t.scale, 0, 2 * Math.PI);
        ctx.fill();
        if (op.outlined) {
          ctx.strokeStyle = FOCUS_OUTLINE;
          ctx.lineWidth = FOCUS_OUTLINE_WIDTH * t.scale;
          ctx.stroke();
        } else if (op.id === hoverNode) {
          ctx.strokeStyle = "#666666";
          ctx.lineWidth = 1 * t.scale;
          ctx.stroke();
        }
        break;
      }
    }
  }
}
