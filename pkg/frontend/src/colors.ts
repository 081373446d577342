/**
 * Visual constants shared with the engine's SVG exporter.
 *
 * The canvas renderer and the exported figures must look the same, so the
 * colormap endpoints, node sizing, and stroke rules here mirror the export
 * styling exactly.
 */

import type { SceneNode } from "./protocol.js";

type Rgb = [number, number, number];

// blues encode degree on context nodes, greens encode similarity in the lens
export const BLUES: [Rgb, Rgb] = [
  [0xde, 0xeb, 0xf7],
  [0x08, 0x51, 0x9c],
];
export const GREENS: [Rgb, Rgb] = [
  [0xe5, 0xf5, 0xe0],
  [0x00, 0x6d, 0x2c],
];

export const EDGE_COLOR = "#b3b3b3";
export const EDGE_ALPHA = 0.6;
export const GUIDE_COLOR = "#8c8c8c";
export const GUIDE_WIDTH = 0.75;
export const GUIDE_DASH: [number, number] = [4, 3];
export const RING_COLOR = "#333333";
export const RING_WIDTH = 1.5;
export const FOCUS_OUTLINE = "#000000";
export const FOCUS_OUTLINE_WIDTH = 1.5;

export function lerpHex(endpoints: [Rgb, Rgb], t: number): string {
  const u = t < 0 ? 0 : t > 1 ? 1 : t;
  const [lo, hi] = endpoints;
  const channel = (i: number) =>
    Math.round(lo[i]! + (hi[i]! - lo[i]!) * u)
      .toString(16)
      .padStart(2, "0");
  return `#${channel(0)}${channel(1)}${channel(2)}`;
}

export function nodeFill(node: SceneNode): string {
  if (node.role === "context") {
    return lerpHex(BLUES, node.sizeScalar);
  }
  return lerpHex(GREENS, node.similarityScalar ?? 0);
}

export function nodeRadius(sizeScalar: number): number {
  return 1.5 + 3.5 * sizeScalar;
}

export function edgeWidth(widthScalar: number): number {
  return 0.5 + 2.5 * widthScalar;
}
