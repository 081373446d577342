/**
 * Wire protocol types and codecs for the lens engine session.
 *
 * One JSON document per WebSocket message. Commands are objects with a
 * "cmd" discriminator; events are {"type": "frame" | "warning" | "error",
 * "payload": {...}}. Frame payloads carry {"scene": ...} except for SVG
 * export which carries {"svg": ...}.
 */

export type Metric = "euclidean" | "cosine" | "pearson";
export type GuideModeName = "off" | "equidistant" | "per-node" | "dynamic";
export type EdgeFilterName = "off" | "incident" | "interior";
export type NodeRole = "focus" | "in-lens" | "pushed" | "context";

export interface SceneNode {
  id: string;
  x: number;
  y: number;
  sizeScalar: number;
  role: NodeRole;
  similarityScalar?: number;
}

export interface SceneEdge {
  source: string;
  target: string;
  widthScalar: number;
  visible: boolean;
}

export interface SceneLens {
  center: [number, number];
  R: number;
  guideRadii: number[];
  focusId: string;
}

export interface SceneSnapshot {
  frame: number;
  nodes: SceneNode[];
  edges: SceneEdge[];
  colormaps: Record<string, string>;
  transitionSettled: boolean;
  lens?: SceneLens;
}

export interface Command {
  cmd: string;
  [arg: string]: unknown;
}

export interface LayoutParams {
  idealEdgeLength?: number;
  repulsionStrength?: number;
  coolingSteps?: number;
  seed?: number;
}

export type EngineEvent =
  | { type: "frame"; payload: { scene: SceneSnapshot } | { svg: string } }
  | { type: "warning"; payload: { message: string } }
  | { type: "error"; payload: { message: string } };

// ── Command builders ────────────────────────────────────────────────

export const loadUsecase = (seed: number): Command => ({
  cmd: "LoadGraph",
  usecaseSeed: seed,
});

export const loadGraph = (graph: unknown): Command => ({
  cmd: "LoadGraph",
  graph,
});

export const runBaseLayout = (params?: LayoutParams): Command =>
  params && Object.keys(params).length > 0
    ? { cmd: "RunBaseLayout", params }
    : { cmd: "RunBaseLayout" };

export const activateLens = (
  center: [number, number],
  radius: number,
): Command => ({ cmd: "ActivateLens", center, radius });

export const deactivateLens = (): Command => ({ cmd: "DeactivateLens" });

export const moveLens = (center: [number, number]): Command => ({
  cmd: "MoveLens",
  center,
});

export const resizeLens = (radius: number): Command => ({
  cmd: "ResizeLens",
  radius,
});

export const selectFocus = (id: string): Command => ({
  cmd: "SelectFocus",
  id,
});

export const setAttributes = (names: string[]): Command => ({
  cmd: "SetAttributes",
  names,
});

export const setMetric = (metric: Metric): Command => ({
  cmd: "SetMetric",
  metric,
});

export const setThreshold = (t: number): Command => ({
  cmd: "SetThreshold",
  t,
});

export const setGuideMode = (
  mode: GuideModeName,
  opts?: { k?: number; cursor?: [number, number]; snap?: boolean },
): Command => ({ cmd: "SetGuideMode", mode, ...opts });

export const setEdgeFilter = (mode: EdgeFilterName): Command => ({
  cmd: "SetEdgeFilter",
  mode,
});

export const setCursor = (x: number, y: number): Command => ({
  cmd: "SetCursor",
  x,
  y,
});

export const tick = (n = 1): Command => ({ cmd: "Tick", n });

export const exportScene = (): Command => ({ cmd: "ExportScene" });

// ── Codecs ──────────────────────────────────────────────────────────

export function encodeCommand(command: Command): string {
  return JSON.stringify(command);
}

/** Parse one event document; throws on anything off-protocol. */
export function decodeEvent(text: string): EngineEvent {
  let doc: unknown;
  try {
    doc = JSON.parse(text);
  } catch {
    throw new Error(`malformed event json: ${text.slice(0, 80)}`);
  }
  if (typeof doc !== "object" || doc === null || Array.isArray(doc)) {
    throw new Error("event must be an object");
  }
  const ev = doc as Record<string, unknown>;
  if (ev.type !== "frame" && ev.type !== "warning" && ev.type !== "error") {
    throw new Error(`unknown event type ${String(ev.type)}`);
  }
  if (typeof ev.payload !== "object" || ev.payload === null) {
    throw new Error("event payload must be an object");
  }
  return doc as EngineEvent;
}

export function isSceneFrame(
  event: EngineEvent,
): event is { type: "frame"; payload: { scene: SceneSnapshot } } {
  return event.type === "frame" && "scene" in event.payload;
}
