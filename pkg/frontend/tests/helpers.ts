import { readFileSync } from "node:fs";

import type {
  Command,
  EngineEvent,
  SceneEdge,
  SceneLens,
  SceneNode,
  SceneSnapshot,
} from "../src/protocol.js";
import { decodeEvent, isSceneFrame } from "../src/protocol.js";

export function makeSnapshot(
  overrides: Partial<SceneSnapshot> = {},
): SceneSnapshot {
  const nodes: SceneNode[] = [
    { id: "a", x: 0, y: 0, sizeScalar: 1, role: "focus", similarityScalar: 1 },
    { id: "b", x: 40, y: 0, sizeScalar: 0.5, role: "in-lens", similarityScalar: 0.7 },
    { id: "c", x: 0, y: 90, sizeScalar: 0.5, role: "pushed", similarityScalar: 0.2 },
    { id: "d", x: 200, y: 200, sizeScalar: 0, role: "context" },
  ];
  const edges: SceneEdge[] = [
    { source: "a", target: "b", widthScalar: 1, visible: true },
    { source: "a", target: "d", widthScalar: 0.5, visible: false },
    { source: "c", target: "d", widthScalar: 0, visible: true },
  ];
  const lens: SceneLens = {
    center: [0, 0],
    R: 80,
    guideRadii: [40, 80],
    focusId: "a",
  };
  return {
    frame: 1,
    nodes,
    edges,
    colormaps: { context: "blues", lens: "greens" },
    transitionSettled: true,
    lens,
    ...overrides,
  };
}

export interface GoldenLine {
  sent?: Command;
  event?: EngineEvent;
}

/** Parse the engine-generated golden stream into sent/event lines. */
export function loadGoldenStream(): GoldenLine[] {
  const raw = readFileSync(
    new URL("./fixtures/golden_stream.jsonl", import.meta.url),
    "utf-8",
  );
  return raw
    .split("\n")
    .filter((line) => line.length > 0)
    .map((line) => {
      const doc = JSON.parse(line) as Record<string, unknown>;
      if ("sent" in doc) return { sent: doc.sent as Command };
      return { event: decodeEvent(line) };
    });
}

export function goldenScenes(lines: GoldenLine[]): SceneSnapshot[] {
  const scenes: SceneSnapshot[] = [];
  for (const line of lines) {
    if (line.event && isSceneFrame(line.event)) {
      scenes.push(line.event.payload.scene);
    }
  }
  return scenes;
}
