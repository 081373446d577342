import { describe, expect, it } from "vitest";

import { buildDrawList, countElements, paint } from "../src/render.js";
import type { DrawOp } from "../src/render.js";
import { goldenScenes, loadGoldenStream, makeSnapshot } from "./helpers.js";

const KIND_LAYER: Record<DrawOp["kind"], number> = {
  edge: 0,
  guide: 1,
  ring: 2,
  node: 3,
};

describe("draw list construction", () => {
  it("a snapshot without a lens renders plainly", () => {
    const ops = buildDrawList(makeSnapshot({ lens: undefined }));
    const counts = countElements(ops);
    expect(counts.guides).toBe(0);
    expect(counts.rings).toBe(0);
    expect(counts.nodes).toBe(4);
    expect(ops.filter((op) => op.kind === "node" && op.outlined)).toHaveLength(0);
  });

  it("hidden edges never draw", () => {
    const ops = buildDrawList(makeSnapshot());
    expect(countElements(ops).edges).toBe(2);
  });

  it("four guide radii draw four guide circles", () => {
    const snapshot = makeSnapshot();
    snapshot.lens!.guideRadii = [20, 40, 60, 80];
    expect(countElements(buildDrawList(snapshot)).guides).toBe(4);
  });

  it("the focus node is outlined exactly once", () => {
    const ops = buildDrawList(makeSnapshot());
    const outlined = ops.filter((op) => op.kind === "node" && op.outlined);
    expect(outlined).toHaveLength(1);
    expect((outlined[0] as Extract<DrawOp, { kind: "node" }>).id).toBe("a");
  });
});

describe("golden stream conformance", () => {
  const scenes = goldenScenes(loadGoldenStream());

  it("covers both plain and lensed frames", () => {
    expect(scenes.length).toBeGreaterThanOrEqual(10);
    expect(scenes.some((s) => !s.lens)).toBe(true);
    expect(scenes.some((s) => s.lens)).toBe(true);
  });

  it("rendered element counts match every snapshot exactly", () => {
    for (const scene of scenes) {
      const counts = countElements(buildDrawList(scene));
      expect(counts.nodes).toBe(scene.nodes.length);
      expect(counts.edges).toBe(scene.edges.filter((e) => e.visible).length);
      expect(counts.guides).toBe(scene.lens ? scene.lens.guideRadii.length : 0);
      expect(counts.rings).toBe(scene.lens ? 1 : 0);
    }
  });

  it("keeps the layering order: edges, guides, ring, nodes", () => {
    for (const scene of scenes) {
      const ops = buildDrawList(scene);
      for (let i = 1; i < ops.length; i++) {
        expect(KIND_LAYER[ops[i]!.kind]).toBeGreaterThanOrEqual(
          KIND_LAYER[ops[i - 1]!.kind],
        );
      }
    }
  });

  it("outlines the focus on every lensed frame and nothing otherwise", () => {
    for (const scene of scenes) {
      const outlined = buildDrawList(scene).filter(
        (op) => op.kind === "node" && op.outlined,
      ) as Extract<DrawOp, { kind: "node" }>[];
      if (scene.lens) {
        expect(outlined).toHaveLength(1);
        expect(outlined[0]!.id).toBe(scene.lens.focusId);
      } else {
        expect(outlined).toHaveLength(0);
      }
    }
  });

  it("colors roles from the advertised colormaps", () => {
    const lensed = scenes.find((s) => s.lens)!;
    expect(lensed.colormaps).toEqual({ context: "blues", lens: "greens" });
    const ops = buildDrawList(lensed) as Extract<DrawOp, { kind: "node" }>[];
    const fills = new Map(
      ops.filter((op) => op.kind === "node").map((op) => [op.id, op.fill]),
    );
    for (const node of lensed.nodes) {
      const fill = fills.get(node.id)!;
      if (node.role === "context") {
        if (node.sizeScalar === 0) expect(fill).toBe("#deebf7");
        if (node.sizeScalar === 1) expect(fill).toBe("#08519c");
      } else if (node.similarityScalar === 1) {
        expect(fill).toBe("#006d2c");
      }
    }
  });
});

describe("canvas painting", () => {
  function recordingContext() {
    const calls: string[] = [];
    const ctx = {
      globalAlpha: 1,
      strokeStyle: "",
      fillStyle: "",
      lineWidth: 0,
      setLineDash: () => {},
      beginPath: () => calls.push("beginPath"),
      moveTo: () => {},
      lineTo: () => {},
      arc: () => calls.push("arc"),
      stroke: () => calls.push("stroke"),
      fill: () => calls.push("fill"),
    };
    return { ctx: ctx as unknown as CanvasRenderingContext2D, calls };
  }

  it("issues one path per draw op", () => {
    const snapshot = makeSnapshot();
    const ops = buildDrawList(snapshot);
    const { ctx, calls } = recordingContext();
    paint(ctx, ops, { scale: 1, tx: 0, ty: 0 });
    const paths = calls.filter((c) => c === "beginPath").length;
    expect(paths).toBe(ops.length);
    const fills = calls.filter((c) => c === "fill").length;
    expect(fills).toBe(countElements(ops).nodes);
  });
});
