"""Scene snapshots: the serializable frame consumed by exporters and the UI.

Snapshots are canonical: node and edge order is fixed, every float is
quantized to 6 decimals with negative zero normalized, and keys serialize
sorted, so two snapshots of equal state are byte-identical.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .errors import GraphFormatError

__all__ = [
    "SceneNode",
    "SceneEdge",
    "SceneLens",
    "SceneSnapshot",
    "COLORMAPS",
    "scene_to_document",
    "scene_from_document",
    "serialize_scene",
    "parse_scene",
    "export_svg",
]

COLORMAPS = {"context": "blues", "lens": "greens"}

# blues (degree, context) and greens (similarity, lens cohort) endpoints
_BLUES = ((0xDE, 0xEB, 0xF7), (0x08, 0x51, 0x9C))
_GREENS = ((0xE5, 0xF5, 0xE0), (0x00, 0x6D, 0x2C))


def _q6(value: float) -> float:
    """Quantize to 6 decimals; -0.0 normalizes to 0.0."""
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"non-finite value {value!r} in scene")
    out = round(value, 6)
    return 0.0 if out == 0.0 else out


@dataclass(frozen=True)
class SceneNode:
    id: str
    x: float
    y: float
    size_scalar: float
    role: str
    similarity_scalar: float | None = None


@dataclass(frozen=True)
class SceneEdge:
    source: str
    target: str
    width_scalar: float
    visible: bool


@dataclass(frozen=True)
class SceneLens:
    center: tuple[float, float]
    radius: float
    guide_radii: tuple[float, ...]
    focus_id: str


@dataclass(frozen=True)
class SceneSnapshot:
    frame: int
    nodes: tuple[SceneNode, ...]
    edges: tuple[SceneEdge, ...]
    lens: SceneLens | None
    transition_settled: bool


def scene_to_document(snapshot: SceneSnapshot) -> dict:
    """Snapshot as the plain wire document with quantized numbers."""
    nodes = []
    for node in snapshot.nodes:
        entry = {
            "id": node.id,
            "x": _q6(node.x),
            "y": _q6(node.y),
            "sizeScalar": _q6(node.size_scalar),
            "role": node.role,
        }
        if node.similarity_scalar is not None:
            entry["similarityScalar"] = _q6(node.similarity_scalar)
        nodes.append(entry)
    edges = [
        {
            "source": e.source,
            "target": e.target,
            "widthScalar": _q6(e.width_scalar),
            "visible": e.visible,
        }
        for e in snapshot.edges
    ]
    doc = {
        "frame": snapshot.frame,
        "nodes": nodes,
        "edges": edges,
        "colormaps": dict(COLORMAPS),
        "transitionSettled": snapshot.transition_settled,
    }
    if snapshot.lens is not None:
        doc["lens"] = {
            "center": [_q6(snapshot.lens.center[0]), _q6(snapshot.lens.center[1])],
            "R": _q6(snapshot.lens.radius),
            "guideRadii": [_q6(r) for r in snapshot.lens.guide_radii],
            "focusId": snapshot.lens.focus_id,
        }
    return doc


def scene_from_document(doc: dict) -> SceneSnapshot:
    try:
        nodes = tuple(
            SceneNode(
                id=entry["id"],
                x=entry["x"],
                y=entry["y"],
                size_scalar=entry["sizeScalar"],
                role=entry["role"],
                similarity_scalar=entry.get("similarityScalar"),
            )
            for entry in doc["nodes"]
        )
        edges = tuple(
            SceneEdge(
                source=entry["source"],
                target=entry["target"],
                width_scalar=entry["widthScalar"],
                visible=entry["visible"],
            )
            for entry in doc["edges"]
        )
        lens = None
        if "lens" in doc:
            raw = doc["lens"]
            lens = SceneLens(
                center=(raw["center"][0], raw["center"][1]),
                radius=raw["R"],
                guide_radii=tuple(raw["guideRadii"]),
                focus_id=raw["focusId"],
            )
        return SceneSnapshot(
            frame=doc["frame"],
            nodes=nodes,
            edges=edges,
            lens=lens,
            transition_settled=doc["transitionSettled"],
        )
    except (KeyError, TypeError, IndexError) as exc:
        raise GraphFormatError(f"malformed scene document: {exc!r}") from exc


def serialize_scene(snapshot: SceneSnapshot) -> bytes:
    doc = scene_to_document(snapshot)
    return (
        json.dumps(doc, sort_keys=True, separators=(",", ":"), allow_nan=False) + "\n"
    ).encode("utf-8")


def parse_scene(data: bytes | str) -> SceneSnapshot:
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"malformed scene json: {exc}") from exc
    return scene_from_document(doc)


def _lerp_hex(endpoints, t: float) -> str:
    if t < 0.0:
        t = 0.0
    elif t > 1.0:
        t = 1.0
    (r0, g0, b0), (r1, g1, b1) = endpoints
    r = round(r0 + (r1 - r0) * t)
    g = round(g0 + (g1 - g0) * t)
    b = round(b0 + (b1 - b0) * t)
    return f"#{r:02x}{g:02x}{b:02x}"


def _f(value: float) -> str:
    out = f"{value:.6f}"
    return "0.000000" if out == "-0.000000" else out


def _node_radius(size_scalar: float) -> float:
    # max-degree node diameter matches the overlap-resolution assumption (10)
    return 1.5 + 3.5 * size_scalar


def export_svg(snapshot: SceneSnapshot) -> bytes:
    """Standalone deterministic SVG: edges, guides, lens ring, then nodes."""
    pos = {node.id: (node.x, node.y) for node in snapshot.nodes}

    xs = [node.x for node in snapshot.nodes]
    ys = [node.y for node in snapshot.nodes]
    if snapshot.lens is not None:
        reach = snapshot.lens.radius * 1.2
        xs += [snapshot.lens.center[0] - reach, snapshot.lens.center[0] + reach]
        ys += [snapshot.lens.center[1] - reach, snapshot.lens.center[1] + reach]
    if not xs:
        xs = ys = [0.0]
    pad = 20.0
    min_x, max_x = min(xs) - pad, max(xs) + pad
    min_y, max_y = min(ys) - pad, max(ys) + pad
    width = max_x - min_x
    height = max_y - min_y

    parts = [
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{_f(min_x)} {_f(min_y)} {_f(width)} {_f(height)}" '
        f'width="{_f(width)}" height="{_f(height)}">'
    ]

    for edge in snapshot.edges:
        if not edge.visible:
            continue
        x1, y1 = pos[edge.source]
        x2, y2 = pos[edge.target]
        stroke = 0.5 + 2.5 * edge.width_scalar
        parts.append(
            f'<line class="edge" x1="{_f(x1)}" y1="{_f(y1)}" x2="{_f(x2)}" y2="{_f(y2)}" '
            f'stroke="#b3b3b3" stroke-opacity="0.6" stroke-width="{_f(stroke)}"/>'
        )

    if snapshot.lens is not None:
        cx, cy = snapshot.lens.center
        for r in snapshot.lens.guide_radii:
            parts.append(
                f'<circle class="guide" cx="{_f(cx)}" cy="{_f(cy)}" r="{_f(r)}" '
                'fill="none" stroke="#8c8c8c" stroke-width="0.75" stroke-dasharray="4 3"/>'
            )
        parts.append(
            f'<circle class="lens-ring" cx="{_f(cx)}" cy="{_f(cy)}" '
            f'r="{_f(snapshot.lens.radius)}" fill="none" stroke="#333333" stroke-width="1.5"/>'
        )

    focus_id = snapshot.lens.focus_id if snapshot.lens is not None else None
    for node in snapshot.nodes:
        if node.role == "context":
            fill = _lerp_hex(_BLUES, node.size_scalar)
        else:
            scalar = node.similarity_scalar if node.similarity_scalar is not None else 0.0
            fill = _lerp_hex(_GREENS, scalar)
        outline = ' stroke="#000000" stroke-width="1.5"' if node.id == focus_id else ""
        parts.append(
            f'<circle class="node" cx="{_f(node.x)}" cy="{_f(node.y)}" '
            f'r="{_f(_node_radius(node.size_scalar))}" fill="{fill}"{outline}/>'
        )

    parts.append("</svg>")
    return ("\n".join(parts) + "\n").encode("utf-8")
