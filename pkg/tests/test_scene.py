"""Canonical scene serialization and SVG export."""

import json
import math

import pytest

from lensgraph.errors import GraphFormatError
from lensgraph.scene import (
    COLORMAPS,
    SceneEdge,
    SceneLens,
    SceneNode,
    SceneSnapshot,
    export_svg,
    parse_scene,
    scene_from_document,
    scene_to_document,
    serialize_scene,
)


def tiny_snapshot(with_lens=True):
    """Three nodes, one hidden edge; every float exact at six decimals."""
    nodes = (
        SceneNode(id="a", x=0.0, y=0.0, size_scalar=1.0, role="focus", similarity_scalar=1.0),
        SceneNode(id="b", x=80.0, y=0.5, size_scalar=0.5, role="in-lens", similarity_scalar=0.75),
        SceneNode(id="c", x=300.0, y=-40.0, size_scalar=0.0, role="context"),
    )
    edges = (
        SceneEdge(source="a", target="b", width_scalar=1.0, visible=True),
        SceneEdge(source="b", target="c", width_scalar=0.25, visible=False),
    )
    lens = None
    if with_lens:
        lens = SceneLens(center=(0.0, 0.0), radius=200.0, guide_radii=(100.0, 200.0), focus_id="a")
    return SceneSnapshot(frame=3, nodes=nodes, edges=edges, lens=lens, transition_settled=False)


class TestSceneDocument:
    def test_wire_keys(self):
        doc = scene_to_document(tiny_snapshot())
        assert set(doc) == {"frame", "nodes", "edges", "colormaps", "transitionSettled", "lens"}
        assert doc["frame"] == 3
        assert doc["transitionSettled"] is False
        assert doc["colormaps"] == {"context": "blues", "lens": "greens"} == COLORMAPS
        first = doc["nodes"][0]
        assert set(first) == {"id", "x", "y", "sizeScalar", "role", "similarityScalar"}
        assert doc["edges"][0] == {
            "source": "a",
            "target": "b",
            "widthScalar": 1.0,
            "visible": True,
        }
        assert set(doc["lens"]) == {"center", "R", "guideRadii", "focusId"}
        assert doc["lens"]["R"] == 200.0
        assert doc["lens"]["focusId"] == "a"

    def test_similarity_scalar_omitted_when_undefined(self):
        doc = scene_to_document(tiny_snapshot())
        context_entry = doc["nodes"][2]
        assert context_entry["role"] == "context"
        assert "similarityScalar" not in context_entry

    def test_lens_omitted_when_inactive(self):
        doc = scene_to_document(tiny_snapshot(with_lens=False))
        assert "lens" not in doc

    def test_floats_quantized_to_six_decimals(self):
        snap = tiny_snapshot()
        node = SceneNode(id="q", x=1.23456749, y=-2.0000004, size_scalar=0.1234567, role="context")
        doc = scene_to_document(
            SceneSnapshot(frame=0, nodes=(node,), edges=(), lens=None, transition_settled=True)
        )
        entry = doc["nodes"][0]
        assert entry["x"] == 1.234567
        assert entry["y"] == -2.0
        assert entry["sizeScalar"] == 0.123457

    def test_negative_zero_normalized(self):
        node = SceneNode(id="z", x=-0.0, y=-0.0000001, size_scalar=0.0, role="context")
        doc = scene_to_document(
            SceneSnapshot(frame=0, nodes=(node,), edges=(), lens=None, transition_settled=True)
        )
        entry = doc["nodes"][0]
        assert math.copysign(1.0, entry["x"]) == 1.0
        assert math.copysign(1.0, entry["y"]) == 1.0

    def test_nonfinite_rejected(self):
        node = SceneNode(id="n", x=float("nan"), y=0.0, size_scalar=0.0, role="context")
        snap = SceneSnapshot(frame=0, nodes=(node,), edges=(), lens=None, transition_settled=True)
        with pytest.raises(ValueError):
            serialize_scene(snap)

    def test_serialized_form_is_canonical(self):
        data = serialize_scene(tiny_snapshot())
        text = data.decode("utf-8")
        assert text.endswith("\n")
        canonical = json.dumps(
            json.loads(text), sort_keys=True, separators=(",", ":"), allow_nan=False
        )
        assert text == canonical + "\n"

    def test_roundtrip_exact(self):
        snap = tiny_snapshot()
        assert parse_scene(serialize_scene(snap)) == snap

    def test_serialization_idempotent(self):
        data = serialize_scene(tiny_snapshot())
        assert serialize_scene(parse_scene(data)) == data

    def test_from_document_missing_field(self):
        doc = scene_to_document(tiny_snapshot())
        del doc["nodes"]
        with pytest.raises(GraphFormatError):
            scene_from_document(doc)

    def test_from_document_bad_entry(self):
        doc = scene_to_document(tiny_snapshot())
        doc["nodes"][0] = "oops"
        with pytest.raises(GraphFormatError):
            scene_from_document(doc)

    def test_from_document_bad_lens(self):
        doc = scene_to_document(tiny_snapshot())
        del doc["lens"]["R"]
        with pytest.raises(GraphFormatError):
            scene_from_document(doc)

    def test_parse_rejects_bad_json(self):
        with pytest.raises(GraphFormatError):
            parse_scene(b"{not json")


class TestSvgExport:
    def test_element_counts(self):
        svg = export_svg(tiny_snapshot()).decode("utf-8")
        assert svg.count('class="node"') == 3
        assert svg.count('class="edge"') == 1
        assert svg.count('class="guide"') == 2
        assert svg.count('class="lens-ring"') == 1

    def test_layering_order(self):
        svg = export_svg(tiny_snapshot()).decode("utf-8")
        order = [
            svg.index('class="edge"'),
            svg.index('class="guide"'),
            svg.index('class="lens-ring"'),
            svg.index('class="node"'),
        ]
        assert order == sorted(order)

    def test_header_and_footer(self):
        svg = export_svg(tiny_snapshot()).decode("utf-8")
        assert svg.startswith('<svg xmlns="http://www.w3.org/2000/svg" version="1.1" ')
        assert 'viewBox="' in svg
        assert svg.endswith("</svg>\n")

    def test_focus_gets_outline(self):
        svg = export_svg(tiny_snapshot()).decode("utf-8")
        assert svg.count('stroke="#000000"') == 1
        focus_line = [line for line in svg.splitlines() if 'stroke="#000000"' in line][0]
        assert 'class="node"' in focus_line

    def test_colormap_endpoints(self):
        nodes = (
            SceneNode(id="c0", x=0.0, y=0.0, size_scalar=0.0, role="context"),
            SceneNode(id="c1", x=10.0, y=0.0, size_scalar=1.0, role="context"),
            SceneNode(id="g0", x=20.0, y=0.0, size_scalar=0.5, role="in-lens", similarity_scalar=0.0),
            SceneNode(id="g1", x=30.0, y=0.0, size_scalar=0.5, role="in-lens", similarity_scalar=1.0),
        )
        snap = SceneSnapshot(frame=0, nodes=nodes, edges=(), lens=None, transition_settled=True)
        lines = export_svg(snap).decode("utf-8").splitlines()
        node_lines = [line for line in lines if 'class="node"' in line]
        assert 'fill="#deebf7"' in node_lines[0]
        assert 'fill="#08519c"' in node_lines[1]
        assert 'fill="#e5f5e0"' in node_lines[2]
        assert 'fill="#006d2c"' in node_lines[3]

    def test_pushed_role_uses_lens_colormap(self):
        node = SceneNode(id="p", x=0.0, y=0.0, size_scalar=0.5, role="pushed", similarity_scalar=0.0)
        snap = SceneSnapshot(frame=0, nodes=(node,), edges=(), lens=None, transition_settled=True)
        svg = export_svg(snap).decode("utf-8")
        assert 'fill="#e5f5e0"' in svg

    def test_node_radius_mapping(self):
        svg = export_svg(tiny_snapshot()).decode("utf-8")
        node_lines = [line for line in svg.splitlines() if 'class="node"' in line]
        assert 'r="5.000000"' in node_lines[0]
        assert 'r="1.500000"' in node_lines[2]

    def test_edge_stroke_mapping(self):
        edges = (
            SceneEdge(source="a", target="b", width_scalar=0.0, visible=True),
            SceneEdge(source="b", target="c", width_scalar=1.0, visible=True),
        )
        snap = tiny_snapshot()
        snap = SceneSnapshot(
            frame=0, nodes=snap.nodes, edges=edges, lens=None, transition_settled=True
        )
        svg = export_svg(snap).decode("utf-8")
        assert 'stroke-width="0.500000"' in svg
        assert 'stroke-width="3.000000"' in svg

    def test_deterministic_bytes(self):
        assert export_svg(tiny_snapshot()) == export_svg(tiny_snapshot())

    def test_no_negative_zero_in_output(self):
        node = SceneNode(id="z", x=-0.0, y=-0.0, size_scalar=0.0, role="context")
        snap = SceneSnapshot(frame=0, nodes=(node,), edges=(), lens=None, transition_settled=True)
        svg = export_svg(snap).decode("utf-8")
        assert "-0.000000" not in svg
        assert 'cx="0.000000"' in svg

    def test_without_lens_no_ring_or_guides(self):
        svg = export_svg(tiny_snapshot(with_lens=False)).decode("utf-8")
        assert 'class="lens-ring"' not in svg
        assert 'class="guide"' not in svg
        assert svg.count('class="node"') == 3

    def test_empty_snapshot_still_valid(self):
        snap = SceneSnapshot(frame=0, nodes=(), edges=(), lens=None, transition_settled=True)
        svg = export_svg(snap).decode("utf-8")
        assert svg.startswith("<svg ") and svg.endswith("</svg>\n")
