"""Batch CLI: artifacts, exit codes, seed handling."""

import json

import pytest

from lensgraph.cli import main
from lensgraph.graph import generate_usecase_graph, serialize_graph
from lensgraph.scene import parse_scene


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    monkeypatch.delenv("LENSGRAPH_SEED", raising=False)


def run_cli(argv):
    try:
        return main(argv)
    except SystemExit as exc:
        return exc.code


def usecase_args(out, *extra):
    return ["--input", "7", "--format", "usecase", "--out", str(out), *extra]


LENS_ARGS = [
    "--focus",
    "p07",
    "--attrs",
    "keeper_missed,keeper_save_total",
    "--threshold",
    "0.5",
]


class TestExitCodes:
    def test_missing_out_is_usage_error(self):
        assert run_cli(["--input", "7", "--format", "usecase"]) == 1

    def test_focus_and_center_conflict(self, tmp_path):
        argv = usecase_args(tmp_path / "s.json", "--center", "0,0", *LENS_ARGS)
        assert run_cli(argv) == 1

    def test_lens_without_attrs_is_usage_error(self, tmp_path):
        argv = usecase_args(tmp_path / "s.json", "--focus", "p07")
        assert run_cli(argv) == 1

    def test_bad_threshold_is_usage_error(self, tmp_path):
        argv = usecase_args(tmp_path / "s.json", "--threshold", "1.5")
        assert run_cli(argv) == 1

    def test_bad_metric_is_usage_error(self, tmp_path):
        argv = usecase_args(tmp_path / "s.json", "--metric", "manhattan")
        assert run_cli(argv) == 1

    def test_unreadable_input_is_data_error(self, tmp_path, capsys):
        argv = ["--input", str(tmp_path / "missing.json"), "--out", str(tmp_path / "s.json")]
        assert run_cli(argv) == 2
        assert "cannot read input" in capsys.readouterr().err

    def test_malformed_graph_is_data_error(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text('{"schema": "nope"}')
        argv = ["--input", str(bad), "--out", str(tmp_path / "s.json")]
        assert run_cli(argv) == 2

    def test_unknown_attribute_is_data_error_listing_names(self, tmp_path, capsys):
        argv = usecase_args(tmp_path / "s.json", "--focus", "p07", "--attrs", "bogus")
        assert run_cli(argv) == 2
        err = capsys.readouterr().err
        assert "bogus" in err
        assert "keeper_save_total" in err

    def test_unknown_focus_is_data_error(self, tmp_path):
        argv = usecase_args(
            tmp_path / "s.json", "--focus", "nobody", "--attrs", "keeper_missed"
        )
        assert run_cli(argv) == 2

    def test_serve_rejects_batch_flags(self):
        assert run_cli(["--serve-port", "0", "--input", "x.json"]) == 1

    def test_unknown_kind_inference_is_usage_error(self, tmp_path):
        argv = usecase_args(tmp_path / "scene.dat")
        assert run_cli(argv) == 1

    def test_bad_guide_suffix_is_usage_error(self, tmp_path):
        argv = usecase_args(tmp_path / "s.json", "--guide-mode", "per-node:3")
        assert run_cli(argv) == 1


class TestArtifacts:
    def test_scene_export_without_lens(self, tmp_path):
        out = tmp_path / "base.json"
        assert run_cli(usecase_args(out)) == 0
        snap = parse_scene(out.read_bytes())
        assert len(snap.nodes) == 95
        assert snap.lens is None
        assert all(node.role == "context" for node in snap.nodes)

    def test_scene_export_with_lens(self, tmp_path):
        out = tmp_path / "lens.json"
        assert run_cli(usecase_args(out, *LENS_ARGS)) == 0
        snap = parse_scene(out.read_bytes())
        assert snap.lens is not None
        assert snap.lens.focus_id == "p07"
        assert snap.transition_settled is True
        roles = {node.role for node in snap.nodes}
        assert "focus" in roles and "in-lens" in roles

    def test_svg_kind_inferred_from_extension(self, tmp_path):
        out = tmp_path / "fig.svg"
        assert run_cli(usecase_args(out, *LENS_ARGS)) == 0
        svg = out.read_text()
        assert svg.startswith("<svg ")
        assert svg.count('class="node"') == 95
        assert svg.count('class="lens-ring"') == 1

    def test_explicit_kind_beats_extension(self, tmp_path):
        out = tmp_path / "fig.svg"
        assert run_cli(usecase_args(out, "--kind", "scene-json")) == 0
        json.loads(out.read_text())

    def test_stdout_output(self, capfdbinary):
        assert run_cli(["--input", "7", "--format", "usecase", "--out", "-"]) == 0
        out = capfdbinary.readouterr().out
        scene = json.loads(out)
        assert len(scene["nodes"]) == 95

    def test_guide_and_filter_flags_reach_scene(self, tmp_path):
        out = tmp_path / "guided.json"
        argv = usecase_args(
            out, *LENS_ARGS, "--guide-mode", "equidistant:2", "--edge-filter", "interior"
        )
        assert run_cli(argv) == 0
        snap = parse_scene(out.read_bytes())
        radius = snap.lens.radius
        assert list(snap.lens.guide_radii) == [radius / 2.0, radius]
        assert any(not edge.visible for edge in snap.edges)

    def test_center_flow(self, tmp_path):
        out = tmp_path / "centered.json"
        argv = usecase_args(
            out, "--center", "0,0", "--attrs", "keeper_missed,keeper_save_total"
        )
        assert run_cli(argv) == 0
        snap = parse_scene(out.read_bytes())
        assert snap.lens is not None

    def test_warnings_go_to_stderr(self, tmp_path, capsys):
        out = tmp_path / "warned.json"
        argv = usecase_args(out, "--center", "0,0", "--attrs", "keeper_missed")
        assert run_cli(argv) == 0
        assert "warning" in capsys.readouterr().err


class TestInputFormats:
    def test_graph_json_file(self, tmp_path):
        src = tmp_path / "g.json"
        src.write_bytes(serialize_graph(generate_usecase_graph(3)))
        out = tmp_path / "s.json"
        assert run_cli(["--input", str(src), "--out", str(out)]) == 0
        snap = parse_scene(out.read_bytes())
        assert len(snap.nodes) == 95

    def test_csv_pair(self, tmp_path):
        nodes = tmp_path / "nodes.csv"
        edges = tmp_path / "edges.csv"
        nodes.write_text("id,a1,a2\nx,0,0\ny,1,2\nz,2,4\n")
        edges.write_text("source,target,weight\nx,y,1\ny,z,2\n")
        out = tmp_path / "s.json"
        argv = [
            "--input",
            f"{nodes},{edges}",
            "--format",
            "csv",
            "--out",
            str(out),
        ]
        assert run_cli(argv) == 0
        snap = parse_scene(out.read_bytes())
        assert [node.id for node in snap.nodes] == ["x", "y", "z"]

    def test_csv_inferred_from_extension(self, tmp_path):
        nodes = tmp_path / "nodes.csv"
        edges = tmp_path / "edges.csv"
        nodes.write_text("id,a1\nx,0\ny,1\n")
        edges.write_text("source,target,weight\nx,y,1\n")
        out = tmp_path / "s.json"
        assert run_cli(["--input", f"{nodes},{edges}", "--out", str(out)]) == 0


class TestDeterminism:
    def test_batch_runs_are_byte_identical(self, tmp_path):
        a = tmp_path / "a.json"
        b = tmp_path / "b.json"
        assert run_cli(usecase_args(a, *LENS_ARGS)) == 0
        assert run_cli(usecase_args(b, *LENS_ARGS)) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_svg_runs_are_byte_identical(self, tmp_path):
        a = tmp_path / "a.svg"
        b = tmp_path / "b.svg"
        assert run_cli(usecase_args(a, *LENS_ARGS)) == 0
        assert run_cli(usecase_args(b, *LENS_ARGS)) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_seed_changes_output(self, tmp_path):
        a = tmp_path / "a.json"
        b = tmp_path / "b.json"
        assert run_cli(usecase_args(a, "--seed", "1")) == 0
        assert run_cli(usecase_args(b, "--seed", "2")) == 0
        assert a.read_bytes() != b.read_bytes()

    def test_env_seed_overrides_flag(self, tmp_path, monkeypatch):
        flagged = tmp_path / "flagged.json"
        assert run_cli(usecase_args(flagged, "--seed", "42")) == 0
        monkeypatch.setenv("LENSGRAPH_SEED", "42")
        env_driven = tmp_path / "env.json"
        assert run_cli(usecase_args(env_driven, "--seed", "1")) == 0
        assert flagged.read_bytes() == env_driven.read_bytes()

    def test_bad_env_seed_is_usage_error(self, tmp_path, monkeypatch):
        monkeypatch.setenv("LENSGRAPH_SEED", "not-a-number")
        assert run_cli(usecase_args(tmp_path / "s.json")) == 1
