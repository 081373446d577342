"""Command-line driver: batch scene/SVG exports and the protocol server.

Batch mode loads a graph, runs the base layout, optionally configures and
activates the lens, ticks the transition to settlement (bounded by a cap),
and writes the exported artifact.  Everything goes through the session
protocol, so a batch run is exactly a scripted interactive session.

Exit codes: 0 success, 1 usage error, 2 data or engine error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .errors import LensGraphError
from .graph import generate_usecase_graph, graph_to_document, load_graph
from .server import serve
from .session import Command, Session, apply_command

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2

_GUIDE_KINDS = ("off", "equidistant", "per-node", "dynamic")


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on usage errors; the contract wants 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _threshold(text: str) -> float:
    value = float(text)
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError("threshold must lie in [0, 1]")
    return value


def _positive(text: str) -> float:
    value = float(text)
    if value <= 0.0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _point(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("expected X,Y")
    try:
        return (float(parts[0]), float(parts[1]))
    except ValueError as exc:
        raise argparse.ArgumentTypeError("expected X,Y numbers") from exc


def _guide_mode(text: str) -> tuple[str, int]:
    """Guide mode flag: a kind, optionally 'equidistant:K' to set the count."""
    kind, _, suffix = text.partition(":")
    if kind not in _GUIDE_KINDS:
        raise argparse.ArgumentTypeError(
            "expected one of: " + ", ".join(_GUIDE_KINDS)
        )
    k = 4
    if suffix:
        if kind != "equidistant":
            raise argparse.ArgumentTypeError("only equidistant takes a :K suffix")
        try:
            k = int(suffix)
        except ValueError as exc:
            raise argparse.ArgumentTypeError("K must be an integer") from exc
        if k < 1:
            raise argparse.ArgumentTypeError("K must be >= 1")
    return kind, k


def _attr_list(text: str) -> list[str]:
    names = [part.strip() for part in text.split(",")]
    if any(not name for name in names):
        raise argparse.ArgumentTypeError("attribute list must be comma-separated names")
    return names


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="lensgraph",
        description="Comparison-lens engine: batch exports and the protocol server.",
    )
    parser.add_argument("--input", help="graph file; nodes.csv,edges.csv for csv; seed for usecase")
    parser.add_argument(
        "--format",
        choices=("graph-json", "csv", "usecase"),
        help="input format (default: inferred from the --input extension)",
    )
    parser.add_argument("--focus", help="focus node id (activates the lens)")
    parser.add_argument("--center", type=_point, help="lens center X,Y (activates the lens)")
    parser.add_argument(
        "--metric", choices=("euclidean", "cosine", "pearson"), default="euclidean"
    )
    parser.add_argument("--attrs", type=_attr_list, help="comma-separated attribute names")
    parser.add_argument("--threshold", type=_threshold, default=0.5)
    parser.add_argument("--lens-radius", type=_positive, default=200.0)
    parser.add_argument(
        "--guide-mode",
        type=_guide_mode,
        default=("off", 4),
        help="off | equidistant[:K] | per-node | dynamic",
    )
    parser.add_argument(
        "--edge-filter", choices=("off", "incident", "interior"), default="off"
    )
    parser.add_argument(
        "--ticks",
        type=_positive_int,
        default=600,
        help="transition tick cap before export (default 600)",
    )
    parser.add_argument("--out", help="output path ('-' for stdout)")
    parser.add_argument(
        "--kind",
        choices=("scene-json", "svg"),
        help="output kind (default: inferred from the --out extension)",
    )
    parser.add_argument("--serve-port", type=int, help="run the protocol server on this port")
    parser.add_argument("--seed", type=int, default=0, help="base layout seed")
    return parser


def _effective_seed(args, parser) -> int:
    raw = os.environ.get("LENSGRAPH_SEED")
    if raw:
        try:
            return int(raw)
        except ValueError:
            parser.error(f"LENSGRAPH_SEED must be an integer, got {raw!r}")
    return args.seed


def _load_input_document(args, parser) -> dict:
    if args.format is not None:
        fmt = args.format
    elif args.input.endswith(".json"):
        fmt = "graph-json"
    elif args.input.endswith(".csv"):
        fmt = "csv"
    else:
        parser.error("cannot infer --format from the input path; pass --format")
    try:
        if fmt == "usecase":
            try:
                seed = int(args.input)
            except ValueError:
                parser.error("--format usecase takes the seed as --input")
            g = generate_usecase_graph(seed)
        elif fmt == "csv":
            paths = args.input.split(",")
            if len(paths) != 2:
                parser.error("--format csv takes --input nodes.csv,edges.csv")
            with open(paths[0], "rb") as nodes, open(paths[1], "rb") as edges:
                g = load_graph((nodes, edges), "csv")
        else:
            with open(args.input, "rb") as handle:
                g = load_graph(handle, "graph-json")
    except OSError as exc:
        print(f"lensgraph: cannot read input: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_DATA)
    except LensGraphError as exc:
        print(f"lensgraph: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_DATA)
    return graph_to_document(g)


def _batch_commands(args, doc: dict, seed: int) -> list[Command]:
    commands = [
        Command("LoadGraph", {"graph": doc}),
        Command("RunBaseLayout", {"params": {"seed": seed}}),
    ]
    if args.attrs:
        commands.append(Command("SetAttributes", {"names": args.attrs}))
        commands.append(Command("SetMetric", {"metric": args.metric}))
        commands.append(Command("SetThreshold", {"t": args.threshold}))
    if args.focus is not None or args.center is not None:
        center = list(args.center) if args.center is not None else [0.0, 0.0]
        commands.append(
            Command("ActivateLens", {"center": center, "radius": args.lens_radius})
        )
        if args.focus is not None:
            commands.append(Command("SelectFocus", {"id": args.focus}))
        kind, k = args.guide_mode
        if kind != "off":
            guide_args = {"mode": kind}
            if kind == "equidistant":
                guide_args["k"] = k
            commands.append(Command("SetGuideMode", guide_args))
        if args.edge_filter != "off":
            commands.append(Command("SetEdgeFilter", {"mode": args.edge_filter}))
        commands.append(Command("Tick", {"n": args.ticks}))
    commands.append(Command("ExportSvg" if args.kind == "svg" else "ExportScene", {}))
    return commands


def run_batch(args, parser) -> int:
    if args.kind is None:
        if args.out.endswith(".svg"):
            args.kind = "svg"
        elif args.out.endswith(".json") or args.out == "-":
            args.kind = "scene-json"
        else:
            parser.error("cannot infer --kind from the output path; pass --kind")
    seed = _effective_seed(args, parser)
    doc = _load_input_document(args, parser)

    session = Session()
    last_frame = None
    for command in _batch_commands(args, doc, seed):
        session, events = apply_command(session, command)
        for event in events:
            if event["type"] == "error":
                print(f"lensgraph: {event['payload']['message']}", file=sys.stderr)
                return EXIT_DATA
            if event["type"] == "warning":
                print(f"lensgraph: warning: {event['payload']['message']}", file=sys.stderr)
            else:
                last_frame = event["payload"]

    if args.kind == "svg":
        artifact = last_frame["svg"].encode("utf-8")
    else:
        artifact = (
            json.dumps(
                last_frame["scene"], sort_keys=True, separators=(",", ":"), allow_nan=False
            )
            + "\n"
        ).encode("utf-8")
    if args.out == "-":
        sys.stdout.buffer.write(artifact)
        sys.stdout.buffer.flush()
    else:
        try:
            with open(args.out, "wb") as handle:
                handle.write(artifact)
        except OSError as exc:
            print(f"lensgraph: cannot write output: {exc}", file=sys.stderr)
            return EXIT_DATA
    return EXIT_OK


def run_serve(args) -> int:
    ui_dir = Path("frontend") / "dist"
    httpd = serve("127.0.0.1", args.serve_port, ui_dir if ui_dir.is_dir() else None)
    host, port = httpd.server_address[:2]
    print(f"lensgraph: serving on http://{host}:{port}/ (websocket at /ws)", file=sys.stderr)
    try:
        httpd.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        httpd.server_close()
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.serve_port is not None:
        for flag, value in (("--input", args.input), ("--out", args.out)):
            if value is not None:
                parser.error(f"{flag} cannot be combined with --serve-port")
        return run_serve(args)
    if args.input is None or args.out is None:
        parser.error("batch mode requires --input and --out")
    if args.focus is not None and args.center is not None:
        parser.error("pass exactly one of --focus or --center")
    if (args.focus is not None or args.center is not None) and not args.attrs:
        parser.error("--attrs is required when a lens is requested")
    return run_batch(args, parser)


if __name__ == "__main__":
    sys.exit(main())
