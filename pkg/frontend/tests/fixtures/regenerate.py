"""Regenerate golden_stream.jsonl from the engine.

Run from the repository root with the package installed:

    python3 frontend/tests/fixtures/regenerate.py

Each output line is either {"sent": <command>} or an engine event, in
order. The drag waypoints target the base positions of three extreme
nodes so the focus-follows-nearest assertion has unambiguous answers.
"""

import json
import math
import pathlib

from lensgraph.session import Command, Session, apply_command

OUT = pathlib.Path(__file__).with_name("golden_stream.jsonl")


def main() -> None:
    lines = []
    session = Session()

    def send(kind, args):
        nonlocal session
        lines.append({"sent": {"cmd": kind, **args}})
        session, events = apply_command(session, Command(kind, args))
        for event in events:
            assert event["type"] != "error", (kind, event)
            lines.append(event)
        return events

    send("LoadGraph", {"usecaseSeed": 1})
    events = send("RunBaseLayout", {"params": {"seed": 0}})
    base = events[-1]["payload"]["scene"]
    positions = {n["id"]: (n["x"], n["y"]) for n in base["nodes"]}

    send("SetAttributes", {"names": ["keeper_missed", "keeper_save_total"]})
    send("SetMetric", {"metric": "euclidean"})
    send("SetThreshold", {"t": 0.5})
    send("ActivateLens", {"center": [0.0, 0.0], "radius": 200.0})
    send("SetGuideMode", {"mode": "equidistant", "k": 4})
    send("Tick", {"n": 60})

    extremes = [
        min(positions, key=lambda i: positions[i][0]),
        max(positions, key=lambda i: positions[i][0]),
        min(positions, key=lambda i: positions[i][1]),
    ]
    for node_id in extremes:
        x, y = positions[node_id]
        center = [x + 3.0, y - 2.0]
        nearest = min(
            positions,
            key=lambda i: (math.hypot(positions[i][0] - center[0],
                                      positions[i][1] - center[1]), i),
        )
        assert nearest == node_id, (node_id, nearest)
        events = send("MoveLens", {"center": center})
        scene = events[-1]["payload"]["scene"]
        assert scene["lens"]["focusId"] == node_id
        send("Tick", {"n": 40})

    send("SetGuideMode", {"mode": "per-node"})
    send("SetEdgeFilter", {"mode": "incident"})
    send("Tick", {"n": 400})
    send("SetThreshold", {"t": 0.3})
    send("SetEdgeFilter", {"mode": "interior"})
    send("Tick", {"n": 400})
    send("ExportScene", {})

    with OUT.open("w", encoding="utf-8") as handle:
        for line in lines:
            handle.write(json.dumps(line, sort_keys=True, separators=(",", ":")))
            handle.write("\n")
    frames = sum(1 for l in lines if l.get("type") == "frame")
    print(f"wrote {len(lines)} lines ({frames} frames) to {OUT}")


if __name__ == "__main__":
    main()
