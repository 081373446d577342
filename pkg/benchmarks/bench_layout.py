"""Benchmark the force-step kernel: compiled extension vs pure-Python fallback.

Runs identical step sequences through both backends on a few graph sizes,
checks that the resulting coordinates are bit-identical, and reports
per-step timings.

    python3 benchmarks/bench_layout.py [--steps 300] [--repeats 3]
"""

import argparse
import random
import struct
import time

from lensgraph import _pure
from lensgraph.graph import generate_usecase_graph, graph_from_document
from lensgraph.layout import LayoutParams, _pack, _temperature, init_layout

try:
    from lensgraph import _fastpath
except ImportError:
    _fastpath = None


def random_graph(n: int, seed: int):
    rng = random.Random(seed)
    nodes = [{"id": f"n{i:04d}", "attrs": [float(i)]} for i in range(n)]
    seen = set()
    edges = []
    for i in range(1, n):
        j = rng.randrange(i)
        seen.add((j, i))
        edges.append({"source": f"n{j:04d}", "target": f"n{i:04d}", "weight": 1.0})
    for _ in range(2 * n):
        a, b = rng.randrange(n), rng.randrange(n)
        if a == b or (min(a, b), max(a, b)) in seen:
            continue
        seen.add((min(a, b), max(a, b)))
        edges.append(
            {"source": f"n{min(a, b):04d}", "target": f"n{max(a, b):04d}", "weight": 1.0}
        )
    return graph_from_document({"schema": ["a"], "nodes": nodes, "edges": edges})


def run_steps(kernel, g, params, steps):
    state = init_layout(g, params)
    ids, xs, ys, dispx, dispy, hashes, edge_i, edge_j = _pack(g, state)
    n = len(ids)
    start = time.perf_counter()
    for tick in range(steps):
        temp = _temperature(params, n, tick)
        kernel.step_kernel(
            xs, ys, dispx, dispy, hashes, edge_i, edge_j,
            params.ideal_edge_length, params.repulsion_strength, temp,
        )
    elapsed = time.perf_counter() - start
    payload = struct.pack(f"<{n}d", *xs) + struct.pack(f"<{n}d", *ys)
    return elapsed, payload


def bench(name, g, steps, repeats):
    params = LayoutParams(cooling_steps=steps, seed=0)
    rows = []
    payloads = {}
    backends = [("pure", _pure)]
    if _fastpath is not None:
        backends.insert(0, ("compiled", _fastpath))
    for backend_name, kernel in backends:
        best = min(run_steps(kernel, g, params, steps)[0] for _ in range(repeats))
        _, payloads[backend_name] = run_steps(kernel, g, params, steps)
        rows.append((backend_name, best))
    if len(payloads) == 2:
        identical = payloads["compiled"] == payloads["pure"]
    else:
        identical = None
    base = dict(rows).get("pure")
    print(f"\n{name}: {len(g.nodes)} nodes, {len(g.edges)} edges, {steps} steps")
    for backend_name, seconds in rows:
        per_step = seconds / steps * 1e3
        speedup = f"{base / seconds:6.1f}x" if backend_name == "compiled" else "  1.0x"
        print(f"  {backend_name:9s} {seconds:9.4f} s   {per_step:8.4f} ms/step   {speedup}")
    if identical is True:
        print("  coordinates bit-identical across backends: yes")
    elif identical is False:
        print("  coordinates bit-identical across backends: NO (BUG)")
    else:
        print("  compiled backend unavailable; pure only")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--steps", type=int, default=300)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()
    bench("usecase graph", generate_usecase_graph(1), args.steps, args.repeats)
    bench("random graph (n=250)", random_graph(250, 7), args.steps, args.repeats)
    bench("random graph (n=500)", random_graph(500, 7), max(args.steps // 3, 1), args.repeats)


if __name__ == "__main__":
    main()
