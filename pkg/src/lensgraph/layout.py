"""Deterministic force-directed base layout.

The scheme is the classic spring-embedder: every node pair repels with
strength repulsion*k^2/d, every edge attracts with d^2/k (k is the ideal edge
length; edge weight deliberately does not enter the forces), and per-step
displacement is clamped by a linearly cooling temperature. Iteration order,
seeding, and coincident-pair handling are all pinned down so a (graph,
params) pair always yields byte-identical positions.
"""

from __future__ import annotations

import hashlib
import math
import random
from array import array
from dataclasses import dataclass

from . import kernels
from .graph import MultivariateGraph

__all__ = ["LayoutParams", "LayoutState", "init_layout", "step_layout", "run_layout"]


@dataclass(frozen=True)
class LayoutParams:
    ideal_edge_length: float = 30.0
    repulsion_strength: float = 1.0
    cooling_steps: int = 300
    seed: int = 0

    def __post_init__(self) -> None:
        if self.ideal_edge_length <= 0:
            raise ValueError("ideal_edge_length must be positive")
        if self.repulsion_strength <= 0:
            raise ValueError("repulsion_strength must be positive")
        if self.cooling_steps <= 0:
            raise ValueError("cooling_steps must be positive")


@dataclass(frozen=True)
class LayoutState:
    positions: dict[str, tuple[float, float]]
    velocities: dict[str, tuple[float, float]]
    tick: int


def _node_hash(node_id: str) -> int:
    """Stable 64-bit hash of a node id, independent of PYTHONHASHSEED."""
    return int.from_bytes(hashlib.sha1(node_id.encode("utf-8")).digest()[:8], "big")


def _temperature(params: LayoutParams, n: int, tick: int) -> float:
    t0 = 0.1 * params.ideal_edge_length * math.sqrt(n)
    frac = 1.0 - tick / params.cooling_steps
    return t0 * frac if frac > 0.0 else 0.0


def init_layout(g: MultivariateGraph, params: LayoutParams) -> LayoutState:
    """Seed positions on a disc of radius ideal_edge_length*sqrt(n).

    Points are drawn by rejection sampling from params.seed, in sorted node-id
    order; a single node sits at the origin. Velocities start at zero.
    """
    ids = g.node_ids
    n = len(ids)
    rng = random.Random(params.seed)
    positions: dict[str, tuple[float, float]] = {}
    if n == 1:
        positions[ids[0]] = (0.0, 0.0)
    else:
        radius = params.ideal_edge_length * math.sqrt(n)
        for node_id in ids:
            while True:
                x = 2.0 * rng.random() - 1.0
                y = 2.0 * rng.random() - 1.0
                if x * x + y * y <= 1.0:
                    break
            positions[node_id] = (radius * x, radius * y)
    velocities = {node_id: (0.0, 0.0) for node_id in ids}
    return LayoutState(positions=positions, velocities=velocities, tick=0)


def _pack(g: MultivariateGraph, state: LayoutState):
    ids = g.node_ids
    index = {node_id: i for i, node_id in enumerate(ids)}
    xs = array("d", (state.positions[node_id][0] for node_id in ids))
    ys = array("d", (state.positions[node_id][1] for node_id in ids))
    dispx = array("d", bytes(8 * len(ids)))
    dispy = array("d", bytes(8 * len(ids)))
    hashes = array("Q", (_node_hash(node_id) for node_id in ids))
    edge_i = array("i", (index[e.source] for e in g.edges))
    edge_j = array("i", (index[e.target] for e in g.edges))
    return ids, xs, ys, dispx, dispy, hashes, edge_i, edge_j


def step_layout(state: LayoutState, g: MultivariateGraph, params: LayoutParams) -> LayoutState:
    """Advance the layout by one cooled force step."""
    for node_id in g.node_ids:
        if node_id not in state.positions:
            raise ValueError(f"layout state is missing node {node_id!r}")
    ids, xs, ys, dispx, dispy, hashes, edge_i, edge_j = _pack(g, state)
    temp = _temperature(params, len(ids), state.tick)
    kernels.step_kernel(
        xs, ys, dispx, dispy, hashes, edge_i, edge_j,
        params.ideal_edge_length, params.repulsion_strength, temp,
    )
    positions = {node_id: (xs[i], ys[i]) for i, node_id in enumerate(ids)}
    velocities = {node_id: (0.0, 0.0) for node_id in ids}
    return LayoutState(positions=positions, velocities=velocities, tick=state.tick + 1)


def run_layout(g: MultivariateGraph, params: LayoutParams) -> LayoutState:
    """Init, run cooling_steps force steps, and center the centroid at (0,0)."""
    state = init_layout(g, params)
    ids, xs, ys, dispx, dispy, hashes, edge_i, edge_j = _pack(g, state)
    n = len(ids)
    for tick in range(params.cooling_steps):
        temp = _temperature(params, n, tick)
        kernels.step_kernel(
            xs, ys, dispx, dispy, hashes, edge_i, edge_j,
            params.ideal_edge_length, params.repulsion_strength, temp,
        )
    if n:
        cx = 0.0
        cy = 0.0
        for i in range(n):
            cx = cx + xs[i]
            cy = cy + ys[i]
        cx = cx / n
        cy = cy / n
        for i in range(n):
            xs[i] = xs[i] - cx
            ys[i] = ys[i] - cy
    positions = {node_id: (xs[i], ys[i]) for i, node_id in enumerate(ids)}
    velocities = {node_id: (0.0, 0.0) for node_id in ids}
    return LayoutState(positions=positions, velocities=velocities, tick=params.cooling_steps)
