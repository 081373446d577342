"""Lens adaptation: focus pick, similarity-to-radius mapping, push-out,
angular overlap resolution, spring transitions, edge filtering, guides.

The lens replaces topology-driven placement inside a disc with a
similarity-driven one: qualifying nodes sit at a radius that encodes their
similarity to the focus (boundary = exactly threshold, center = identical),
non-qualifying nodes caught inside the disc are pushed just beyond its
border, and everything else keeps its position bit for bit. Each moved node
keeps its bearing from the lens center as seen in the pre-adaptation layout,
so perceived motion stays radial.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Mapping

from .errors import UnknownNodeError
from .graph import MultivariateGraph
from .layout import LayoutState, _node_hash
from .similarity import SimilarityConfig, SimilarityResult

__all__ = [
    "NODE_DIAMETER",
    "TRANSITION_DT",
    "GuideMode",
    "LensConfig",
    "LensLayout",
    "TransitionState",
    "pick_focus",
    "radius_for_similarity",
    "compute_lens_layout",
    "begin_transition",
    "step_transition",
    "compute_edge_visibility",
    "compute_radial_guides",
    "similarity_color_scalars",
]

# world-unit node diameter assumed by angular overlap resolution
NODE_DIAMETER = 10.0
TRANSITION_DT = 1.0 / 60.0
_TWO_PI = 2.0 * math.pi

_GUIDE_KINDS = ("off", "equidistant", "per-node", "dynamic")
_EDGE_FILTERS = ("off", "incident", "interior")
_SETTLE_EPS = 1e-3
_MAX_SWEEPS = 50


@dataclass(frozen=True)
class GuideMode:
    """Radial guide setting; ``k``, ``cursor`` and ``snap`` apply per kind."""

    kind: str = "off"
    k: int = 4
    cursor: tuple[float, float] = (0.0, 0.0)
    snap: bool = False

    def __post_init__(self) -> None:
        if self.kind not in _GUIDE_KINDS:
            raise ValueError(f"unknown guide mode {self.kind!r}")
        if self.kind == "equidistant" and self.k < 1:
            raise ValueError("equidistant guide count must be at least 1")


@dataclass(frozen=True)
class LensConfig:
    center: tuple[float, float]
    radius: float
    sim: SimilarityConfig
    guide_mode: GuideMode = GuideMode()
    edge_filter: str = "off"
    push_margin: float = 0.08

    def __post_init__(self) -> None:
        if self.radius <= 0:
            raise ValueError("lens radius must be positive")
        if self.edge_filter not in _EDGE_FILTERS:
            raise ValueError(f"unknown edge filter {self.edge_filter!r}")
        if self.push_margin <= 0:
            raise ValueError("push margin must be positive")


@dataclass(frozen=True)
class LensLayout:
    """Target placement produced by compute_lens_layout.

    ``radii`` stores the exact assigned radius for every non-context node;
    targets are derived from it, so overlap resolution can rotate a node
    without perturbing its radius. ``overlap_resolved`` is False when 50
    relaxation sweeps could not reach the minimum angular separation.
    """

    focus: str
    targets: dict[str, tuple[float, float]]
    roles: dict[str, str]
    radii: dict[str, float]
    guide_radii: tuple[float, ...]
    visible_edges: frozenset[tuple[str, str]]
    similarity_scalars: dict[str, float]
    overlap_resolved: bool


@dataclass(frozen=True)
class TransitionState:
    current: dict[str, tuple[float, float]]
    velocities: dict[str, tuple[float, float]]
    targets: dict[str, tuple[float, float]]
    stiffness: float
    settled: bool


def pick_focus(layout: LayoutState, center: tuple[float, float]) -> str:
    """Node nearest to ``center``; ties go to the lexicographically smallest id."""
    if not layout.positions:
        raise UnknownNodeError("cannot pick a focus in an empty graph")
    best_id = None
    best_d = math.inf
    for node_id in sorted(layout.positions):
        d = math.dist(layout.positions[node_id], center)
        if d < best_d:
            best_id = node_id
            best_d = d
    return best_id


def radius_for_similarity(s: float, t: float, radius: float) -> float:
    """Linear similarity-to-radius map: s=1 hits the center, s=t the boundary.

    Computed as radius * ((1-s)/(1-t)) so that s == t yields exactly
    ``radius`` (x/x is exact in IEEE-754) and s == 1 yields exactly 0.
    At t == 1 the map degenerates to 0 everywhere.
    """
    if s < t or s > 1.0:
        raise ValueError(f"similarity {s!r} outside [threshold, 1]")
    if t == 1.0:
        return 0.0
    return radius * ((1.0 - s) / (1.0 - t))


def _hash_angle(node_id: str) -> float:
    """Deterministic angle for nodes coincident with the lens center."""
    return _TWO_PI * (_node_hash(node_id) / 18446744073709551616.0)


def _bearing(center: tuple[float, float], point: tuple[float, float], node_id: str) -> float:
    dx = point[0] - center[0]
    dy = point[1] - center[1]
    if dx == 0.0 and dy == 0.0:
        return _hash_angle(node_id)
    return math.atan2(dy, dx)


def _resolve_overlaps(
    groups: dict[float, list[tuple[str, float]]]
) -> tuple[dict[str, float], bool]:
    """Spread same-radius nodes apart in angle; radii are never touched.

    Each group is relaxed with symmetric pairwise pushes between angular
    neighbors (wrap-around included) for at most 50 sweeps. Returns the final
    angles and whether every group reached the minimum separation.
    """
    angles: dict[str, float] = {}
    resolved = True
    for radius, members in sorted(groups.items()):
        if radius == 0.0:
            # all such nodes sit on the focus; nothing to rotate apart
            if members:
                resolved = False
            for node_id, theta in members:
                angles[node_id] = theta
            continue
        if len(members) == 1:
            angles[members[0][0]] = members[0][1]
            continue
        min_sep = NODE_DIAMETER / radius
        ordered = sorted(members, key=lambda item: (item[1] % _TWO_PI, item[0]))
        ids = [node_id for node_id, _ in ordered]
        thetas = [theta % _TWO_PI for _, theta in ordered]
        size = len(ids)
        if min_sep * size > _TWO_PI:
            # not enough circumference; fall back to even spacing
            base = thetas[0]
            step = _TWO_PI / size
            for i, node_id in enumerate(ids):
                angles[node_id] = base + i * step
            resolved = False
            continue
        for _ in range(_MAX_SWEEPS):
            moved = False
            for i in range(size):
                j = (i + 1) % size
                gap = thetas[j] - thetas[i] if j > i else thetas[0] + _TWO_PI - thetas[i]
                if gap < min_sep - 1e-12:
                    # over-relaxed symmetric push: plain half-splitting stalls
                    # on tight clusters well before the sweep budget
                    shift = 1.9 * (min_sep - gap) / 2.0
                    thetas[i] -= shift
                    thetas[j] += shift
                    moved = True
            if not moved:
                break
        for i in range(size):
            j = (i + 1) % size
            gap = thetas[j] - thetas[i] if j > i else thetas[0] + _TWO_PI - thetas[i]
            if gap < min_sep - 1e-9:
                resolved = False
                break
        for node_id, theta in zip(ids, thetas):
            angles[node_id] = theta
    return angles, resolved


def compute_lens_layout(
    layout: LayoutState,
    g: MultivariateGraph,
    lens: LensConfig,
    sim: SimilarityResult,
) -> LensLayout:
    """Assign a target position and role to every node under the lens.

    Qualifying nodes move to their similarity radius along their pre-lens
    bearing; non-qualifying nodes inside the disc get pushed to
    radius*(1+push_margin); all remaining nodes keep their exact positions.
    """
    center = lens.center
    radius = lens.radius
    threshold = lens.sim.threshold
    push_radius = radius * (1.0 + lens.push_margin)

    targets: dict[str, tuple[float, float]] = {}
    roles: dict[str, str] = {}
    radii: dict[str, float] = {}
    pending: dict[str, tuple[float, float]] = {}

    for node_id in g.node_ids:
        pre = layout.positions[node_id]
        if node_id == sim.focus:
            targets[node_id] = center
            roles[node_id] = "focus"
            radii[node_id] = 0.0
            continue
        if node_id in sim.qualifying:
            score = sim.scores[node_id]
            r = radius_for_similarity(score, threshold, radius)
            roles[node_id] = "in-lens"
            radii[node_id] = r
            pending[node_id] = (r, _bearing(center, pre, node_id))
            continue
        if math.dist(pre, center) <= radius:
            roles[node_id] = "pushed"
            radii[node_id] = push_radius
            pending[node_id] = (push_radius, _bearing(center, pre, node_id))
            continue
        roles[node_id] = "context"
        targets[node_id] = pre

    groups: dict[float, list[tuple[str, float]]] = {}
    for node_id, (r, theta) in pending.items():
        groups.setdefault(r, []).append((node_id, theta))
    angles, overlap_resolved = _resolve_overlaps(groups)

    for node_id, (r, _) in pending.items():
        theta = angles[node_id]
        targets[node_id] = (
            center[0] + r * math.cos(theta),
            center[1] + r * math.sin(theta),
        )

    scalars = similarity_color_scalars(sim, roles)
    partial = LensLayout(
        focus=sim.focus,
        targets=targets,
        roles=roles,
        radii=radii,
        guide_radii=(),
        visible_edges=frozenset(),
        similarity_scalars=scalars,
        overlap_resolved=overlap_resolved,
    )
    guide_radii = compute_radial_guides(lens, partial)
    visible = compute_edge_visibility(g, targets, lens)
    return replace(partial, guide_radii=guide_radii, visible_edges=visible)


def begin_transition(
    from_positions: Mapping[str, tuple[float, float]],
    targets: Mapping[str, tuple[float, float]],
    stiffness: float = 40.0,
) -> TransitionState:
    """Start a critically damped spring move from rest toward the targets."""
    if set(from_positions) != set(targets):
        raise ValueError("transition requires identical node sets")
    if stiffness <= 0:
        raise ValueError("stiffness must be positive")
    return TransitionState(
        current=dict(from_positions),
        velocities={node_id: (0.0, 0.0) for node_id in from_positions},
        targets=dict(targets),
        stiffness=stiffness,
        settled=False,
    )


def step_transition(ts: TransitionState) -> TransitionState:
    """Advance one fixed 1/60 s step; snap to targets exactly on settle.

    Damping is critical (c = 2*sqrt(stiffness)), integrated semi-implicitly,
    so distance to target never overshoots. Settling requires both max
    distance and max speed below 1e-3; the final snap makes boundary
    placement exact rather than merely converged.
    """
    if ts.settled:
        return ts
    damping = 2.0 * math.sqrt(ts.stiffness)
    dt = TRANSITION_DT
    current: dict[str, tuple[float, float]] = {}
    velocities: dict[str, tuple[float, float]] = {}
    max_dist = 0.0
    max_speed = 0.0
    for node_id in sorted(ts.current):
        x, y = ts.current[node_id]
        vx, vy = ts.velocities[node_id]
        tx, ty = ts.targets[node_id]
        ax = ts.stiffness * (tx - x) - damping * vx
        ay = ts.stiffness * (ty - y) - damping * vy
        vx = vx + dt * ax
        vy = vy + dt * ay
        x = x + dt * vx
        y = y + dt * vy
        current[node_id] = (x, y)
        velocities[node_id] = (vx, vy)
        dist = math.hypot(tx - x, ty - y)
        speed = math.hypot(vx, vy)
        if dist > max_dist:
            max_dist = dist
        if speed > max_speed:
            max_speed = speed
    settled = max_dist < _SETTLE_EPS and max_speed < _SETTLE_EPS
    if settled:
        current = dict(ts.targets)
        velocities = {node_id: (0.0, 0.0) for node_id in ts.targets}
    return TransitionState(
        current=current,
        velocities=velocities,
        targets=ts.targets,
        stiffness=ts.stiffness,
        settled=settled,
    )


def compute_edge_visibility(
    g: MultivariateGraph,
    positions: Mapping[str, tuple[float, float]],
    lens: LensConfig,
) -> frozenset[tuple[str, str]]:
    """Edge ids visible under the lens filter, judged on rendered positions."""
    if lens.edge_filter == "off":
        return frozenset((e.source, e.target) for e in g.edges)
    center = lens.center
    radius = lens.radius
    inside = {
        node_id: math.dist(positions[node_id], center) <= radius
        for node_id in g.node_ids
    }
    if lens.edge_filter == "incident":
        return frozenset(
            (e.source, e.target)
            for e in g.edges
            if inside[e.source] or inside[e.target]
        )
    return frozenset(
        (e.source, e.target) for e in g.edges if inside[e.source] and inside[e.target]
    )


def compute_radial_guides(lens: LensConfig, lens_layout: LensLayout) -> tuple[float, ...]:
    """Guide circle radii for the active mode, each in (0, radius]."""
    mode = lens.guide_mode
    radius = lens.radius
    if mode.kind == "off":
        return ()
    if mode.kind == "equidistant":
        return tuple(radius * (i / mode.k) for i in range(1, mode.k + 1))
    in_lens = sorted(
        {
            r
            for node_id, r in lens_layout.radii.items()
            if lens_layout.roles.get(node_id) == "in-lens" and r > 0.0
        }
    )
    if mode.kind == "per-node":
        window = radius / 100.0
        kept: list[float] = []
        for r in in_lens:
            if not kept or r - kept[-1] >= window:
                kept.append(r)
        return tuple(kept)
    # dynamic: one circle under the cursor, optionally snapped to a node ring
    d = math.dist(mode.cursor, lens.center)
    if d > radius:
        d = radius
    if mode.snap and in_lens:
        nearest = min(in_lens, key=lambda r: (abs(r - d), r))
        if abs(nearest - d) <= radius / 20.0:
            d = nearest
    if d == 0.0:
        return ()
    return (d,)


def similarity_color_scalars(
    sim: SimilarityResult, roles: Mapping[str, str]
) -> dict[str, float]:
    """Similarity color scalar per non-context node; undefined scores floor at 0."""
    scalars: dict[str, float] = {}
    for node_id, role in roles.items():
        if role == "context":
            continue
        score = sim.scores.get(node_id)
        scalars[node_id] = 0.0 if score is None else score
    return scalars
