"""Pairwise similarity of a focus node against all other nodes.

All metrics operate on min-max normalized attribute vectors and map into
[0, 1] so one threshold slider works for every metric. Cases where a metric
is mathematically undefined (zero vector for cosine, zero variance for
pearson, any missing value among the selected attributes) yield ``None``
instead of an exception: the affected node is simply excluded from the
qualifying set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import UnknownNodeError
from .graph import MultivariateGraph, normalize_attributes

__all__ = [
    "METRICS",
    "SimilarityConfig",
    "SimilarityResult",
    "similarity_euclidean",
    "similarity_cosine",
    "similarity_pearson",
    "compute_similarities",
]


def _check_lengths(x: Sequence[float], y: Sequence[float]) -> int:
    if len(x) != len(y):
        raise ValueError(f"vector length mismatch: {len(x)} vs {len(y)}")
    return len(x)


def similarity_euclidean(x: Sequence[float], y: Sequence[float]) -> float:
    """1 minus the root of the mean squared per-attribute difference.

    On [0,1] vectors this lands in [0,1], with 1 exactly for identical input.
    """
    m = _check_lengths(x, y)
    if m == 0:
        raise ValueError("vectors must have at least one component")
    acc = 0.0
    for a, b in zip(x, y):
        d = a - b
        acc = acc + d * d
    return 1.0 - math.sqrt(acc / m)


def similarity_cosine(x: Sequence[float], y: Sequence[float]) -> float | None:
    """Cosine of the angle, affinely mapped from [-1,1] to [0,1].

    Returns None when either vector is zero (angle undefined). Components are
    pre-scaled by each vector's max magnitude (cosine is scale-invariant), so
    subnormal inputs cannot underflow the norms.
    """
    _check_lengths(x, y)
    mx = max((abs(a) for a in x), default=0.0)
    my = max((abs(b) for b in y), default=0.0)
    if mx == 0.0 or my == 0.0:
        return None
    dot = 0.0
    nx = 0.0
    ny = 0.0
    for a, b in zip(x, y):
        ua = a / mx
        ub = b / my
        dot = dot + ua * ub
        nx = nx + ua * ua
        ny = ny + ub * ub
    cos = dot / (math.sqrt(nx) * math.sqrt(ny))
    if cos > 1.0:
        cos = 1.0
    elif cos < -1.0:
        cos = -1.0
    return (1.0 + cos) / 2.0


def similarity_pearson(x: Sequence[float], y: Sequence[float]) -> float | None:
    """Pearson correlation, affinely mapped from [-1,1] to [0,1].

    Returns None for vectors shorter than 2 or with zero range (constant
    input). Each vector is min-max rescaled first (r is invariant under
    positive affine maps), which pins the sums of squares well away from
    zero regardless of input magnitude.
    """
    m = _check_lengths(x, y)
    if m < 2:
        return None
    minx, maxx = min(x), max(x)
    miny, maxy = min(y), max(y)
    if minx == maxx or miny == maxy:
        return None
    rx = maxx - minx
    ry = maxy - miny
    xs = [(a - minx) / rx for a in x]
    ys = [(b - miny) / ry for b in y]
    xbar = sum(xs) / m
    ybar = sum(ys) / m
    sxy = 0.0
    sxx = 0.0
    syy = 0.0
    for a, b in zip(xs, ys):
        da = a - xbar
        db = b - ybar
        sxy = sxy + da * db
        sxx = sxx + da * da
        syy = syy + db * db
    r = sxy / (math.sqrt(sxx) * math.sqrt(syy))
    if r > 1.0:
        r = 1.0
    elif r < -1.0:
        r = -1.0
    return (1.0 + r) / 2.0


METRICS = {
    "euclidean": similarity_euclidean,
    "cosine": similarity_cosine,
    "pearson": similarity_pearson,
}


@dataclass(frozen=True)
class SimilarityConfig:
    metric: str = "euclidean"
    selected: tuple[str, ...] = ()
    threshold: float = 0.5

    def __post_init__(self) -> None:
        if self.metric not in METRICS:
            raise ValueError(
                f"unknown metric {self.metric!r}; choose from {', '.join(sorted(METRICS))}"
            )
        if not 0.0 <= self.threshold <= 1.0:
            raise ValueError("threshold must lie in [0, 1]")
        object.__setattr__(self, "selected", tuple(self.selected))


@dataclass(frozen=True)
class SimilarityResult:
    """Scores of every node against the focus.

    ``scores[focus]`` is forced to 1.0; ``None`` marks an undefined score.
    ``qualifying`` holds non-focus nodes with a defined score at or above the
    threshold. ``undefined`` and ``dropped`` feed warning events.
    """

    focus: str
    scores: dict[str, float | None]
    qualifying: frozenset[str]
    undefined: tuple[str, ...]
    dropped: tuple[str, ...]


def compute_similarities(
    g: MultivariateGraph, focus: str, cfg: SimilarityConfig
) -> SimilarityResult:
    """Score all nodes against ``focus`` on the selected attributes.

    Normalization happens here (zero-range columns drop out); a node with any
    missing value among the kept attributes scores ``None``, as does the
    whole population when the focus itself has a missing value.
    """
    if not g.has_node(focus):
        raise UnknownNodeError(f"unknown focus node {focus!r}")
    norm = normalize_attributes(g, list(cfg.selected))
    metric = METRICS[cfg.metric]

    rows = {node.id: row for node, row in zip(g.nodes, norm.matrix)}
    focus_row = rows[focus]
    focus_defined = all(v is not None for v in focus_row)

    scores: dict[str, float | None] = {}
    for node_id in g.node_ids:
        if node_id == focus:
            scores[node_id] = 1.0
            continue
        row = rows[node_id]
        if not focus_defined or any(v is None for v in row):
            scores[node_id] = None
            continue
        scores[node_id] = metric(focus_row, row)

    qualifying = frozenset(
        node_id
        for node_id in g.node_ids
        if node_id != focus
        and scores[node_id] is not None
        and scores[node_id] >= cfg.threshold
    )
    undefined = tuple(node_id for node_id in g.node_ids if scores[node_id] is None)
    return SimilarityResult(
        focus=focus,
        scores=scores,
        qualifying=qualifying,
        undefined=undefined,
        dropped=norm.dropped,
    )
