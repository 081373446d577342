"""Multivariate graph model: ingestion, normalization, synthetic demo data.

Nodes carry a fixed-length vector of quantitative attributes (``None`` marks a
missing value). Edges are undirected, positively weighted, and stored once per
unordered pair. All constructors validate and canonicalize (nodes sorted by id,
edges sorted by endpoint pair), so serialization is deterministic.
"""

from __future__ import annotations

import csv
import io
import json
import math
import random
from dataclasses import dataclass, field
from typing import IO, Iterable, Sequence

from .errors import AttributeSelectionError, GraphFormatError

__all__ = [
    "AttributeSchema",
    "Node",
    "Edge",
    "MultivariateGraph",
    "NormalizedAttributes",
    "load_graph",
    "load_graph_json",
    "load_graph_csv",
    "serialize_graph",
    "normalize_attributes",
    "generate_usecase_graph",
]


@dataclass(frozen=True)
class AttributeSchema:
    """Ordered attribute identifiers; ``count`` is always ``len(names)``."""

    names: tuple[str, ...]

    def __post_init__(self) -> None:
        if any(not n for n in self.names):
            raise GraphFormatError("attribute names must be non-empty")
        if len(set(self.names)) != len(self.names):
            raise GraphFormatError("attribute names must be unique")

    @property
    def count(self) -> int:
        return len(self.names)

    def index_of(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise AttributeSelectionError(
                f"unknown attribute {name!r}; valid attributes: {', '.join(self.names)}"
            ) from None


@dataclass(frozen=True)
class Node:
    id: str
    attributes: tuple[float | None, ...]
    degree: int = 0


@dataclass(frozen=True)
class Edge:
    source: str
    target: str
    weight: float


@dataclass(frozen=True)
class MultivariateGraph:
    nodes: tuple[Node, ...]
    edges: tuple[Edge, ...]
    schema: AttributeSchema

    @classmethod
    def create(
        cls,
        schema: AttributeSchema,
        nodes: Iterable[tuple[str, Sequence[float | None]]],
        edges: Iterable[tuple[str, str, float]],
    ) -> "MultivariateGraph":
        """Validate raw node/edge data and build a canonical graph.

        Duplicate undirected edges are merged by summing their weights;
        duplicate node ids, dangling endpoints, self-loops, non-positive
        weights, and non-finite attribute values are rejected.
        """
        attr_by_id: dict[str, tuple[float | None, ...]] = {}
        for node_id, attrs in nodes:
            if not isinstance(node_id, str) or not node_id:
                raise GraphFormatError(f"invalid node id {node_id!r}")
            if node_id in attr_by_id:
                raise GraphFormatError(f"duplicate node id {node_id!r}")
            if len(attrs) != schema.count:
                raise GraphFormatError(
                    f"node {node_id!r} has {len(attrs)} attribute values, expected {schema.count}"
                )
            vec = []
            for name, value in zip(schema.names, attrs):
                if value is None:
                    vec.append(None)
                    continue
                value = float(value)
                if not math.isfinite(value):
                    raise GraphFormatError(
                        f"node {node_id!r} attribute {name!r} is non-finite; use a missing marker"
                    )
                vec.append(value)
            attr_by_id[node_id] = tuple(vec)

        merged: dict[tuple[str, str], float] = {}
        for source, target, weight in edges:
            for endpoint in (source, target):
                if endpoint not in attr_by_id:
                    raise GraphFormatError(f"edge endpoint {endpoint!r} is not a defined node")
            if source == target:
                raise GraphFormatError(f"self-loop on node {source!r}")
            weight = float(weight)
            if not math.isfinite(weight) or weight <= 0.0:
                raise GraphFormatError(
                    f"edge ({source!r}, {target!r}) has invalid weight {weight!r}"
                )
            key = (source, target) if source < target else (target, source)
            merged[key] = merged.get(key, 0.0) + weight

        degrees = {node_id: 0 for node_id in attr_by_id}
        for source, target in merged:
            degrees[source] += 1
            degrees[target] += 1

        node_tuple = tuple(
            Node(id=node_id, attributes=attr_by_id[node_id], degree=degrees[node_id])
            for node_id in sorted(attr_by_id)
        )
        edge_tuple = tuple(
            Edge(source=source, target=target, weight=weight)
            for (source, target), weight in sorted(merged.items())
        )
        return cls(nodes=node_tuple, edges=edge_tuple, schema=schema)

    @property
    def node_ids(self) -> tuple[str, ...]:
        return tuple(node.id for node in self.nodes)

    def node(self, node_id: str) -> Node:
        index = self._index().get(node_id)
        if index is None:
            raise GraphFormatError(f"unknown node id {node_id!r}")
        return self.nodes[index]

    def has_node(self, node_id: str) -> bool:
        return node_id in self._index()

    def _index(self) -> dict[str, int]:
        cached = getattr(self, "_id_index", None)
        if cached is None:
            cached = {node.id: i for i, node in enumerate(self.nodes)}
            object.__setattr__(self, "_id_index", cached)
        return cached


@dataclass(frozen=True)
class NormalizedAttributes:
    """Min-max scaled attribute matrix, rows aligned with ``graph.nodes``.

    ``kept`` lists the surviving attribute names in selection order; columns
    whose population range is zero (or that have no present value at all) are
    dropped and reported in ``dropped``.
    """

    matrix: tuple[tuple[float | None, ...], ...]
    kept: tuple[str, ...]
    dropped: tuple[str, ...]
    per_attribute_min_max: tuple[tuple[float, float], ...]


def normalize_attributes(
    graph: MultivariateGraph, selected: Sequence[str]
) -> NormalizedAttributes:
    """Min-max scale the selected attribute columns to [0, 1] over all nodes.

    Missing values stay missing. Raises :class:`AttributeSelectionError` for an
    empty or unknown selection, or when every selected column is dropped.
    """
    if not selected:
        raise AttributeSelectionError("attribute selection is empty")
    if len(set(selected)) != len(selected):
        raise AttributeSelectionError("attribute selection contains duplicates")
    indices = [graph.schema.index_of(name) for name in selected]

    kept: list[str] = []
    dropped: list[str] = []
    kept_cols: list[int] = []
    min_max: list[tuple[float, float]] = []
    for name, col in zip(selected, indices):
        values = [n.attributes[col] for n in graph.nodes if n.attributes[col] is not None]
        if not values:
            dropped.append(name)
            continue
        lo, hi = min(values), max(values)
        if lo == hi:
            dropped.append(name)
            continue
        kept.append(name)
        kept_cols.append(col)
        min_max.append((lo, hi))

    if not kept:
        raise AttributeSelectionError(
            f"no usable attributes in selection; dropped: {', '.join(dropped)}"
        )

    rows = []
    for node in graph.nodes:
        row = []
        for col, (lo, hi) in zip(kept_cols, min_max):
            value = node.attributes[col]
            row.append(None if value is None else (value - lo) / (hi - lo))
        rows.append(tuple(row))

    return NormalizedAttributes(
        matrix=tuple(rows),
        kept=tuple(kept),
        dropped=tuple(dropped),
        per_attribute_min_max=tuple(min_max),
    )


# ---------------------------------------------------------------------------
# Ingestion and serialization
# ---------------------------------------------------------------------------


def load_graph(source, fmt: str = "graph-json") -> MultivariateGraph:
    """Load a graph from ``source`` in the given format.

    ``graph-json`` takes a single document (bytes, str, or binary file);
    ``node-csv+edge-csv`` (alias ``csv``) takes a ``(nodes, edges)`` pair of
    sources.
    """
    if fmt == "graph-json":
        return load_graph_json(source)
    if fmt in ("node-csv+edge-csv", "csv"):
        try:
            nodes_src, edges_src = source
        except (TypeError, ValueError):
            raise GraphFormatError(
                "csv format needs a (node-csv, edge-csv) source pair"
            ) from None
        return load_graph_csv(nodes_src, edges_src)
    raise GraphFormatError(f"unknown graph format {fmt!r}")


def _read_text(source: bytes | str | IO) -> str:
    if isinstance(source, bytes):
        return source.decode("utf-8")
    if isinstance(source, str):
        return source
    data = source.read()
    return data.decode("utf-8") if isinstance(data, bytes) else data


def _reject_constant(token: str) -> float:
    raise GraphFormatError(f"non-finite number {token!r}; use null for missing values")


def load_graph_json(source: bytes | str | IO) -> MultivariateGraph:
    """Parse the one-document graph-json format.

    Layout: ``{"schema": [names...], "nodes": [{"id", "attrs": [...]}, ...],
    "edges": [{"source", "target", "weight"}, ...]}`` with ``null`` marking a
    missing attribute value.
    """
    try:
        doc = json.loads(_read_text(source), parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"malformed graph-json: {exc}") from exc
    return graph_from_document(doc)


def graph_from_document(doc) -> MultivariateGraph:
    """Validate and build a graph from an already-parsed graph-json document."""
    if not isinstance(doc, dict):
        raise GraphFormatError("graph-json document must be an object")
    for key in ("schema", "nodes", "edges"):
        if key not in doc:
            raise GraphFormatError(f"graph-json document missing {key!r}")

    schema_names = doc["schema"]
    if not isinstance(schema_names, list) or not all(isinstance(n, str) for n in schema_names):
        raise GraphFormatError("schema must be a list of attribute names")
    schema = AttributeSchema(names=tuple(schema_names))

    nodes = []
    for entry in doc["nodes"]:
        if not isinstance(entry, dict) or "id" not in entry or "attrs" not in entry:
            raise GraphFormatError(f"invalid node entry {entry!r}")
        attrs = entry["attrs"]
        if not isinstance(attrs, list):
            raise GraphFormatError(f"node {entry['id']!r} attrs must be a list")
        for v in attrs:
            if v is not None and (isinstance(v, bool) or not isinstance(v, (int, float))):
                raise GraphFormatError(f"node {entry['id']!r} has non-numeric attribute {v!r}")
        nodes.append((entry["id"], attrs))

    edges = []
    for entry in doc["edges"]:
        if not isinstance(entry, dict) or not {"source", "target", "weight"} <= set(entry):
            raise GraphFormatError(f"invalid edge entry {entry!r}")
        edges.append((entry["source"], entry["target"], entry["weight"]))

    return MultivariateGraph.create(schema, nodes, edges)


def load_graph_csv(nodes_source, edges_source) -> MultivariateGraph:
    """Parse the node-csv + edge-csv pair.

    Node header: ``id,<attr1>,...,<attrm>``; edge header:
    ``source,target,weight``. An empty cell is a missing value.
    """
    node_rows = list(csv.reader(io.StringIO(_read_text(nodes_source))))
    edge_rows = list(csv.reader(io.StringIO(_read_text(edges_source))))
    if not node_rows:
        raise GraphFormatError("node-csv is empty")
    if not edge_rows:
        raise GraphFormatError("edge-csv is empty")

    header = node_rows[0]
    if not header or header[0] != "id":
        raise GraphFormatError("node-csv header must start with 'id'")
    schema = AttributeSchema(names=tuple(header[1:]))

    def parse_cell(node_id: str, name: str, cell: str) -> float | None:
        if cell == "":
            return None
        try:
            value = float(cell)
        except ValueError:
            raise GraphFormatError(
                f"node {node_id!r} attribute {name!r}: cannot parse {cell!r}"
            ) from None
        return value

    nodes = []
    for row in node_rows[1:]:
        if not row:
            continue
        if len(row) != len(header):
            raise GraphFormatError(f"node-csv row {row!r} has {len(row)} cells, expected {len(header)}")
        node_id = row[0]
        attrs = [parse_cell(node_id, name, cell) for name, cell in zip(schema.names, row[1:])]
        nodes.append((node_id, attrs))

    if edge_rows[0] != ["source", "target", "weight"]:
        raise GraphFormatError("edge-csv header must be 'source,target,weight'")
    edges = []
    for row in edge_rows[1:]:
        if not row:
            continue
        if len(row) != 3:
            raise GraphFormatError(f"edge-csv row {row!r} must have 3 cells")
        try:
            weight = float(row[2])
        except ValueError:
            raise GraphFormatError(f"edge ({row[0]!r}, {row[1]!r}): cannot parse weight {row[2]!r}") from None
        edges.append((row[0], row[1], weight))

    return MultivariateGraph.create(schema, nodes, edges)


def graph_to_document(graph: MultivariateGraph) -> dict:
    """Graph as the plain graph-json document structure."""
    return {
        "schema": list(graph.schema.names),
        "nodes": [
            {"id": node.id, "attrs": list(node.attributes)} for node in graph.nodes
        ],
        "edges": [
            {"source": e.source, "target": e.target, "weight": e.weight}
            for e in graph.edges
        ],
    }


def serialize_graph(graph: MultivariateGraph) -> bytes:
    """Canonical graph-json bytes: sorted keys, full float precision.

    Full precision (not the scene's 6-decimal policy) so that
    ``load(serialize(g))`` reproduces ``g`` exactly.
    """
    doc = graph_to_document(graph)
    return (json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n").encode("utf-8")


# ---------------------------------------------------------------------------
# Synthetic use-case generator
# ---------------------------------------------------------------------------

USECASE_NODE_COUNT = 95
USECASE_EDGE_COUNT = 1046
USECASE_CLUB_COUNT = 10
# Node indices that always hold the goalkeeper profile; their two keeper
# attributes form a tight cluster far from every outfield player, so a
# similarity threshold around 0.5 isolates a small cohort.
USECASE_KEEPER_SLOTS = (7, 19, 34, 50, 66, 82)
USECASE_KEEPER_ATTRS = ("keeper_save_total", "keeper_missed")

# (name, category, typical maximum); categories drive per-position scaling.
_USECASE_ATTRIBUTES = (
    ("minutes_played", "base", 3400.0),
    ("matches_played", "base", 38.0),
    ("starts", "base", 34.0),
    ("goals_scored", "attack", 18.0),
    ("assists", "attack", 12.0),
    ("shots_total", "attack", 90.0),
    ("shots_on_goal", "attack", 45.0),
    ("shot_accuracy", "attack", 0.8),
    ("penalties_scored", "attack", 6.0),
    ("big_chances_created", "attack", 20.0),
    ("key_passes", "passing", 60.0),
    ("passes_total", "passing", 2400.0),
    ("pass_accuracy", "passing", 0.95),
    ("crosses_total", "passing", 120.0),
    ("cross_accuracy", "passing", 0.45),
    ("long_balls", "passing", 220.0),
    ("through_balls", "passing", 25.0),
    ("ball_possession", "passing", 0.12),
    ("touches", "passing", 2800.0),
    ("dribbles_completed", "attack", 70.0),
    ("dribble_success", "attack", 0.75),
    ("offsides", "attack", 16.0),
    ("corners_won", "attack", 30.0),
    ("tackles_won", "defense", 70.0),
    ("tackle_success", "defense", 0.85),
    ("interceptions", "defense", 60.0),
    ("clearances", "defense", 140.0),
    ("blocks", "defense", 35.0),
    ("duels_won", "defense", 220.0),
    ("aerial_duels_won", "defense", 90.0),
    ("fouls_committed", "discipline", 45.0),
    ("fouls_drawn", "discipline", 50.0),
    ("yellow_cards", "discipline", 9.0),
    ("red_cards", "discipline", 2.0),
    ("distance_covered_km", "physical", 320.0),
    ("sprints", "physical", 520.0),
    ("top_speed_kmh", "physical", 35.5),
    ("keeper_save_total", "keeper", 95.0),
    ("keeper_missed", "keeper", 45.0),
)

_POSITION_SCALE = {
    "base": {"GK": 0.9, "DF": 1.0, "MF": 1.0, "FW": 0.95},
    "attack": {"GK": 0.02, "DF": 0.25, "MF": 0.6, "FW": 1.0},
    "passing": {"GK": 0.3, "DF": 0.75, "MF": 1.0, "FW": 0.6},
    "defense": {"GK": 0.1, "DF": 1.0, "MF": 0.6, "FW": 0.2},
    "discipline": {"GK": 0.3, "DF": 1.0, "MF": 0.9, "FW": 0.8},
    "physical": {"GK": 0.45, "DF": 0.95, "MF": 1.0, "FW": 0.95},
}


def generate_usecase_graph(seed: int) -> MultivariateGraph:
    """Deterministic 95-node / 1046-edge / 39-attribute soccer-style graph.

    Club memberships induce clique-like communities (edge weight counts shared
    clubs); random background edges top the count up to exactly 1046. Six
    fixed slots hold goalkeepers whose two keeper attributes cluster tightly.
    """
    rng = random.Random(seed)
    n = USECASE_NODE_COUNT
    schema = AttributeSchema(names=tuple(name for name, _, _ in _USECASE_ATTRIBUTES))

    positions = []
    for i in range(n):
        if i in USECASE_KEEPER_SLOTS:
            positions.append("GK")
        else:
            positions.append(rng.choice(["DF", "DF", "MF", "MF", "MF", "FW", "FW"]))

    nodes = []
    for i in range(n):
        pos = positions[i]
        attrs: list[float | None] = []
        for name, category, max_value in _USECASE_ATTRIBUTES:
            if category == "keeper":
                if pos == "GK":
                    if name == "keeper_save_total":
                        value = 70.0 + 18.0 * rng.random()
                    else:
                        value = 22.0 + 12.0 * rng.random()
                else:
                    value = (4.0 if name == "keeper_save_total" else 3.0) * rng.random()
            else:
                scale = _POSITION_SCALE[category][pos]
                value = max_value * scale * (0.25 + 0.75 * rng.random())
                if rng.random() < 0.015:
                    attrs.append(None)
                    continue
            attrs.append(round(value, 1))
        nodes.append((f"p{i:02d}", attrs))

    memberships: list[list[int]] = []
    for i in range(n):
        clubs = [rng.randrange(USECASE_CLUB_COUNT)]
        if rng.random() < 0.30:
            other = rng.randrange(USECASE_CLUB_COUNT - 1)
            if other >= clubs[0]:
                other += 1
            clubs.append(other)
        memberships.append(clubs)

    shared: dict[tuple[int, int], int] = {}
    for club in range(USECASE_CLUB_COUNT):
        members = [i for i in range(n) if club in memberships[i]]
        for a in range(len(members)):
            for b in range(a + 1, len(members)):
                key = (members[a], members[b])
                shared[key] = shared.get(key, 0) + 1

    pairs = {key: float(count) for key, count in shared.items()}
    if len(pairs) > USECASE_EDGE_COUNT:
        ordered = sorted(pairs)
        for index in sorted(
            rng.sample(range(len(ordered)), len(pairs) - USECASE_EDGE_COUNT), reverse=True
        ):
            del pairs[ordered[index]]
    while len(pairs) < USECASE_EDGE_COUNT:
        a = rng.randrange(n)
        b = rng.randrange(n)
        if a == b:
            continue
        key = (a, b) if a < b else (b, a)
        if key in pairs:
            continue
        pairs[key] = 1.0

    edges = [
        (f"p{a:02d}", f"p{b:02d}", weight) for (a, b), weight in sorted(pairs.items())
    ]
    return MultivariateGraph.create(schema, nodes, edges)
