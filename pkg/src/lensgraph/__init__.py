"""Comparison-lens engine for multivariate node-link diagrams.

The package computes a deterministic force-directed base layout, scores all
nodes against a focus node with a choice of similarity metrics, and locally
rearranges the neighborhood of the focus inside a movable lens: similar nodes
are pulled toward the center (distance encodes similarity), dissimilar nodes
inside the lens are pushed just beyond its border, and everything else stays
put. Transitions animate as critically damped springs. A session state
machine exposes the whole pipeline over a command/event protocol consumed by
the CLI and the web client.
"""

from .errors import (
    AttributeSelectionError,
    GraphFormatError,
    LensGraphError,
    ProtocolError,
    UnknownNodeError,
)
from .graph import (
    AttributeSchema,
    Edge,
    MultivariateGraph,
    Node,
    NormalizedAttributes,
    generate_usecase_graph,
    graph_from_document,
    load_graph,
    load_graph_csv,
    load_graph_json,
    normalize_attributes,
    serialize_graph,
)
from .layout import LayoutParams, LayoutState, init_layout, run_layout, step_layout
from .lens import (
    GuideMode,
    LensConfig,
    LensLayout,
    TransitionState,
    begin_transition,
    compute_lens_layout,
    compute_edge_visibility,
    compute_radial_guides,
    pick_focus,
    radius_for_similarity,
    step_transition,
)
from .scene import (
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
from .session import (
    Command,
    Session,
    apply_command,
    parse_command,
    parse_event,
    run_script,
    serialize_command,
    serialize_event,
    snapshot_scene,
)
from .similarity import (
    METRICS,
    SimilarityConfig,
    SimilarityResult,
    compute_similarities,
    similarity_cosine,
    similarity_euclidean,
    similarity_pearson,
)

__version__ = "0.1.0"

__all__ = [
    "AttributeSchema",
    "AttributeSelectionError",
    "Command",
    "Edge",
    "GraphFormatError",
    "GuideMode",
    "LayoutParams",
    "LayoutState",
    "LensConfig",
    "LensGraphError",
    "LensLayout",
    "METRICS",
    "MultivariateGraph",
    "Node",
    "NormalizedAttributes",
    "ProtocolError",
    "SceneEdge",
    "SceneLens",
    "SceneNode",
    "SceneSnapshot",
    "Session",
    "SimilarityConfig",
    "SimilarityResult",
    "TransitionState",
    "UnknownNodeError",
    "apply_command",
    "begin_transition",
    "compute_edge_visibility",
    "compute_lens_layout",
    "compute_radial_guides",
    "compute_similarities",
    "export_svg",
    "generate_usecase_graph",
    "graph_from_document",
    "init_layout",
    "load_graph",
    "load_graph_csv",
    "load_graph_json",
    "normalize_attributes",
    "parse_command",
    "parse_event",
    "parse_scene",
    "pick_focus",
    "radius_for_similarity",
    "run_layout",
    "run_script",
    "scene_from_document",
    "scene_to_document",
    "serialize_command",
    "serialize_event",
    "serialize_graph",
    "serialize_scene",
    "similarity_cosine",
    "similarity_euclidean",
    "similarity_pearson",
    "snapshot_scene",
    "step_layout",
    "step_transition",
    "__version__",
]
