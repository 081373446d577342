"""Session state machine and the newline-delimited command/event protocol.

A session is an immutable value; :func:`apply_command` maps (session, command)
to (new session, events) and never mutates its inputs.  Commands that fail
validation, or that arrive in a state where they make no sense, produce a
single error event and leave the session unchanged.

Wire format, one JSON document per line, UTF-8:

* command: ``{"cmd": <name>, ...args}``
* event: ``{"type": "frame" | "warning" | "error", "payload": {...}}``

Command vocabulary and arguments:

======================  =====================================================
``LoadGraph``           ``graph`` (graph-json object) or ``usecaseSeed`` (int)
``RunBaseLayout``       optional ``params`` object: ``idealEdgeLength``,
                        ``repulsionStrength``, ``coolingSteps``, ``seed``
``ActivateLens``        ``center`` = [x, y], ``radius``, optional
                        ``pushMargin``
``DeactivateLens``      no arguments, instant restore of the base layout
``MoveLens``            ``center`` = [x, y]
``ResizeLens``          ``radius``
``SelectFocus``         ``id``
``SetAttributes``       ``names`` = [str, ...], non-empty
``SetMetric``           ``metric`` = euclidean | cosine | pearson
``SetThreshold``        ``t`` in [0, 1]
``SetGuideMode``        ``mode`` = off | equidistant | per-node | dynamic,
                        optional ``k`` (equidistant), optional ``cursor`` and
                        ``snap`` (dynamic)
``SetEdgeFilter``       ``mode`` = off | incident | interior
``SetCursor``           ``x``, ``y``
``Tick``                optional ``n`` >= 1, default 1
``ExportScene``         no arguments
``ExportSvg``           no arguments
======================  =====================================================

Frame payloads carry ``{"scene": <scene document>}`` except for ``ExportSvg``
which carries ``{"svg": <svg text>}``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace

from .errors import LensGraphError, ProtocolError, UnknownNodeError
from .graph import MultivariateGraph, generate_usecase_graph, graph_from_document
from .layout import LayoutParams, LayoutState, run_layout
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
    step_transition,
)
from .scene import (
    SceneEdge,
    SceneLens,
    SceneNode,
    SceneSnapshot,
    export_svg,
    scene_to_document,
)
from .similarity import METRICS, SimilarityConfig, SimilarityResult, compute_similarities

DEFAULT_STIFFNESS = 40.0

COMMAND_KINDS = (
    "LoadGraph",
    "RunBaseLayout",
    "ActivateLens",
    "DeactivateLens",
    "MoveLens",
    "ResizeLens",
    "SelectFocus",
    "SetAttributes",
    "SetMetric",
    "SetThreshold",
    "SetGuideMode",
    "SetEdgeFilter",
    "SetCursor",
    "Tick",
    "ExportScene",
    "ExportSvg",
)


@dataclass(frozen=True)
class Command:
    """A parsed protocol command: a kind plus its raw argument mapping."""

    kind: str
    args: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Session:
    """Complete engine state between commands.

    Structural invariants, preserved by every command:

    * ``layout_state`` is None unless ``graph`` is set
    * ``lens_config``, ``lens_layout``, ``similarity`` and ``transition`` are
      all set together or all None; a lens requires a base layout
    """

    graph: MultivariateGraph | None = None
    layout_state: LayoutState | None = None
    layout_params: LayoutParams | None = None
    sim_config: SimilarityConfig = field(default_factory=SimilarityConfig)
    lens_config: LensConfig | None = None
    lens_layout: LensLayout | None = None
    similarity: SimilarityResult | None = None
    transition: TransitionState | None = None
    frame_counter: int = 0
    stiffness: float = DEFAULT_STIFFNESS


def _reject_constant(token: str):
    raise ProtocolError(f"non-finite number {token!r} is not allowed on the wire")


def _loads(data: bytes | str) -> dict:
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        doc = json.loads(data, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise ProtocolError(f"malformed JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ProtocolError("wire document must be a JSON object")
    return doc


def _is_number(value) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _is_int(value) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def _check_point(value, name: str) -> None:
    if (
        not isinstance(value, list)
        or len(value) != 2
        or not all(_is_number(c) for c in value)
    ):
        raise ProtocolError(f"{name} must be a [x, y] pair of numbers")


# arg name -> structural check; None marks args validated in _parse_extra
_ARG_SPECS = {
    "LoadGraph": ("graph", "usecaseSeed"),
    "RunBaseLayout": ("params",),
    "ActivateLens": ("center", "radius", "pushMargin"),
    "DeactivateLens": (),
    "MoveLens": ("center",),
    "ResizeLens": ("radius",),
    "SelectFocus": ("id",),
    "SetAttributes": ("names",),
    "SetMetric": ("metric",),
    "SetThreshold": ("t",),
    "SetGuideMode": ("mode", "k", "cursor", "snap"),
    "SetEdgeFilter": ("mode",),
    "SetCursor": ("x", "y"),
    "Tick": ("n",),
    "ExportScene": (),
    "ExportSvg": (),
}
_LAYOUT_PARAM_KEYS = ("idealEdgeLength", "repulsionStrength", "coolingSteps", "seed")


def parse_command(line: bytes | str) -> Command:
    """Parse and structurally validate one wire command line."""
    doc = _loads(line)
    kind = doc.get("cmd")
    if kind not in COMMAND_KINDS:
        raise ProtocolError(f"unknown command {kind!r}")
    args = {k: v for k, v in doc.items() if k != "cmd"}
    allowed = _ARG_SPECS[kind]
    for key in args:
        if key not in allowed:
            raise ProtocolError(f"unexpected argument {key!r} for {kind}")
    _validate_args(kind, args)
    return Command(kind, args)


def _validate_args(kind: str, args: dict) -> None:
    if kind == "LoadGraph":
        if ("graph" in args) == ("usecaseSeed" in args):
            raise ProtocolError("LoadGraph takes exactly one of 'graph' or 'usecaseSeed'")
        if "graph" in args and not isinstance(args["graph"], dict):
            raise ProtocolError("'graph' must be a graph-json object")
        if "usecaseSeed" in args and not _is_int(args["usecaseSeed"]):
            raise ProtocolError("'usecaseSeed' must be an integer")
    elif kind == "RunBaseLayout":
        params = args.get("params", {})
        if not isinstance(params, dict):
            raise ProtocolError("'params' must be an object")
        for key, value in params.items():
            if key not in _LAYOUT_PARAM_KEYS:
                raise ProtocolError(f"unknown layout parameter {key!r}")
            if key in ("coolingSteps", "seed"):
                if not _is_int(value):
                    raise ProtocolError(f"layout parameter {key!r} must be an integer")
            elif not _is_number(value):
                raise ProtocolError(f"layout parameter {key!r} must be a number")
    elif kind in ("ActivateLens", "MoveLens"):
        _check_point(args.get("center"), "'center'")
        if kind == "ActivateLens":
            if not _is_number(args.get("radius")):
                raise ProtocolError("'radius' must be a number")
            if "pushMargin" in args and not _is_number(args["pushMargin"]):
                raise ProtocolError("'pushMargin' must be a number")
    elif kind == "ResizeLens":
        if not _is_number(args.get("radius")):
            raise ProtocolError("'radius' must be a number")
    elif kind == "SelectFocus":
        if not isinstance(args.get("id"), str):
            raise ProtocolError("'id' must be a string")
    elif kind == "SetAttributes":
        names = args.get("names")
        if not isinstance(names, list) or not all(isinstance(n, str) for n in names):
            raise ProtocolError("'names' must be a list of strings")
    elif kind == "SetMetric":
        if not isinstance(args.get("metric"), str):
            raise ProtocolError("'metric' must be a string")
    elif kind == "SetThreshold":
        if not _is_number(args.get("t")):
            raise ProtocolError("'t' must be a number")
    elif kind == "SetGuideMode":
        if not isinstance(args.get("mode"), str):
            raise ProtocolError("'mode' must be a string")
        if "k" in args and not (_is_int(args["k"]) and args["k"] >= 1):
            raise ProtocolError("'k' must be an integer >= 1")
        if "cursor" in args:
            _check_point(args["cursor"], "'cursor'")
        if "snap" in args and not isinstance(args["snap"], bool):
            raise ProtocolError("'snap' must be a boolean")
    elif kind == "SetEdgeFilter":
        if not isinstance(args.get("mode"), str):
            raise ProtocolError("'mode' must be a string")
    elif kind == "SetCursor":
        if not _is_number(args.get("x")) or not _is_number(args.get("y")):
            raise ProtocolError("'x' and 'y' must be numbers")
    elif kind == "Tick":
        if "n" in args and not (_is_int(args["n"]) and args["n"] >= 1):
            raise ProtocolError("'n' must be an integer >= 1")


def serialize_command(command: Command) -> bytes:
    """Encode a command as one full-precision JSON line."""
    doc = {"cmd": command.kind, **command.args}
    text = json.dumps(doc, sort_keys=True, separators=(",", ":"), allow_nan=False)
    return (text + "\n").encode("utf-8")


def serialize_event(event: dict) -> bytes:
    """Encode an event as one full-precision JSON line."""
    text = json.dumps(event, sort_keys=True, separators=(",", ":"), allow_nan=False)
    return (text + "\n").encode("utf-8")


def parse_event(line: bytes | str) -> dict:
    """Parse one event line, checking the type/payload envelope."""
    doc = _loads(line)
    if doc.get("type") not in ("frame", "warning", "error"):
        raise ProtocolError(f"unknown event type {doc.get('type')!r}")
    if not isinstance(doc.get("payload"), dict):
        raise ProtocolError("event payload must be an object")
    return doc


def _error_event(message: str) -> dict:
    return {"type": "error", "payload": {"message": message}}


def _warning_event(message: str) -> dict:
    return {"type": "warning", "payload": {"message": message}}


def _current_positions(session: Session) -> dict:
    if session.transition is not None:
        return session.transition.current
    return session.layout_state.positions


def _need_graph(session: Session) -> None:
    if session.graph is None:
        raise ProtocolError("no graph loaded")


def _need_layout(session: Session) -> None:
    _need_graph(session)
    if session.layout_state is None:
        raise ProtocolError("base layout has not been run")


def _need_lens(session: Session) -> None:
    _need_layout(session)
    if session.lens_config is None:
        raise ProtocolError("lens is not active")


def snapshot_scene(session: Session) -> SceneSnapshot:
    """Render the current session state as a canonical scene snapshot."""
    _need_layout(session)
    g = session.graph
    positions = _current_positions(session)
    lens_layout = session.lens_layout
    roles = lens_layout.roles if lens_layout is not None else {}
    scalars = lens_layout.similarity_scalars if lens_layout is not None else {}
    max_degree = max((node.degree for node in g.nodes), default=0)
    nodes = []
    for node in g.nodes:
        x, y = positions[node.id]
        nodes.append(
            SceneNode(
                id=node.id,
                x=x,
                y=y,
                size_scalar=node.degree / max_degree if max_degree > 0 else 1.0,
                role=roles.get(node.id, "context"),
                similarity_scalar=scalars.get(node.id),
            )
        )
    visible = None
    if session.lens_config is not None:
        visible = compute_edge_visibility(g, positions, session.lens_config)
    max_weight = max((edge.weight for edge in g.edges), default=0.0)
    edges = []
    for edge in g.edges:
        edges.append(
            SceneEdge(
                source=edge.source,
                target=edge.target,
                width_scalar=edge.weight / max_weight if max_weight > 0 else 1.0,
                visible=True if visible is None else (edge.source, edge.target) in visible,
            )
        )
    lens = None
    if session.lens_config is not None:
        guides = compute_radial_guides(session.lens_config, lens_layout)
        lens = SceneLens(
            center=session.lens_config.center,
            radius=session.lens_config.radius,
            guide_radii=guides,
            focus_id=lens_layout.focus,
        )
    settled = session.transition.settled if session.transition is not None else True
    return SceneSnapshot(
        frame=session.frame_counter,
        nodes=tuple(nodes),
        edges=tuple(edges),
        lens=lens,
        transition_settled=settled,
    )


def _emit_frame(session: Session, warnings=(), svg: bool = False):
    """Bump the frame counter, snapshot, and assemble the event list."""
    bumped = replace(session, frame_counter=session.frame_counter + 1)
    snapshot = snapshot_scene(bumped)
    if svg:
        payload = {"svg": export_svg(snapshot).decode("utf-8")}
    else:
        payload = {"scene": scene_to_document(snapshot)}
    events = [*warnings, {"type": "frame", "payload": payload}]
    return bumped, events


def _lens_warnings(
    result: SimilarityResult | None, lens_layout: LensLayout
) -> list[dict]:
    warnings = []
    if result is not None:
        if result.dropped:
            warnings.append(
                _warning_event(
                    "attributes dropped from the selection: " + ", ".join(result.dropped)
                )
            )
        if result.undefined:
            warnings.append(
                _warning_event(
                    f"similarity undefined for {len(result.undefined)} node(s): "
                    + ", ".join(result.undefined)
                )
            )
    if not lens_layout.overlap_resolved:
        warnings.append(
            _warning_event("angular overlap inside the lens could not be fully resolved")
        )
    return warnings


def _rebuild_lens(
    session: Session,
    focus: str,
    radius: float,
    guide_mode: GuideMode,
    edge_filter: str,
    push_margin: float,
    recompute_similarity: bool,
):
    """Recompute the lens pipeline around ``focus`` and start a new transition.

    The transition always departs from the currently rendered positions so a
    mid-animation change stays smooth.
    """
    g = session.graph
    center = session.layout_state.positions[focus]
    if recompute_similarity:
        result = compute_similarities(g, focus, session.sim_config)
    else:
        result = session.similarity
    lens_config = LensConfig(
        center=center,
        radius=radius,
        sim=session.sim_config,
        guide_mode=guide_mode,
        edge_filter=edge_filter,
        push_margin=push_margin,
    )
    lens_layout = compute_lens_layout(session.layout_state, g, lens_config, result)
    transition = begin_transition(
        _current_positions(session), lens_layout.targets, session.stiffness
    )
    new = replace(
        session,
        lens_config=lens_config,
        lens_layout=lens_layout,
        similarity=result,
        transition=transition,
    )
    warnings = _lens_warnings(result if recompute_similarity else None, lens_layout)
    return _emit_frame(new, warnings)


def _cmd_load_graph(session: Session, args: dict):
    if "graph" in args:
        g = graph_from_document(args["graph"])
    else:
        g = generate_usecase_graph(args["usecaseSeed"])
    return Session(graph=g, stiffness=session.stiffness), []


def _cmd_run_base_layout(session: Session, args: dict):
    _need_graph(session)
    params = args.get("params", {})
    layout_params = LayoutParams(
        ideal_edge_length=float(params.get("idealEdgeLength", 30.0)),
        repulsion_strength=float(params.get("repulsionStrength", 1.0)),
        cooling_steps=int(params.get("coolingSteps", 300)),
        seed=int(params.get("seed", 0)),
    )
    state = run_layout(session.graph, layout_params)
    new = replace(
        session,
        layout_state=state,
        layout_params=layout_params,
        lens_config=None,
        lens_layout=None,
        similarity=None,
        transition=None,
    )
    return _emit_frame(new)


def _cmd_activate_lens(session: Session, args: dict):
    _need_layout(session)
    if not session.sim_config.selected:
        raise ProtocolError("select at least one attribute before activating the lens")
    cx, cy = args["center"]
    focus = pick_focus(session.layout_state, (float(cx), float(cy)))
    if session.lens_config is not None:
        guide_mode = session.lens_config.guide_mode
        edge_filter = session.lens_config.edge_filter
    else:
        guide_mode = GuideMode()
        edge_filter = "off"
    return _rebuild_lens(
        session,
        focus=focus,
        radius=float(args["radius"]),
        guide_mode=guide_mode,
        edge_filter=edge_filter,
        push_margin=float(args.get("pushMargin", 0.08)),
        recompute_similarity=True,
    )


def _cmd_deactivate_lens(session: Session, args: dict):
    _need_lens(session)
    new = replace(
        session,
        lens_config=None,
        lens_layout=None,
        similarity=None,
        transition=None,
    )
    return _emit_frame(new)


def _cmd_move_lens(session: Session, args: dict):
    _need_lens(session)
    cx, cy = args["center"]
    focus = pick_focus(session.layout_state, (float(cx), float(cy)))
    if focus == session.lens_layout.focus:
        # lens stays snapped to the same focus, nothing to recompute
        return _emit_frame(session)
    cfg = session.lens_config
    return _rebuild_lens(
        session,
        focus=focus,
        radius=cfg.radius,
        guide_mode=cfg.guide_mode,
        edge_filter=cfg.edge_filter,
        push_margin=cfg.push_margin,
        recompute_similarity=True,
    )


def _cmd_resize_lens(session: Session, args: dict):
    _need_lens(session)
    cfg = session.lens_config
    return _rebuild_lens(
        session,
        focus=session.lens_layout.focus,
        radius=float(args["radius"]),
        guide_mode=cfg.guide_mode,
        edge_filter=cfg.edge_filter,
        push_margin=cfg.push_margin,
        recompute_similarity=False,
    )


def _cmd_select_focus(session: Session, args: dict):
    _need_lens(session)
    node_id = args["id"]
    if not session.graph.has_node(node_id):
        raise UnknownNodeError(f"unknown node id {node_id!r}")
    cfg = session.lens_config
    return _rebuild_lens(
        session,
        focus=node_id,
        radius=cfg.radius,
        guide_mode=cfg.guide_mode,
        edge_filter=cfg.edge_filter,
        push_margin=cfg.push_margin,
        recompute_similarity=True,
    )


def _update_sim_config(session: Session, sim_config: SimilarityConfig):
    """Store a new similarity configuration, rebuilding the lens if active."""
    new = replace(session, sim_config=sim_config)
    if new.lens_config is None:
        if new.layout_state is not None:
            return _emit_frame(new)
        return new, []
    cfg = new.lens_config
    return _rebuild_lens(
        new,
        focus=new.lens_layout.focus,
        radius=cfg.radius,
        guide_mode=cfg.guide_mode,
        edge_filter=cfg.edge_filter,
        push_margin=cfg.push_margin,
        recompute_similarity=True,
    )


def _cmd_set_attributes(session: Session, args: dict):
    _need_graph(session)
    names = args["names"]
    if not names:
        raise ProtocolError("attribute selection must not be empty")
    for name in names:
        session.graph.schema.index_of(name)
    if len(set(names)) != len(names):
        raise ProtocolError("attribute selection contains duplicates")
    return _update_sim_config(session, replace(session.sim_config, selected=tuple(names)))


def _cmd_set_metric(session: Session, args: dict):
    _need_graph(session)
    metric = args["metric"]
    if metric not in METRICS:
        raise ProtocolError(
            f"unknown metric {metric!r}; expected one of: " + ", ".join(sorted(METRICS))
        )
    return _update_sim_config(session, replace(session.sim_config, metric=metric))


def _cmd_set_threshold(session: Session, args: dict):
    _need_graph(session)
    t = float(args["t"])
    if not 0.0 <= t <= 1.0:
        raise ProtocolError("threshold must lie in [0, 1]")
    return _update_sim_config(session, replace(session.sim_config, threshold=t))


def _cmd_set_guide_mode(session: Session, args: dict):
    _need_lens(session)
    mode = GuideMode(
        kind=args["mode"],
        k=args.get("k", 4),
        cursor=tuple(float(c) for c in args.get("cursor", (0.0, 0.0))),
        snap=args.get("snap", False),
    )
    new = replace(session, lens_config=replace(session.lens_config, guide_mode=mode))
    return _emit_frame(new)


def _cmd_set_edge_filter(session: Session, args: dict):
    _need_lens(session)
    mode = args["mode"]
    if mode not in ("off", "incident", "interior"):
        raise ProtocolError(f"unknown edge filter {mode!r}")
    new = replace(session, lens_config=replace(session.lens_config, edge_filter=mode))
    return _emit_frame(new)


def _cmd_set_cursor(session: Session, args: dict):
    _need_lens(session)
    cursor = (float(args["x"]), float(args["y"]))
    mode = replace(session.lens_config.guide_mode, cursor=cursor)
    new = replace(session, lens_config=replace(session.lens_config, guide_mode=mode))
    return _emit_frame(new)


def _cmd_tick(session: Session, args: dict):
    _need_layout(session)
    n = args.get("n", 1)
    transition = session.transition
    if transition is not None:
        for _ in range(n):
            transition = step_transition(transition)
            if transition.settled:
                break
        session = replace(session, transition=transition)
    return _emit_frame(session)


def _cmd_export_scene(session: Session, args: dict):
    _need_layout(session)
    return _emit_frame(session)


def _cmd_export_svg(session: Session, args: dict):
    _need_layout(session)
    return _emit_frame(session, svg=True)


_HANDLERS = {
    "LoadGraph": _cmd_load_graph,
    "RunBaseLayout": _cmd_run_base_layout,
    "ActivateLens": _cmd_activate_lens,
    "DeactivateLens": _cmd_deactivate_lens,
    "MoveLens": _cmd_move_lens,
    "ResizeLens": _cmd_resize_lens,
    "SelectFocus": _cmd_select_focus,
    "SetAttributes": _cmd_set_attributes,
    "SetMetric": _cmd_set_metric,
    "SetThreshold": _cmd_set_threshold,
    "SetGuideMode": _cmd_set_guide_mode,
    "SetEdgeFilter": _cmd_set_edge_filter,
    "SetCursor": _cmd_set_cursor,
    "Tick": _cmd_tick,
    "ExportScene": _cmd_export_scene,
    "ExportSvg": _cmd_export_svg,
}


def apply_command(session: Session, command: Command):
    """Apply one command, returning ``(new_session, events)``.

    Any domain error is converted into a single error event and the session
    is returned unchanged.
    """
    handler = _HANDLERS.get(command.kind)
    if handler is None:
        return session, [_error_event(f"unknown command {command.kind!r}")]
    try:
        return handler(session, command.args)
    except (LensGraphError, ValueError) as exc:
        return session, [_error_event(str(exc))]


def run_script(lines) -> list[bytes]:
    """Drive a fresh session through serialized command lines.

    Returns the serialized event lines in emission order.  Blank lines are
    skipped.  Used by the batch CLI and by golden-stream tests.
    """
    session = Session()
    out: list[bytes] = []
    for line in lines:
        stripped = line.strip()
        if not stripped:
            continue
        try:
            command = parse_command(stripped)
        except ProtocolError as exc:
            out.append(serialize_event(_error_event(str(exc))))
            continue
        session, events = apply_command(session, command)
        out.extend(serialize_event(event) for event in events)
    return out
