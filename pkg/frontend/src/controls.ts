/**
 * Control panel model: attribute picker, metric, threshold, guide and
 * edge-filter modes.
 *
 * The picker is a grouped multi-select that starts with nothing selected;
 * lens activation stays disabled until at least one attribute is chosen.
 * Every state change maps to exactly one protocol command.
 */

import type {
  Command,
  EdgeFilterName,
  GuideModeName,
  Metric,
} from "./protocol.js";
import {
  setAttributes,
  setEdgeFilter,
  setGuideMode,
  setMetric,
  setThreshold,
} from "./protocol.js";

export interface AttributeGroup {
  label: string;
  names: string[];
}

// Category table for the player-statistics demo schema; anything not
// listed falls into a trailing group so arbitrary graphs still work.
const CATEGORY_TABLE: [string, string[]][] = [
  ["Participation", ["minutes_played", "matches_played", "starts"]],
  [
    "Attacking",
    [
      "goals_scored",
      "assists",
      "shots_total",
      "shots_on_goal",
      "shot_accuracy",
      "penalties_scored",
      "big_chances_created",
      "offsides",
    ],
  ],
  [
    "Passing",
    [
      "key_passes",
      "passes_total",
      "pass_accuracy",
      "crosses_total",
      "cross_accuracy",
      "long_balls",
      "through_balls",
      "corners_won",
    ],
  ],
  [
    "Possession",
    ["ball_possession", "touches", "dribbles_completed", "dribble_success"],
  ],
  [
    "Defending",
    [
      "tackles_won",
      "tackle_success",
      "interceptions",
      "clearances",
      "blocks",
      "duels_won",
      "aerial_duels_won",
    ],
  ],
  [
    "Discipline",
    ["fouls_committed", "fouls_drawn", "yellow_cards", "red_cards"],
  ],
  ["Physical", ["distance_covered_km", "sprints", "top_speed_kmh"]],
  ["Goalkeeping", ["keeper_save_total", "keeper_missed"]],
];

/** Partition schema names into labeled picker groups, preserving order. */
export function groupAttributes(names: string[]): AttributeGroup[] {
  const present = new Set(names);
  const placed = new Set<string>();
  const groups: AttributeGroup[] = [];
  for (const [label, members] of CATEGORY_TABLE) {
    const hits = members.filter((name) => present.has(name));
    if (hits.length > 0) {
      groups.push({ label, names: hits });
      for (const name of hits) placed.add(name);
    }
  }
  const rest = names.filter((name) => !placed.has(name));
  if (rest.length > 0) {
    groups.push({ label: "Other", names: rest });
  }
  return groups;
}

export interface ControlsState {
  schema: string[];
  selected: Set<string>;
  metric: Metric;
  threshold: number;
  guideMode: GuideModeName;
  guideK: number;
  edgeFilter: EdgeFilterName;
}

export function initialControls(): ControlsState {
  return {
    schema: [],
    selected: new Set(),
    metric: "euclidean",
    threshold: 0.5,
    guideMode: "off",
    guideK: 4,
    edgeFilter: "off",
  };
}

/** The lens may only activate once at least one attribute is selected. */
export function canActivateLens(state: ControlsState): boolean {
  return state.selected.size > 0;
}

/** Selected names in schema order, the shape SetAttributes expects. */
export function selectedNames(state: ControlsState): string[] {
  return state.schema.filter((name) => state.selected.has(name));
}

/**
 * Toggle one attribute checkbox. Returns the SetAttributes command for the
 * new selection, or null when the selection became empty (the engine
 * rejects an empty list; the caller deactivates the lens instead).
 */
export function toggleAttribute(
  state: ControlsState,
  name: string,
): Command | null {
  if (state.selected.has(name)) {
    state.selected.delete(name);
  } else {
    state.selected.add(name);
  }
  const names = selectedNames(state);
  return names.length > 0 ? setAttributes(names) : null;
}

export function changeMetric(state: ControlsState, metric: Metric): Command {
  state.metric = metric;
  return setMetric(metric);
}

export function changeThreshold(state: ControlsState, t: number): Command {
  state.threshold = t;
  return setThreshold(t);
}

export function changeGuideMode(
  state: ControlsState,
  mode: GuideModeName,
  k?: number,
): Command {
  state.guideMode = mode;
  if (mode === "equidistant") {
    if (k !== undefined) state.guideK = k;
    return setGuideMode(mode, { k: state.guideK });
  }
  return setGuideMode(mode);
}

export function changeEdgeFilter(
  state: ControlsState,
  mode: EdgeFilterName,
): Command {
  state.edgeFilter = mode;
  return setEdgeFilter(mode);
}
