/** Set operations over metro-line memberships.
 *
 * Lines are addressed by their index in the payload's line array, which
 * is the canonical order everywhere in the viewer.  All operations
 * return station-id sets over the payload's full station universe:
 *
 *   intersection  — stations on every selected line
 *   union         — stations on at least one selected line
 *   complement    — stations on none of the selected lines
 *   subtraction   — stations on the first selected line and on no other
 *                   selected line (selection order matters)
 */

import type { MetroMapPayload, SetOpMode } from "./types.js";

/** Member station ids of one line as a set. */
export function lineMembers(payload: MetroMapPayload, lineIndex: number): Set<number> {
  const line = payload.lines[lineIndex];
  if (line === undefined) {
    throw new RangeError(`no line at index ${lineIndex}`);
  }
  return new Set(line.polyline);
}

/** Every station id in the payload. */
export function allStationIds(payload: MetroMapPayload): Set<number> {
  return new Set(payload.stations.map((s) => s.station_id));
}

function intersect(sets: Set<number>[]): Set<number> {
  const [first, ...rest] = sets;
  if (first === undefined) return new Set();
  const out = new Set(first);
  for (const s of rest) {
    for (const id of out) if (!s.has(id)) out.delete(id);
  }
  return out;
}

function unite(sets: Set<number>[]): Set<number> {
  const out = new Set<number>();
  for (const s of sets) for (const id of s) out.add(id);
  return out;
}

/** Apply one set operation to the lines selected by index, in order. */
export function applySetOperation(
  payload: MetroMapPayload,
  mode: SetOpMode,
  selection: number[],
): Set<number> {
  if (selection.length === 0) return new Set();
  const sets = selection.map((i) => lineMembers(payload, i));
  switch (mode) {
    case "intersection":
      return intersect(sets);
    case "union":
      return unite(sets);
    case "complement": {
      const union = unite(sets);
      const out = allStationIds(payload);
      for (const id of union) out.delete(id);
      return out;
    }
    case "subtraction": {
      const [head, ...rest] = sets;
      const out = new Set(head);
      for (const s of rest) for (const id of s) out.delete(id);
      return out;
    }
  }
}

/** Sorted-array form, for display and for station-for-station comparison. */
export function toSortedIds(stations: Set<number>): number[] {
  return [...stations].sort((a, b) => a - b);
}
