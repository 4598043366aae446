/** Hover behavior: attribute pane contents and line dimming.
 *
 * Hovering a station shows exactly five attributes — phase, opcode,
 * address, graph ID, phase ID — plus the station's multiplicity, and
 * dims every line that does not contain the station.  Addresses of
 * nodes absorbed into the station are listed separately.
 */

import type { MetroMapPayload, Station } from "./types.js";

export interface LineRole {
  lineIndex: number;
  name: string;
  id: string;
  /** Whether this line generated the hovered station or optimized it. */
  role: "generating" | "optimizing";
}

export interface HoverInfo {
  /** Attribute pane rows in display order: label → value. */
  rows: [string, string][];
  /** Absorbed node identities, shown as a separate pane section. */
  mergedFrom: string[];
  /** Lines containing the station, with generating/optimizing role. */
  lines: LineRole[];
  /** Indices of every line to dim (those not containing the station). */
  dimmedLines: number[];
}

export const HOVER_ROW_LABELS = [
  "phase",
  "opcode",
  "address",
  "graph ID",
  "phase ID",
  "multiplicity",
] as const;

function stationById(payload: MetroMapPayload, stationId: number): Station {
  const station = payload.stations.find((s) => s.station_id === stationId);
  if (station === undefined) {
    throw new RangeError(`unknown station ${stationId}`);
  }
  return station;
}

/** A line generated the station iff its name matches the generating
 * phase and its id contains the generating execution ordinal (a merged
 * line id joins several ordinals with "@"). */
function roleOf(
  line: { name: string; id: string },
  station: Station,
): "generating" | "optimizing" {
  const generated =
    line.name === station.attributes.phase &&
    line.id.split("@").includes(station.attributes.phase_id);
  return generated ? "generating" : "optimizing";
}

export function hoverInfo(payload: MetroMapPayload, stationId: number): HoverInfo {
  const station = stationById(payload, stationId);
  const a = station.attributes;
  const rows: [string, string][] = [
    ["phase", a.phase],
    ["opcode", a.opcode],
    ["address", a.address],
    ["graph ID", String(a.graph_id)],
    ["phase ID", a.phase_id],
    ["multiplicity", String(station.multiplicity)],
  ];
  const mergedFrom = station.merged_from.map(
    (m) => `${m.address} (graph ${m.ir_id}, node ${m.node_id})`,
  );

  const lines: LineRole[] = [];
  const dimmedLines: number[] = [];
  payload.lines.forEach((line, lineIndex) => {
    if (line.polyline.includes(stationId)) {
      lines.push({ lineIndex, name: line.name, id: line.id, role: roleOf(line, station) });
    } else {
      dimmedLines.push(lineIndex);
    }
  });
  return { rows, mergedFrom, lines, dimmedLines };
}
