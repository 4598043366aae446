/** Shared test fixtures: a hand-built miniature payload factory and the
 * pipeline-generated fixture with analysis-side expected results. */

import { readFileSync } from "node:fs";
import { join } from "node:path";

import type { MetroMapPayload, ReportLine, Station } from "../src/types.js";

export interface StationSpec {
  id: number;
  phase: string;
  phaseId: string;
  opcode?: string;
  address?: string;
  graphId?: number;
  multiplicity?: number;
  mergedFrom?: { ir_id: number; node_id: number; address: string }[];
  label?: string;
}

export interface LineSpec {
  name: string;
  id: string;
  members: number[];
}

/** Build a valid payload from compact specs; coordinates are synthesized
 * on a diagonal so they never collide. */
export function makePayload(
  stations: StationSpec[],
  lines: LineSpec[],
  reportLines?: ReportLine[],
): MetroMapPayload {
  const builtStations: Station[] = stations.map((spec, i) => ({
    station_id: spec.id,
    x: i * 2,
    y: i,
    label: spec.label ?? String(spec.id),
    attributes: {
      phase: spec.phase,
      opcode: spec.opcode ?? "phi",
      address: spec.address ?? `0x${(0xa00 + spec.id).toString(16)}`,
      graph_id: spec.graphId ?? 0,
      phase_id: spec.phaseId,
    },
    multiplicity: spec.multiplicity ?? 1,
    merged_from: spec.mergedFrom ?? [],
  }));
  const builtLines = lines.map((spec, i) => ({
    name: spec.name,
    id: spec.id,
    color_index: i,
    polyline: [...spec.members],
  }));
  const report = {
    lines:
      reportLines ??
      builtLines.map((l) => ({
        name: l.name,
        id: l.id,
        member_count: l.polyline.length,
        non_original_count: 0,
        suspicion: "0",
        suspicion_value: 0,
        missing: [],
      })),
    unattached_missing: [],
  };
  return { stations: builtStations, lines: builtLines, report };
}

/** Two disjoint lines: Alpha over {0, 1}, Phi over {2, 3}. */
export function disjointPayload(): MetroMapPayload {
  return makePayload(
    [
      { id: 0, phase: "Alpha", phaseId: "0" },
      { id: 1, phase: "Alpha", phaseId: "0" },
      { id: 2, phase: "Phi", phaseId: "1" },
      { id: 3, phase: "Phi", phaseId: "1" },
    ],
    [
      { name: "Alpha", id: "0", members: [0, 1] },
      { name: "Phi", id: "1", members: [2, 3] },
    ],
  );
}

/** Three lines sharing station 4: Alpha {0,1,4}, Phi {2,3,4}, Gamma {2,3}.
 * Station 4 is generated by Alpha and optimized in Phi. */
export function sharedStationPayload(): MetroMapPayload {
  return makePayload(
    [
      { id: 0, phase: "Alpha", phaseId: "0" },
      { id: 1, phase: "Alpha", phaseId: "0" },
      { id: 2, phase: "Gamma", phaseId: "2" },
      { id: 3, phase: "Gamma", phaseId: "2" },
      {
        id: 4,
        phase: "Alpha",
        phaseId: "0",
        opcode: "checkbounds",
        address: "0xabc",
        graphId: 2,
        multiplicity: 3,
        mergedFrom: [
          { ir_id: 2, node_id: 9, address: "0xdead" },
          { ir_id: 2, node_id: 11, address: "0xbeef" },
        ],
      },
    ],
    [
      { name: "Alpha", id: "0", members: [0, 1, 4] },
      { name: "Phi", id: "1", members: [2, 3, 4] },
      { name: "Gamma", id: "2", members: [2, 3] },
    ],
  );
}

export interface UiFixture {
  seed: number;
  buggy_phase: string;
  map: MetroMapPayload;
  analysis: {
    line_order: string[];
    members: Record<string, number[]>;
    all_station_ids: number[];
    relationships: { names: string[]; ids: string[]; counts: number[][] };
    expected: Record<string, Record<string, number[]>>;
  };
}

let cached: UiFixture | null = null;

/** The pipeline-generated shared fixture (payload + expected set ops). */
export function loadUiFixture(): UiFixture {
  if (cached === null) {
    const path = join(process.cwd(), "tests", "fixtures", "ui_fixture.json");
    cached = JSON.parse(readFileSync(path, "utf-8")) as UiFixture;
  }
  return cached;
}

/** Parse a comma-joined selection key ("0,3,7") into line indices. */
export function selectionOf(key: string): number[] {
  return key.split(",").map((s) => Number(s));
}
