/** Parsing and validation of the metro-map payload.
 *
 * The viewer is the last consumer in the pipeline, so every structural
 * assumption the renderer relies on is checked here and surfaced as a
 * single human-readable message for the error banner.
 */

import type {
  MetroLine,
  MetroMapPayload,
  Station,
  StationAttributes,
} from "./types.js";

export class PayloadError extends Error {}

const ATTRIBUTE_KEYS = ["phase", "opcode", "address", "graph_id", "phase_id"] as const;

function fail(message: string): never {
  throw new PayloadError(message);
}

function isRecord(value: unknown): value is Record<string, unknown> {
  return typeof value === "object" && value !== null && !Array.isArray(value);
}

function requireArray(value: unknown, where: string): unknown[] {
  if (!Array.isArray(value)) fail(`${where} must be an array`);
  return value;
}

function requireInt(value: unknown, where: string): number {
  if (typeof value !== "number" || !Number.isInteger(value)) {
    fail(`${where} must be an integer`);
  }
  return value;
}

function requireString(value: unknown, where: string): string {
  if (typeof value !== "string") fail(`${where} must be a string`);
  return value;
}

function parseAttributes(value: unknown, where: string): StationAttributes {
  if (!isRecord(value)) fail(`${where} must be an object`);
  const keys = Object.keys(value).sort();
  const wanted = [...ATTRIBUTE_KEYS].sort();
  if (keys.join(",") !== wanted.join(",")) {
    fail(`${where} must have exactly the keys ${wanted.join(", ")}`);
  }
  return {
    phase: requireString(value.phase, `${where}.phase`),
    opcode: requireString(value.opcode, `${where}.opcode`),
    address: requireString(value.address, `${where}.address`),
    graph_id: requireInt(value.graph_id, `${where}.graph_id`),
    phase_id: requireString(value.phase_id, `${where}.phase_id`),
  };
}

function parseStation(value: unknown, index: number): Station {
  const where = `stations[${index}]`;
  if (!isRecord(value)) fail(`${where} must be an object`);
  const multiplicity = requireInt(value.multiplicity, `${where}.multiplicity`);
  if (multiplicity < 1) fail(`${where}.multiplicity must be positive`);
  const merged = requireArray(value.merged_from ?? [], `${where}.merged_from`).map(
    (item, i) => {
      const at = `${where}.merged_from[${i}]`;
      if (!isRecord(item)) fail(`${at} must be an object`);
      return {
        ir_id: requireInt(item.ir_id, `${at}.ir_id`),
        node_id: requireInt(item.node_id, `${at}.node_id`),
        address: requireString(item.address, `${at}.address`),
      };
    },
  );
  return {
    station_id: requireInt(value.station_id, `${where}.station_id`),
    x: requireInt(value.x, `${where}.x`),
    y: requireInt(value.y, `${where}.y`),
    label: requireString(value.label, `${where}.label`),
    attributes: parseAttributes(value.attributes, `${where}.attributes`),
    multiplicity,
    merged_from: merged,
  };
}

function parseLine(value: unknown, index: number, stationIds: Set<number>): MetroLine {
  const where = `lines[${index}]`;
  if (!isRecord(value)) fail(`${where} must be an object`);
  const polyline = requireArray(value.polyline, `${where}.polyline`).map((v, i) =>
    requireInt(v, `${where}.polyline[${i}]`),
  );
  if (polyline.length === 0) fail(`${where}.polyline must not be empty`);
  for (const id of polyline) {
    if (!stationIds.has(id)) fail(`${where} references unknown station ${id}`);
  }
  if (new Set(polyline).size !== polyline.length) {
    fail(`${where}.polyline repeats a station`);
  }
  return {
    name: requireString(value.name, `${where}.name`),
    id: requireString(value.id, `${where}.id`),
    color_index: requireInt(value.color_index, `${where}.color_index`),
    polyline,
  };
}

/** Parse payload text, throwing PayloadError with a displayable message. */
export function parsePayload(text: string): MetroMapPayload {
  let raw: unknown;
  try {
    raw = JSON.parse(text);
  } catch (err) {
    fail(`not valid JSON: ${(err as Error).message}`);
  }
  if (!isRecord(raw)) fail("payload must be a JSON object");
  for (const key of ["stations", "lines", "report"]) {
    if (!(key in raw)) fail(`payload is missing "${key}"`);
  }

  const stations = requireArray(raw.stations, "stations").map(parseStation);
  if (stations.length === 0) fail("payload has no stations");
  const stationIds = new Set(stations.map((s) => s.station_id));
  if (stationIds.size !== stations.length) fail("duplicate station_id");
  const seenCoords = new Set<string>();
  for (const s of stations) {
    const coord = `${s.x},${s.y}`;
    if (seenCoords.has(coord)) {
      fail(`stations overlap at (${s.x}, ${s.y})`);
    }
    seenCoords.add(coord);
  }

  const lines = requireArray(raw.lines, "lines").map((v, i) =>
    parseLine(v, i, stationIds),
  );
  if (lines.length === 0) fail("payload has no lines");
  const seenLineKeys = new Set<string>();
  for (const line of lines) {
    const key = `${line.name}#${line.id}`;
    if (seenLineKeys.has(key)) fail(`duplicate line ${key}`);
    seenLineKeys.add(key);
  }

  const covered = new Set<number>();
  for (const line of lines) for (const id of line.polyline) covered.add(id);
  for (const s of stations) {
    if (!covered.has(s.station_id)) {
      fail(`station ${s.station_id} belongs to no line`);
    }
  }

  const report = parseReport(raw.report);
  return { stations, lines, report };
}

function parseReport(value: unknown): MetroMapPayload["report"] {
  if (!isRecord(value)) fail("report must be an object");
  const lines = requireArray(value.lines, "report.lines").map((row, i) => {
    const where = `report.lines[${i}]`;
    if (!isRecord(row)) fail(`${where} must be an object`);
    return {
      name: requireString(row.name, `${where}.name`),
      id: requireString(row.id, `${where}.id`),
      member_count: requireInt(row.member_count, `${where}.member_count`),
      non_original_count: requireInt(
        row.non_original_count,
        `${where}.non_original_count`,
      ),
      suspicion: requireString(row.suspicion, `${where}.suspicion`),
      suspicion_value:
        typeof row.suspicion_value === "number"
          ? row.suspicion_value
          : fail(`${where}.suspicion_value must be a number`),
      missing: (row.missing ?? []) as MetroMapPayload["report"]["lines"][0]["missing"],
    };
  });
  const unattached = (value.unattached_missing ??
    []) as MetroMapPayload["report"]["unattached_missing"];
  return { lines, unattached_missing: unattached };
}
