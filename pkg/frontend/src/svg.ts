/** Pure SVG rendering of the metro-map payload.
 *
 * Rendering is a function of the payload alone: the same JSON always
 * produces the same markup.  Lines become colored polylines keyed by
 * `data-line` index, stations become circle markers keyed by
 * `data-station` id; interaction code addresses both through those
 * attributes without touching the geometry.
 */

import type { MetroMapPayload } from "./types.js";

/** Distinct line colors, cycled by color_index. */
export const PALETTE = [
  "#e6194b",
  "#3cb44b",
  "#4363d8",
  "#f58231",
  "#911eb4",
  "#46a2c9",
  "#f032e6",
  "#96aa00",
  "#9a6324",
  "#800000",
  "#2f855a",
  "#808000",
  "#4a5568",
  "#000075",
  "#b05c9e",
  "#556b2f",
] as const;

export const CELL = 34;
export const MARGIN = 46;

export function lineColor(colorIndex: number): string {
  const color = PALETTE[colorIndex % PALETTE.length];
  return color ?? PALETTE[0];
}

export interface LegendEntry {
  lineIndex: number;
  name: string;
  id: string;
  color: string;
  memberCount: number;
}

export function legendEntries(payload: MetroMapPayload): LegendEntry[] {
  return payload.lines.map((line, lineIndex) => ({
    lineIndex,
    name: line.name,
    id: line.id,
    color: lineColor(line.color_index),
    memberCount: line.polyline.length,
  }));
}

export function escapeXml(text: string): string {
  return text
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;");
}

function toPixel(v: number): number {
  return MARGIN + v * CELL;
}

/** Render the whole map as an SVG string. */
export function renderSvg(payload: MetroMapPayload): string {
  const coords = new Map<number, { x: number; y: number }>();
  let maxX = 0;
  let maxY = 0;
  for (const s of payload.stations) {
    coords.set(s.station_id, { x: toPixel(s.x), y: toPixel(s.y) });
    maxX = Math.max(maxX, s.x);
    maxY = Math.max(maxY, s.y);
  }
  const width = toPixel(maxX) + MARGIN;
  const height = toPixel(maxY) + MARGIN;

  const onLines = new Map<number, number>();
  for (const line of payload.lines) {
    for (const id of line.polyline) {
      onLines.set(id, (onLines.get(id) ?? 0) + 1);
    }
  }

  const linesMarkup = payload.lines
    .map((line, lineIndex) => {
      const points = line.polyline
        .map((id) => {
          const c = coords.get(id);
          if (c === undefined) throw new RangeError(`unknown station ${id}`);
          return `${c.x},${c.y}`;
        })
        .join(" ");
      const color = lineColor(line.color_index);
      const title = `${line.name} [${line.id}] — ${line.polyline.length} stations`;
      return (
        `<g class="line" data-line="${lineIndex}">` +
        `<title>${escapeXml(title)}</title>` +
        `<polyline points="${points}" fill="none" stroke="${color}" ` +
        `stroke-width="5" stroke-linecap="round" stroke-linejoin="round"/>` +
        `</g>`
      );
    })
    .join("\n");

  const stationsMarkup = payload.stations
    .map((s) => {
      const c = coords.get(s.station_id)!;
      const interchange = (onLines.get(s.station_id) ?? 0) > 1;
      const r = interchange ? 8 : 5;
      return (
        `<g class="station" data-station="${s.station_id}">` +
        `<circle cx="${c.x}" cy="${c.y}" r="${r}" fill="#ffffff" ` +
        `stroke="#1a202c" stroke-width="2"/>` +
        `<text x="${c.x}" y="${c.y - r - 4}" text-anchor="middle" ` +
        `font-size="9">${escapeXml(s.label)}</text>` +
        `</g>`
      );
    })
    .join("\n");

  return (
    `<svg xmlns="http://www.w3.org/2000/svg" ` +
    `viewBox="0 0 ${width} ${height}" width="${width}" height="${height}" ` +
    `font-family="system-ui, sans-serif">\n` +
    `${linesMarkup}\n${stationsMarkup}\n</svg>`
  );
}
