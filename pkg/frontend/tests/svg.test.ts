import { describe, expect, it } from "vitest";

import { parsePayload } from "../src/payload.js";
import {
  CELL,
  escapeXml,
  legendEntries,
  lineColor,
  MARGIN,
  PALETTE,
  renderSvg,
} from "../src/svg.js";
import {
  disjointPayload,
  loadUiFixture,
  makePayload,
  sharedStationPayload,
} from "./helpers.js";

describe("legendEntries", () => {
  it("lists every line with its color and member count", () => {
    const entries = legendEntries(disjointPayload());
    expect(entries).toEqual([
      { lineIndex: 0, name: "Alpha", id: "0", color: PALETTE[0], memberCount: 2 },
      { lineIndex: 1, name: "Phi", id: "1", color: PALETTE[1], memberCount: 2 },
    ]);
  });

  it("cycles the palette for high color indices", () => {
    expect(lineColor(PALETTE.length)).toBe(PALETTE[0]);
    expect(lineColor(PALETTE.length + 3)).toBe(PALETTE[3]);
  });
});

describe("renderSvg", () => {
  it("draws one polyline group per line and one marker group per station", () => {
    const svg = renderSvg(disjointPayload());
    expect(svg.match(/<g class="line"/g)?.length).toBe(2);
    expect(svg.match(/<g class="station"/g)?.length).toBe(4);
  });

  it("is a pure function of the payload", () => {
    const payload = sharedStationPayload();
    const once = renderSvg(payload);
    const twice = renderSvg(payload);
    const reparsed = renderSvg(parsePayload(JSON.stringify(payload)));
    expect(twice).toBe(once);
    expect(reparsed).toBe(once);
  });

  it("places markers at the scaled station coordinates", () => {
    const payload = disjointPayload();
    const svg = renderSvg(payload);
    for (const s of payload.stations) {
      const cx = MARGIN + s.x * CELL;
      const cy = MARGIN + s.y * CELL;
      expect(svg).toContain(`<circle cx="${cx}" cy="${cy}"`);
    }
  });

  it("routes each polyline through its member stations in order", () => {
    const payload = sharedStationPayload();
    const svg = renderSvg(payload);
    const coords = new Map(
      payload.stations.map((s) => [
        s.station_id,
        `${MARGIN + s.x * CELL},${MARGIN + s.y * CELL}`,
      ]),
    );
    for (const line of payload.lines) {
      const points = line.polyline.map((id) => coords.get(id)).join(" ");
      expect(svg).toContain(`points="${points}"`);
    }
  });

  it("includes a member-count tooltip per line", () => {
    const svg = renderSvg(sharedStationPayload());
    expect(svg).toContain("<title>Alpha [0] — 3 stations</title>");
    expect(svg).toContain("<title>Gamma [2] — 2 stations</title>");
  });

  it("draws shared stations with the interchange radius", () => {
    const svg = renderSvg(sharedStationPayload());
    const marker = svg
      .split("\n")
      .find((part) => part.includes('data-station="4"'));
    expect(marker).toContain('r="8"');
    const plain = svg.split("\n").find((part) => part.includes('data-station="0"'));
    expect(plain).toContain('r="5"');
  });

  it("escapes markup in labels and line names", () => {
    const payload = makePayload(
      [{ id: 0, phase: "A<b>", phaseId: "0", label: '<&"evil' }],
      [{ name: "A<b>", id: "0", members: [0] }],
    );
    const svg = renderSvg(payload);
    expect(svg).not.toContain("<&");
    expect(svg).toContain("&lt;&amp;&quot;evil");
    expect(svg).toContain("A&lt;b&gt;");
  });

  it("renders the pipeline fixture at full scale", () => {
    const fixture = loadUiFixture();
    const svg = renderSvg(fixture.map);
    expect(svg.match(/<g class="line"/g)?.length).toBe(fixture.map.lines.length);
    expect(svg.match(/<g class="station"/g)?.length).toBe(fixture.map.stations.length);
    expect(legendEntries(fixture.map).length).toBe(fixture.map.lines.length);
  });
});

describe("escapeXml", () => {
  it("escapes the four XML metacharacters", () => {
    expect(escapeXml(`a&b<c>d"e`)).toBe("a&amp;b&lt;c&gt;d&quot;e");
  });
});
