/** DOM wiring for the metro-map viewer.
 *
 * One ViewerApp instance owns a root element and the loaded payload.
 * All rendering is recomputed from the payload, so reloading the same
 * JSON reproduces the same DOM structure.
 */

import { hoverInfo } from "./hover.js";
import { parsePayload, PayloadError } from "./payload.js";
import { applySetOperation, toSortedIds } from "./setops.js";
import { legendEntries, lineColor, renderSvg } from "./svg.js";
import type { MetroMapPayload, ReportLine, SetOpMode } from "./types.js";
import { SET_OP_MODES } from "./types.js";

const SHELL = `
<div class="banner" data-role="banner" hidden></div>
<div class="toolbar">
  <label class="file-label">Load map JSON
    <input type="file" data-role="file" accept=".json,application/json">
  </label>
  <span class="modes" data-role="modes"></span>
  <button type="button" data-role="clear">Clear selection</button>
  <button type="button" data-role="export">Export SVG</button>
  <span class="opcount" data-role="opcount"></span>
</div>
<div class="columns">
  <div class="map-pane">
    <div class="map" data-role="map"></div>
    <div class="status" data-role="status"></div>
  </div>
  <div class="side-pane">
    <h3>Key to Lines</h3>
    <ul class="legend" data-role="legend"></ul>
    <h3>Station</h3>
    <div class="hoverpane" data-role="hoverpane"><em>hover a station</em></div>
    <h3>Suspicion report</h3>
    <table class="report" data-role="report"></table>
  </div>
</div>
`;

type SortKey = "name" | "member_count" | "non_original_count" | "suspicion_value";

export class ViewerApp {
  private payload: MetroMapPayload | null = null;
  private selection: number[] = [];
  private mode: SetOpMode = "intersection";
  private sortKey: SortKey = "suspicion_value";
  private sortAscending = false;

  constructor(private root: HTMLElement) {
    root.innerHTML = SHELL;
    this.renderModePicker();
    this.query("file").addEventListener("change", () => void this.onFilePicked());
    this.query("clear").addEventListener("click", () => this.clearSelection());
    this.query("export").addEventListener("click", () => this.exportSvg());
  }

  private query(role: string): HTMLElement {
    const el = this.root.querySelector<HTMLElement>(`[data-role="${role}"]`);
    if (el === null) throw new Error(`missing shell element ${role}`);
    return el;
  }

  /** Load payload text; on failure show the error banner and keep state. */
  loadText(text: string): void {
    let payload: MetroMapPayload;
    try {
      payload = parsePayload(text);
    } catch (err) {
      if (err instanceof PayloadError) {
        this.showBanner(`cannot load map: ${err.message}`);
        return;
      }
      throw err;
    }
    this.hideBanner();
    this.payload = payload;
    this.selection = [];
    this.renderAll();
  }

  /** Fetch the document's ?map= URL if present. */
  async loadFromQuery(search: string): Promise<void> {
    const url = new URLSearchParams(search).get("map");
    if (url === null) return;
    try {
      const response = await fetch(url);
      this.loadText(await response.text());
    } catch (err) {
      this.showBanner(`cannot fetch ${url}: ${(err as Error).message}`);
    }
  }

  private async onFilePicked(): Promise<void> {
    const input = this.query("file") as HTMLInputElement;
    const file = input.files?.[0];
    if (file === undefined) return;
    this.loadText(await file.text());
  }

  private showBanner(message: string): void {
    const banner = this.query("banner");
    banner.textContent = message;
    banner.hidden = false;
  }

  private hideBanner(): void {
    const banner = this.query("banner");
    banner.textContent = "";
    banner.hidden = true;
  }

  private renderModePicker(): void {
    const span = this.query("modes");
    span.innerHTML = SET_OP_MODES.map(
      (mode) =>
        `<label><input type="radio" name="setop" value="${mode}"` +
        `${mode === this.mode ? " checked" : ""}> ${mode}</label>`,
    ).join("\n");
    span.querySelectorAll<HTMLInputElement>("input[name=setop]").forEach((input) => {
      input.addEventListener("change", () => {
        this.mode = input.value as SetOpMode;
        this.applyOps();
      });
    });
  }

  private renderAll(): void {
    if (this.payload === null) return;
    this.renderMap();
    this.renderLegend();
    this.renderReport();
    this.query("hoverpane").innerHTML = "<em>hover a station</em>";
    this.applyOps();
  }

  private renderMap(): void {
    const payload = this.payload!;
    const map = this.query("map");
    map.innerHTML = renderSvg(payload);
    map.querySelectorAll<SVGGElement>("g.station").forEach((g) => {
      const id = Number(g.getAttribute("data-station"));
      g.addEventListener("mouseenter", () => this.hoverStation(id));
      g.addEventListener("mouseleave", () => this.unhoverStation());
    });
    map.querySelectorAll<SVGGElement>("g.line").forEach((g) => {
      const index = Number(g.getAttribute("data-line"));
      g.addEventListener("mouseenter", () => this.showLineStatus(index));
      g.addEventListener("mouseleave", () => {
        this.query("status").textContent = "";
      });
    });
  }

  private renderLegend(): void {
    const payload = this.payload!;
    const legend = this.query("legend");
    legend.innerHTML = legendEntries(payload)
      .map(
        (e) =>
          `<li data-line="${e.lineIndex}">` +
          `<span class="swatch" style="background:${e.color}"></span>` +
          `<span class="line-name">${escapeHtml(e.name)}</span> ` +
          `<span class="line-id">[${escapeHtml(e.id)}]</span> ` +
          `<span class="line-count">${e.memberCount} stations</span>` +
          `</li>`,
      )
      .join("\n");
    legend.querySelectorAll<HTMLLIElement>("li").forEach((li) => {
      li.addEventListener("click", () => this.toggleLine(Number(li.dataset.line)));
    });
  }

  private reportRows(): ReportLine[] {
    const rows = [...this.payload!.report.lines];
    const key = this.sortKey;
    rows.sort((a, b) => {
      const av = a[key];
      const bv = b[key];
      const cmp =
        typeof av === "string" && typeof bv === "string"
          ? av.localeCompare(bv)
          : Number(av) - Number(bv);
      return this.sortAscending ? cmp : -cmp;
    });
    return rows;
  }

  private renderReport(): void {
    const table = this.query("report");
    const headers: [SortKey, string][] = [
      ["name", "phase"],
      ["member_count", "members"],
      ["non_original_count", "foreign"],
      ["suspicion_value", "suspicion"],
    ];
    const head =
      "<tr>" +
      headers
        .map(([key, label]) => `<th data-sort="${key}">${label}</th>`)
        .join("") +
      "</tr>";
    const body = this.reportRows()
      .map(
        (row) =>
          `<tr data-line-name="${escapeHtml(row.name)}" data-line-id="${escapeHtml(row.id)}">` +
          `<td>${escapeHtml(row.name)}</td>` +
          `<td>${row.member_count}</td>` +
          `<td>${row.non_original_count}</td>` +
          `<td>${escapeHtml(row.suspicion)}</td>` +
          `</tr>`,
      )
      .join("\n");
    table.innerHTML = head + body;
    table.querySelectorAll<HTMLTableCellElement>("th").forEach((th) => {
      th.addEventListener("click", () => {
        const key = th.dataset.sort as SortKey;
        if (this.sortKey === key) {
          this.sortAscending = !this.sortAscending;
        } else {
          this.sortKey = key;
          this.sortAscending = key === "name";
        }
        this.renderReport();
      });
    });
    table.querySelectorAll<HTMLTableRowElement>("tr[data-line-name]").forEach((tr) => {
      tr.addEventListener("click", () => {
        this.focusLine(tr.dataset.lineName!, tr.dataset.lineId!);
      });
    });
  }

  hoverStation(stationId: number): void {
    if (this.payload === null) return;
    const info = hoverInfo(this.payload, stationId);
    const pane = this.query("hoverpane");
    const rows = info.rows
      .map(
        ([label, value]) =>
          `<tr><th>${escapeHtml(label)}</th><td>${escapeHtml(value)}</td></tr>`,
      )
      .join("\n");
    const mergedSection =
      info.mergedFrom.length > 0
        ? `<div class="merged-from">absorbed: ${info.mergedFrom
            .map(escapeHtml)
            .join("; ")}</div>`
        : "";
    const lineList = info.lines
      .map(
        (l) =>
          `<li data-role="station-line" data-line-role="${l.role}">` +
          `${escapeHtml(l.name)} [${escapeHtml(l.id)}] — ${l.role}</li>`,
      )
      .join("\n");
    pane.innerHTML =
      `<table class="attributes">${rows}</table>` +
      mergedSection +
      `<ul class="station-lines">${lineList}</ul>`;

    this.query("map")
      .querySelectorAll<SVGGElement>("g.line")
      .forEach((g) => {
        const index = Number(g.getAttribute("data-line"));
        g.classList.toggle("dimmed", info.dimmedLines.includes(index));
      });
  }

  unhoverStation(): void {
    this.query("hoverpane").innerHTML = "<em>hover a station</em>";
    this.query("map")
      .querySelectorAll<SVGGElement>("g.line")
      .forEach((g) => g.classList.remove("dimmed"));
  }

  private showLineStatus(lineIndex: number): void {
    const line = this.payload!.lines[lineIndex];
    if (line === undefined) return;
    this.query("status").textContent =
      `${line.name} [${line.id}]: ${line.polyline.length} stations`;
  }

  toggleLine(lineIndex: number): void {
    const at = this.selection.indexOf(lineIndex);
    if (at >= 0) {
      this.selection.splice(at, 1);
    } else {
      this.selection.push(lineIndex);
    }
    this.applyOps();
  }

  clearSelection(): void {
    this.selection = [];
    this.applyOps();
  }

  /** Select the report row's line and show its member set. */
  focusLine(name: string, id: string): void {
    const index = this.payload!.lines.findIndex(
      (l) => l.name === name && l.id === id,
    );
    if (index < 0) return;
    this.selection = [index];
    this.mode = "union";
    this.renderModePicker();
    this.applyOps();
  }

  /** Current selection in click order (line indices). */
  getSelection(): number[] {
    return [...this.selection];
  }

  getMode(): SetOpMode {
    return this.mode;
  }

  /** Station ids currently highlighted by the set operation. */
  getHighlightedStationIds(): number[] {
    const map = this.query("map");
    const ids: number[] = [];
    map.querySelectorAll<SVGGElement>("g.station.highlighted").forEach((g) => {
      ids.push(Number(g.getAttribute("data-station")));
    });
    return ids.sort((a, b) => a - b);
  }

  private applyOps(): void {
    if (this.payload === null) return;
    const map = this.query("map");
    const legend = this.query("legend");
    legend.querySelectorAll<HTMLLIElement>("li").forEach((li) => {
      const index = Number(li.dataset.line);
      li.classList.toggle("selected", this.selection.includes(index));
    });
    if (this.selection.length === 0) {
      map
        .querySelectorAll<SVGGElement>("g.station")
        .forEach((g) => g.classList.remove("highlighted"));
      this.query("opcount").textContent = "";
      return;
    }
    const result = applySetOperation(this.payload, this.mode, this.selection);
    map.querySelectorAll<SVGGElement>("g.station").forEach((g) => {
      g.classList.toggle("highlighted", result.has(Number(g.getAttribute("data-station"))));
    });
    this.query("opcount").textContent =
      `${this.mode}: ${result.size} station${result.size === 1 ? "" : "s"}`;
  }

  private exportSvg(): void {
    const svg = this.query("map").querySelector("svg");
    if (svg === null) return;
    const blob = new Blob([svg.outerHTML], { type: "image/svg+xml" });
    const anchor = document.createElement("a");
    anchor.href = URL.createObjectURL(blob);
    anchor.download = "metro-map.svg";
    anchor.click();
    URL.revokeObjectURL(anchor.href);
  }
}

function escapeHtml(text: string): string {
  return text
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;");
}

export function setupApp(root: HTMLElement): ViewerApp {
  return new ViewerApp(root);
}

export { lineColor };
