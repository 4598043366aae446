/** JSON contract produced by the analysis pipeline's layout stage. */

/** The five hover attributes carried by every station. */
export interface StationAttributes {
  phase: string;
  opcode: string;
  address: string;
  graph_id: number;
  phase_id: string;
}

/** Identity of a node absorbed into a station during simplification. */
export interface MergedFrom {
  ir_id: number;
  node_id: number;
  address: string;
}

export interface Station {
  station_id: number;
  x: number;
  y: number;
  label: string;
  attributes: StationAttributes;
  multiplicity: number;
  merged_from: MergedFrom[];
}

export interface MetroLine {
  name: string;
  id: string;
  color_index: number;
  /** Member station ids in drawing order. */
  polyline: number[];
}

export interface MissingSignature {
  opcode: string;
  generated_in: string;
  neighbor_opcodes: string[];
}

export interface MissingAnnotation {
  phase_name: string;
  variant_ir_id: number;
  count: number;
  signatures: MissingSignature[];
}

export interface ReportLine {
  name: string;
  id: string;
  member_count: number;
  non_original_count: number;
  /** Exact ratio as a string, e.g. "9/11" or "0". */
  suspicion: string;
  suspicion_value: number;
  missing: MissingAnnotation[];
}

export interface SuspicionReport {
  lines: ReportLine[];
  unattached_missing: MissingAnnotation[];
}

export interface MetroMapPayload {
  stations: Station[];
  lines: MetroLine[];
  report: SuspicionReport;
}

export type SetOpMode = "intersection" | "union" | "complement" | "subtraction";

export const SET_OP_MODES: readonly SetOpMode[] = [
  "intersection",
  "union",
  "complement",
  "subtraction",
];
