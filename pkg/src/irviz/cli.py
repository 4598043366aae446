"""Command-line front end: pipeline, validate, diff, report, synth."""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field, replace
from pathlib import Path

from irviz import analysis, graph_simplify, hypergraph, layout, synth
from irviz.analysis import SuspicionReport, _signature_doc
from irviz.diff_merge import MergedIR, diff_variant, merge_candidates
from irviz.ingest import (
    DumpBundle,
    DumpParseError,
    DumpValidationError,
    load_dump,
    write_dump,
)
from irviz.ir_model import Hypergraph, IRGraph


@dataclass(frozen=True)
class StageToggles:
    dead_removal: bool = True
    node_merge: bool = True
    hyperedge_merge: bool = True
    station_merge: bool = True


@dataclass
class PipelineResult:
    merged: MergedIR
    simplified: IRGraph
    final_hypergraph: Hypergraph
    report: SuspicionReport
    metro: layout.MetroMap
    summary: list[str] = field(default_factory=list)


def run_stages(bundle: DumpBundle, toggles: StageToggles = StageToggles()) -> PipelineResult:
    """Merge, simplify, hypergraph, rank, lay out; collect stage counts."""
    summary = [
        f"family: {1 + len(bundle.variants)} graphs ({len(bundle.variants)} variants)"
    ]
    merged = merge_candidates(bundle.original, list(bundle.variants))
    g = merged.graph
    summary.append(
        f"merged: {len(g.nodes)} nodes, {len(g.edges)} edges, "
        f"{len(merged.diffs)} phase diffs"
    )

    if toggles.dead_removal:
        g = graph_simplify.remove_dead_nodes(g)
        summary.append(f"dead-removal: {len(g.nodes)} nodes, {len(g.edges)} edges")
    else:
        summary.append("dead-removal: skipped")
    if toggles.node_merge:
        g = graph_simplify.merge_equivalent_nodes(g)
        summary.append(f"node-merge: {len(g.nodes)} nodes, {len(g.edges)} edges")
    else:
        summary.append("node-merge: skipped")

    h = hypergraph.extract_hypergraph(g)
    summary.append(f"hyperedges: {len(h.hyperedges)} extracted, {len(h.nodes)} stations")
    if toggles.hyperedge_merge:
        h = hypergraph.merge_same_name_hyperedges(h)
        summary.append(f"hyperedge-merge: {len(h.hyperedges)} lines")
    else:
        summary.append("hyperedge-merge: skipped")
    if toggles.station_merge:
        h = hypergraph.merge_stations_by_opcode(h)
        summary.append(f"station-merge: {len(h.nodes)} stations")
    else:
        summary.append("station-merge: skipped")

    report = analysis.suspicion_ranking(h, merged.diffs)
    metro = layout.layout_map(h, report)
    if report.lines:
        top = report.lines[0]
        summary.append(f"top suspect: {top.name} ({top.suspicion})")
    return PipelineResult(
        merged=merged,
        simplified=g,
        final_hypergraph=h,
        report=report,
        metro=metro,
        summary=summary,
    )


def _toggles_from_args(args: argparse.Namespace) -> StageToggles:
    return StageToggles(
        dead_removal=not args.no_dead_removal,
        node_merge=not args.no_node_merge,
        hyperedge_merge=not args.no_hyperedge_merge,
        station_merge=not args.no_station_merge,
    )


def _palette_from_env() -> list[int] | None:
    raw = os.environ.get("IRVIZ_COLORS")
    if raw is None:
        return None
    try:
        palette = [int(part.strip()) for part in raw.split(",")]
    except ValueError:
        raise ValueError(
            f"IRVIZ_COLORS must be comma-separated integers, got {raw!r}"
        ) from None
    return palette


def _apply_palette(metro: layout.MetroMap, palette: list[int]) -> layout.MetroMap:
    lines = tuple(
        replace(line, color_index=palette[i % len(palette)])
        for i, line in enumerate(metro.lines)
    )
    return replace(metro, lines=lines)


def cmd_pipeline(args: argparse.Namespace) -> int:
    bundle = load_dump(args.input)
    result = run_stages(bundle, _toggles_from_args(args))
    metro = result.metro
    palette = _palette_from_env()
    if palette:
        metro = _apply_palette(metro, palette)
    Path(args.out).write_bytes(metro.to_json_bytes())
    if args.report:
        report_bytes = (
            json.dumps(result.report.to_json_dict(), indent=2) + "\n"
        ).encode("utf-8")
        Path(args.report).write_bytes(report_bytes)
    for line in result.summary:
        print(line)
    print(f"map: {args.out}")
    if args.report:
        print(f"report: {args.report}")
    return 0


def cmd_validate(args: argparse.Namespace) -> int:
    try:
        bundle = load_dump(args.path)
    except (DumpParseError, DumpValidationError) as exc:
        print(f"invalid: {exc}")
        return 1
    print(f"ok: {1 + len(bundle.variants)} graphs")
    return 0


def cmd_diff(args: argparse.Namespace) -> int:
    bundle = load_dump(args.input)
    per_variant = [
        (variant.ir_id, diff_variant(bundle.original, variant))
        for variant in sorted(bundle.variants, key=lambda g: g.ir_id)
    ]
    if args.format == "json":
        doc = {
            "variants": [
                {
                    "ir_id": ir_id,
                    "diffs": [
                        {
                            "phase_name": d.phase_name,
                            "added_nodes": sorted(d.added_nodes),
                            "missing_signatures": [
                                _signature_doc(s) for s in d.missing_signatures
                            ],
                        }
                        for d in diffs
                    ],
                }
                for ir_id, diffs in per_variant
            ]
        }
        print(json.dumps(doc, indent=2))
        return 0
    for ir_id, diffs in per_variant:
        if not diffs:
            print(f"variant {ir_id}: no differences")
            continue
        print(f"variant {ir_id}:")
        for d in diffs:
            added = ", ".join(str(n) for n in sorted(d.added_nodes))
            print(
                f"  {d.phase_name}: {len(d.added_nodes)} added"
                + (f" ({added})" if added else "")
                + f", {len(d.missing_signatures)} missing"
            )
    return 0


def _print_report_text(report: SuspicionReport) -> None:
    name_w = max([len(line.name) for line in report.lines] + [4])
    id_w = max([len(line.id) for line in report.lines] + [2])
    print(f"{'name':<{name_w}}  {'id':<{id_w}}  members  foreign  suspicion")
    for line in report.lines:
        print(
            f"{line.name:<{name_w}}  {line.id:<{id_w}}  "
            f"{line.member_count:>7}  {line.non_original_count:>7}  {line.suspicion}"
        )
        for ann in line.missing:
            print(
                f"{'':<{name_w}}  missing in variant {ann.variant_ir_id}: "
                f"{len(ann.signatures)} signatures"
            )
    for ann in report.unattached_missing:
        print(
            f"missing (no surviving line) {ann.phase_name} "
            f"variant {ann.variant_ir_id}: {len(ann.signatures)} signatures"
        )


def cmd_report(args: argparse.Namespace) -> int:
    bundle = load_dump(args.input)
    result = run_stages(bundle, _toggles_from_args(args))
    if args.format == "json":
        print(json.dumps(result.report.to_json_dict(), indent=2))
    else:
        _print_report_text(result.report)
    return 0


def _parse_span(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("-")
    if sep:
        return (int(lo), int(hi))
    value = int(text)
    return (value, value)


def cmd_synth(args: argparse.Namespace) -> int:
    spec = synth.SynthSpec(
        n_variants=args.variants,
        nodes_range=_parse_span(args.nodes),
        phases_range=_parse_span(args.phases),
        buggy_phase=args.buggy_phase,
        n_buggy_variants=args.buggy,
        injection=args.injection,
    )
    bundle, truth = synth.generate_bundle(args.seed, spec)
    Path(args.out).write_bytes(write_dump(bundle))
    print(f"bundle: {args.out} ({1 + len(bundle.variants)} graphs)")
    if args.truth:
        doc = {
            "buggy_phase": truth.buggy_phase,
            "injection": truth.injection,
            "buggy_variants": list(truth.buggy_variants),
            "injected_nodes": {
                str(ir_id): list(ids)
                for ir_id, ids in sorted(truth.injected_nodes.items())
            },
        }
        Path(args.truth).write_bytes(
            (json.dumps(doc, indent=2) + "\n").encode("utf-8")
        )
        print(f"truth: {args.truth}")
    return 0


def _add_toggles(p: argparse.ArgumentParser) -> None:
    p.add_argument("--no-dead-removal", action="store_true")
    p.add_argument("--no-node-merge", action="store_true")
    p.add_argument("--no-hyperedge-merge", action="store_true")
    p.add_argument("--no-station-merge", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="irviz",
        description="Merge, simplify, and metro-map a family of IR graph dumps",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pipeline", help="run the full analysis and write the map")
    p.add_argument("--input", required=True, help="dump bundle to analyze")
    p.add_argument("--out", required=True, help="output path for the map JSON")
    p.add_argument("--report", help="optional output path for the report JSON")
    _add_toggles(p)
    p.set_defaults(func=cmd_pipeline)

    p = sub.add_parser("validate", help="parse and validate a dump bundle")
    p.add_argument("path")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("diff", help="print per-variant differences")
    p.add_argument("--input", required=True)
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.set_defaults(func=cmd_diff)

    p = sub.add_parser("report", help="print the suspicion report")
    p.add_argument("--input", required=True)
    p.add_argument("--format", choices=("json", "text"), default="text")
    _add_toggles(p)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("synth", help="generate a synthetic bundle")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--variants", type=int, default=19)
    p.add_argument("--nodes", default="300-500", help="node count or range, e.g. 300-500")
    p.add_argument("--phases", default="30-40", help="phase count or range")
    p.add_argument("--buggy-phase", default="EarlyOptimization")
    p.add_argument("--buggy", type=int, default=9, help="number of buggy variants")
    p.add_argument("--injection", choices=("added", "removed"), default="added")
    p.add_argument("--out", required=True)
    p.add_argument("--truth", help="optional output path for ground truth JSON")
    p.set_defaults(func=cmd_synth)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
