"""Phase-level queries over the hypergraph: activity, overlap, suspicion.

Counts that feed the suspicion ratio are multiplicity-weighted, so the
display simplifications (node and station merging) never change a line's
score: a merged station counts for every node it absorbed.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction

from irviz.diff_merge import PhaseDiff, Signature
from irviz.ir_model import Hyperedge, Hypergraph


@dataclass(frozen=True)
class MissingAnnotation:
    """Signatures one variant lacks for one phase, relative to the original."""

    phase_name: str
    variant_ir_id: int
    signatures: tuple[Signature, ...]


@dataclass(frozen=True)
class LineSuspicion:
    """Suspicion record for one metro line.

    member_count and non_original_count sum node multiplicities; suspicion
    is their exact ratio.
    """

    name: str
    id: str
    member_count: int
    non_original_count: int
    suspicion: Fraction
    missing: tuple[MissingAnnotation, ...] = ()


@dataclass(frozen=True)
class SuspicionReport:
    lines: tuple[LineSuspicion, ...]
    unattached_missing: tuple[MissingAnnotation, ...] = ()

    def to_json_dict(self) -> dict:
        return {
            "lines": [_line_doc(line) for line in self.lines],
            "unattached_missing": [
                _annotation_doc(ann) for ann in self.unattached_missing
            ],
        }


def _signature_doc(sig: Signature) -> dict:
    return {
        "opcode": sig[0],
        "generated_in": sig[1],
        "neighbor_opcodes": list(sig[2]),
    }


def _annotation_doc(ann: MissingAnnotation) -> dict:
    return {
        "phase_name": ann.phase_name,
        "variant_ir_id": ann.variant_ir_id,
        "count": len(ann.signatures),
        "signatures": [_signature_doc(s) for s in ann.signatures],
    }


def _line_doc(line: LineSuspicion) -> dict:
    return {
        "name": line.name,
        "id": line.id,
        "member_count": line.member_count,
        "non_original_count": line.non_original_count,
        "suspicion": str(line.suspicion),
        "suspicion_value": float(line.suspicion),
        "missing": [_annotation_doc(ann) for ann in line.missing],
    }


def _weighted_counts(h: Hypergraph, he: Hyperedge) -> tuple[int, int]:
    members = sum(h.nodes[m].multiplicity for m in he.members)
    foreign = sum(
        h.nodes[m].multiplicity for m in he.members if h.nodes[m].ir_id != 0
    )
    return members, foreign


def most_active_phase(h: Hypergraph) -> tuple[str, int]:
    """Name and weighted member count of the longest line.

    Ties go to the line whose id holds the smallest first ordinal.
    """
    if not h.hyperedges:
        raise ValueError("no phases")
    best = min(
        h.hyperedges,
        key=lambda he: (-_weighted_counts(h, he)[0], he.ordinals()[0]),
    )
    return best.name, _weighted_counts(h, best)[0]


@dataclass(frozen=True)
class PhaseMatrix:
    """Symmetric pairwise station-overlap counts; diagonal = line sizes."""

    names: tuple[str, ...]
    ids: tuple[str, ...]
    counts: tuple[tuple[int, ...], ...]


def phase_relationships(h: Hypergraph) -> PhaseMatrix:
    """Raw (unweighted) member-set intersection cardinalities per line pair."""
    edges = h.hyperedges
    counts = tuple(
        tuple(len(a.members & b.members) for b in edges) for a in edges
    )
    return PhaseMatrix(
        names=tuple(he.name for he in edges),
        ids=tuple(he.id for he in edges),
        counts=counts,
    )


def phases_of_node(h: Hypergraph, node_id: int) -> tuple[str, tuple[str, ...]]:
    """Generating phase name plus optimizing names in execution order."""
    if node_id not in h.nodes:
        raise KeyError(f"unknown station {node_id}")
    node = h.nodes[node_id]
    optimizing = tuple(
        pe.name
        for pe in sorted(node.optimized_in, key=lambda pe: pe.exec_ordinal)
    )
    return node.generated_in.name, optimizing


def suspicion_ranking(
    h: Hypergraph, diffs: tuple[PhaseDiff, ...] | list[PhaseDiff] = ()
) -> SuspicionReport:
    """Score every line by the fraction of members from non-original IRs.

    Lines are sorted by suspicion descending, ties by name.  Missing-node
    annotations from the diffs attach to the line of the same name, or to
    unattached_missing when no such line survived simplification.
    """
    by_phase: dict[str, list[MissingAnnotation]] = defaultdict(list)
    for diff in sorted(diffs, key=lambda d: (d.phase_name, d.variant_ir_id)):
        if diff.missing_signatures:
            by_phase[diff.phase_name].append(
                MissingAnnotation(
                    phase_name=diff.phase_name,
                    variant_ir_id=diff.variant_ir_id,
                    signatures=diff.missing_signatures,
                )
            )

    lines: list[LineSuspicion] = []
    for he in h.hyperedges:
        members, foreign = _weighted_counts(h, he)
        suspicion = Fraction(foreign, members) if members else Fraction(0)
        lines.append(
            LineSuspicion(
                name=he.name,
                id=he.id,
                member_count=members,
                non_original_count=foreign,
                suspicion=suspicion,
                missing=tuple(by_phase.pop(he.name, [])),
            )
        )
    lines.sort(key=lambda line: (-line.suspicion, line.name))

    unattached = tuple(
        ann for name in sorted(by_phase) for ann in by_phase[name]
    )
    return SuspicionReport(lines=tuple(lines), unattached_missing=unattached)
