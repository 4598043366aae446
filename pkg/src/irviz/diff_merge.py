"""Diff each variant IR against the original and merge the differences.

Node identity is not shared across graphs, so correspondence rests on a
structural signature: opcode, generating phase name, and the multiset of
neighbor opcodes.  Per phase name, the signature multisets of the original
and a variant are compared; surplus variant nodes are "added", deficits are
recorded as missing signatures.  Added nodes are folded into a copy of the
original graph, keeping their source ir_id so downstream stages can tell
which variant contributed them.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass

from irviz.ir_model import IRGraph, IRNode, PhaseExecution, undirected_edge

# (opcode, generating phase name, sorted neighbor opcodes)
Signature = tuple[str, str, tuple[str, ...]]


def node_signature(node: IRNode, g: IRGraph) -> Signature:
    """Structural fingerprint of a node, independent of node_id and address."""
    neighbor_opcodes = tuple(
        sorted(g.nodes[u].opcode for u in g.neighbors(node.node_id))
    )
    return (node.opcode, node.generated_in.name, neighbor_opcodes)


@dataclass(frozen=True)
class PhaseDiff:
    """One phase whose membership differs between the original and a variant.

    ``added_nodes`` holds variant node_ids with no matching original node;
    ``missing_signatures`` is the multiset of original signatures the variant
    lacks.  At least one of the two is nonempty.
    """

    phase_name: str
    variant_ir_id: int
    added_nodes: frozenset[int]
    missing_signatures: tuple[Signature, ...]


@dataclass(frozen=True)
class MergedIR:
    """The original graph with every variant's added nodes folded in.

    Nodes keep the ir_id of the graph they came from; ``provenance`` maps
    each merged node_id back to its (ir_id, source node_id).
    """

    graph: IRGraph
    diffs: tuple[PhaseDiff, ...]
    provenance: dict[int, tuple[int, int]]


def _members_by_phase(g: IRGraph) -> dict[str, list[int]]:
    """Phase name -> ascending node_ids generated or optimized there."""
    members: dict[str, list[int]] = defaultdict(list)
    for nid in sorted(g.nodes):
        node = g.nodes[nid]
        seen: set[str] = set()
        for pe in node.referenced_phases():
            if pe.name not in seen:
                seen.add(pe.name)
                members[pe.name].append(nid)
    return members


def diff_variant(r0: IRGraph, ri: IRGraph) -> list[PhaseDiff]:
    """Compare per-phase signature multisets; one PhaseDiff per differing phase.

    Matching within a phase is greedy by signature with ascending node_id on
    both sides, so results are deterministic. Returned list is sorted by
    phase name.
    """
    sig0 = {nid: node_signature(n, r0) for nid, n in r0.nodes.items()}
    sigi = {nid: node_signature(n, ri) for nid, n in ri.nodes.items()}
    members0 = _members_by_phase(r0)
    membersi = _members_by_phase(ri)

    diffs: list[PhaseDiff] = []
    for name in sorted(set(members0) | set(membersi)):
        count0 = Counter(sig0[nid] for nid in members0.get(name, []))
        ids_by_sig: dict[Signature, list[int]] = defaultdict(list)
        for nid in membersi.get(name, []):
            ids_by_sig[sigi[nid]].append(nid)

        added: list[int] = []
        for sig in sorted(ids_by_sig):
            surplus = len(ids_by_sig[sig]) - count0.get(sig, 0)
            if surplus > 0:
                added.extend(ids_by_sig[sig][-surplus:])

        missing: list[Signature] = []
        for sig in sorted(count0):
            deficit = count0[sig] - len(ids_by_sig.get(sig, []))
            if deficit > 0:
                missing.extend([sig] * deficit)

        if added or missing:
            diffs.append(
                PhaseDiff(
                    phase_name=name,
                    variant_ir_id=ri.ir_id,
                    added_nodes=frozenset(added),
                    missing_signatures=tuple(missing),
                )
            )
    return diffs


def match_nodes(r0: IRGraph, ri: IRGraph) -> dict[int, int]:
    """Greedy whole-graph signature matching: variant node_id -> original node_id.

    Per signature, both id lists are taken ascending and zipped; surplus on
    either side stays unmatched.
    """
    by_sig0: dict[Signature, list[int]] = defaultdict(list)
    for nid in sorted(r0.nodes):
        by_sig0[node_signature(r0.nodes[nid], r0)].append(nid)
    by_sigi: dict[Signature, list[int]] = defaultdict(list)
    for nid in sorted(ri.nodes):
        by_sigi[node_signature(ri.nodes[nid], ri)].append(nid)

    matched: dict[int, int] = {}
    for sig, ids_i in by_sigi.items():
        for vi, v0 in zip(ids_i, by_sig0.get(sig, [])):
            matched[vi] = v0
    return matched


def merge_candidates(
    r0: IRGraph, variants: list[IRGraph] | tuple[IRGraph, ...]
) -> MergedIR:
    """Fold every variant's added nodes into a copy of the original graph.

    Variants are processed in ascending ir_id.  Each added node gets a fresh
    node_id but keeps its variant's ir_id.  An added node's edges map to (a)
    fellow added nodes of the same variant and (b) the original node matched
    to its neighbor, when one exists; other adjacencies are dropped.  Phase
    executions are reused when the sequence already held the same
    (name, ordinal) before this variant; executions needing a new ordinal
    are assigned fresh ones in the variant's own order.
    """
    nodes: dict[int, IRNode] = dict(r0.nodes)
    edges: set[tuple[int, int]] = set(r0.edges)
    phase_seq: list[PhaseExecution] = list(r0.phase_sequence)
    by_key = {(pe.name, pe.exec_ordinal): pe for pe in phase_seq}
    used_ordinals = {pe.exec_ordinal for pe in phase_seq}
    provenance: dict[int, tuple[int, int]] = {
        nid: (r0.ir_id, nid) for nid in r0.nodes
    }
    next_id = max(r0.nodes, default=-1) + 1
    all_diffs: list[PhaseDiff] = []

    for variant in sorted(variants, key=lambda g: g.ir_id):
        diffs = diff_variant(r0, variant)
        all_diffs.extend(diffs)
        added_ids = sorted(set().union(*(d.added_nodes for d in diffs))) if diffs else []
        if not added_ids:
            continue

        matched = match_nodes(r0, variant)

        remap: dict[PhaseExecution, PhaseExecution] = {}
        referenced = sorted(
            {pe for nid in added_ids for pe in variant.nodes[nid].referenced_phases()},
            key=lambda pe: pe.exec_ordinal,
        )
        # Exact-key reuse consults the sequence as it stood before this
        # variant; otherwise a fresh (name, max+1) allocation could capture a
        # later execution of this variant that legitimately holds that key,
        # collapsing two distinct executions into one.
        reusable = dict(by_key)
        for pe in referenced:
            key = (pe.name, pe.exec_ordinal)
            if key in reusable:
                remap[pe] = reusable[key]
                continue
            if pe.exec_ordinal in used_ordinals:
                merged_pe = PhaseExecution(pe.name, max(used_ordinals) + 1)
            else:
                merged_pe = pe
            phase_seq.append(merged_pe)
            by_key[(merged_pe.name, merged_pe.exec_ordinal)] = merged_pe
            used_ordinals.add(merged_pe.exec_ordinal)
            remap[pe] = merged_pe

        id_map = {nid: next_id + i for i, nid in enumerate(added_ids)}
        next_id += len(added_ids)
        for nid in added_ids:
            src = variant.nodes[nid]
            new_id = id_map[nid]
            nodes[new_id] = IRNode(
                node_id=new_id,
                address=src.address,
                opcode=src.opcode,
                ir_id=variant.ir_id,
                generated_in=remap[src.generated_in],
                optimized_in=tuple(remap[pe] for pe in src.optimized_in),
            )
            provenance[new_id] = (variant.ir_id, nid)
        for nid in added_ids:
            for u in sorted(variant.neighbors(nid)):
                if u in id_map:
                    edges.add(undirected_edge(id_map[nid], id_map[u]))
                elif u in matched:
                    edges.add(undirected_edge(id_map[nid], matched[u]))

    graph = IRGraph(
        ir_id=r0.ir_id,
        nodes=nodes,
        edges=frozenset(edges),
        phase_sequence=tuple(phase_seq),
    )
    return MergedIR(graph=graph, diffs=tuple(all_diffs), provenance=provenance)
