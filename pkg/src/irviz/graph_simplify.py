"""Shrink a merged IR graph for display without losing analysis signal.

Two passes: drop dead nodes (degree 0), then repeatedly merge node pairs
that carry identical information.  A merged survivor accumulates the
absorbed nodes' multiplicity and identities, so later stages can weight
counts as if no merging had happened.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import replace

from irviz.ir_model import IRGraph, IRNode, undirected_edge


def remove_dead_nodes(g: IRGraph) -> IRGraph:
    """Drop every degree-0 node; edges and surviving nodes are untouched."""
    alive = {nid: node for nid, node in g.nodes.items() if g.degree(nid) > 0}
    return IRGraph(
        ir_id=g.ir_id,
        nodes=alive,
        edges=g.edges,
        phase_sequence=g.phase_sequence,
    )


def mergeable(a: IRNode, b: IRNode, g: IRGraph) -> bool:
    """True when two distinct nodes are indistinguishable for display.

    Requires equal opcode, equal ir_id, equal generating-phase name, equal
    set of optimizing-phase names, and equal neighbor sets once the pair
    itself is excluded (so adjacent twins can merge).
    """
    if a.node_id == b.node_id:
        return False
    if a.opcode != b.opcode or a.ir_id != b.ir_id:
        return False
    if a.generated_in.name != b.generated_in.name:
        return False
    if a.optimized_names() != b.optimized_names():
        return False
    pair = {a.node_id, b.node_id}
    return g.neighbors(a.node_id) - pair == g.neighbors(b.node_id) - pair


def _merge_key(node: IRNode) -> tuple:
    return (
        node.opcode,
        node.ir_id,
        node.generated_in.name,
        tuple(sorted(node.optimized_names())),
    )


def merge_equivalent_nodes(g: IRGraph) -> IRGraph:
    """Merge mergeable pairs to a fixpoint.

    Each round merges the lexicographically first mergeable (a, b) pair by
    node_id and rescans, so the result is deterministic.  The smaller id
    survives, keeps its address, and absorbs the other's multiplicity and
    provenance.
    """
    nodes = dict(g.nodes)
    adj: dict[int, set[int]] = {nid: set(ns) for nid, ns in g.adjacency.items()}
    buckets: dict[tuple, list[int]] = defaultdict(list)
    for nid in sorted(nodes):
        buckets[_merge_key(nodes[nid])].append(nid)

    while True:
        found: tuple[int, int] | None = None
        for a in sorted(nodes):
            for b in buckets[_merge_key(nodes[a])]:
                if b <= a:
                    continue
                if adj[a] - {b} == adj[b] - {a}:
                    found = (a, b)
                    break
            if found:
                break
        if found is None:
            break

        a, b = found
        absorbed = nodes[b]
        nodes[a] = replace(
            nodes[a],
            multiplicity=nodes[a].multiplicity + absorbed.multiplicity,
            merged_from=nodes[a].merged_from
            + (absorbed.identity,)
            + absorbed.merged_from,
        )
        del nodes[b]
        buckets[_merge_key(absorbed)].remove(b)
        for u in adj[b]:
            adj[u].discard(b)
            if u != a:
                adj[u].add(a)
                adj[a].add(u)
        adj[a].discard(b)
        del adj[b]

    edges = frozenset(
        undirected_edge(u, v) for u in adj for v in adj[u] if u < v
    )
    return IRGraph(
        ir_id=g.ir_id,
        nodes=nodes,
        edges=edges,
        phase_sequence=g.phase_sequence,
    )


def simplify(g: IRGraph, *, remove_dead: bool = True, merge_nodes: bool = True) -> IRGraph:
    """Run the enabled passes in order: dead-node removal, then node merging."""
    if remove_dead:
        g = remove_dead_nodes(g)
    if merge_nodes:
        g = merge_equivalent_nodes(g)
    return g
