"""Convert a simplified IR graph into an optimization-phase hypergraph.

Each phase execution becomes a hyperedge (a metro line) whose members are
the nodes it generated or optimized.  Hyperedges sharing a name collapse
into one line with an "@"-joined id; stations indistinguishable inside a
line collapse into one marker with summed multiplicity.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import replace

from irviz.ir_model import (
    HYPEREDGE_ID_DELIMITER,
    Hyperedge,
    Hypergraph,
    IRGraph,
    IRNode,
    PhaseExecution,
)


def extract_hypergraph(g: IRGraph) -> Hypergraph:
    """One hyperedge per phase execution referenced by at least one node.

    A node is a member of its generating hyperedge and of every hyperedge
    it was optimized in.  Unreferenced phase executions produce nothing.
    """
    members: dict[PhaseExecution, set[int]] = defaultdict(set)
    for nid in sorted(g.nodes):
        for pe in g.nodes[nid].referenced_phases():
            members[pe].add(nid)
    hyperedges = tuple(
        Hyperedge(
            id=str(pe.exec_ordinal),
            name=pe.name,
            members=frozenset(members[pe]),
        )
        for pe in sorted(members, key=lambda pe: pe.exec_ordinal)
    )
    return Hypergraph(nodes=dict(g.nodes), hyperedges=hyperedges)


def merge_same_name_hyperedges(h: Hypergraph) -> Hypergraph:
    """Collapse same-name hyperedges; ids join ascending ordinals with "@"."""
    groups: dict[str, list[Hyperedge]] = defaultdict(list)
    for he in h.hyperedges:
        groups[he.name].append(he)
    merged: list[Hyperedge] = []
    for name, group in groups.items():
        ordinals = sorted(o for he in group for o in he.ordinals())
        union: frozenset[int] = frozenset().union(*(he.members for he in group))
        merged.append(
            Hyperedge(
                id=HYPEREDGE_ID_DELIMITER.join(str(o) for o in ordinals),
                name=name,
                members=union,
            )
        )
    merged.sort(key=lambda he: he.ordinals()[0])
    return Hypergraph(nodes=dict(h.nodes), hyperedges=tuple(merged))


def _station_key(node: IRNode) -> tuple:
    return (
        node.opcode,
        node.ir_id,
        node.generated_in.name,
        tuple(sorted(node.optimized_names())),
    )


def merge_stations_by_opcode(h: Hypergraph) -> Hypergraph:
    """Merge stations with equal opcode, ir_id, and phase-name memberships.

    The criterion deliberately keeps ir_id apart: collapsing original and
    variant stations would erase the provenance signal the map exists to
    show.  Smallest node_id survives; multiplicities add.
    """
    groups: dict[tuple, list[int]] = defaultdict(list)
    for nid in sorted(h.nodes):
        groups[_station_key(h.nodes[nid])].append(nid)

    replacement: dict[int, int] = {}
    merged_nodes: dict[int, IRNode] = {}
    for ids in groups.values():
        survivor = h.nodes[ids[0]]
        multiplicity = survivor.multiplicity
        merged_from = survivor.merged_from
        for nid in ids[1:]:
            absorbed = h.nodes[nid]
            multiplicity += absorbed.multiplicity
            merged_from = merged_from + (absorbed.identity,) + absorbed.merged_from
            replacement[nid] = survivor.node_id
        merged_nodes[survivor.node_id] = replace(
            survivor, multiplicity=multiplicity, merged_from=merged_from
        )

    hyperedges = tuple(
        Hyperedge(
            id=he.id,
            name=he.name,
            members=frozenset(replacement.get(m, m) for m in he.members),
        )
        for he in h.hyperedges
    )
    nodes = {nid: merged_nodes[nid] for nid in sorted(merged_nodes)}
    return Hypergraph(nodes=nodes, hyperedges=hyperedges)


def build_hypergraph(
    g: IRGraph, *, merge_hyperedges: bool = True, merge_stations: bool = True
) -> Hypergraph:
    """Extraction plus the enabled reduction passes, in order."""
    h = extract_hypergraph(g)
    if merge_hyperedges:
        h = merge_same_name_hyperedges(h)
    if merge_stations:
        h = merge_stations_by_opcode(h)
    return h
