"""Core data model for JIT IR graph families and their phase hypergraphs.

The IR of one compiled program variant is a simple undirected graph whose
nodes carry basic attributes (id, address, opcode, source variant) and
optimization attributes (generating phase, optimizing phases).  Projecting
the optimization attributes onto the node set turns the graph into a
hypergraph: each optimization phase becomes one hyperedge, rendered
downstream as a metro line.

All types are immutable values; pipeline stages build new values instead
of mutating their inputs, so everything here is safe to share.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

HYPEREDGE_ID_DELIMITER = "@"


@dataclass(frozen=True)
class PhaseExecution:
    """One optimization-phase run: name plus position in the phase sequence.

    The same phase name may run several times in one compilation; the
    execution ordinal disambiguates the runs and doubles as the phase ID
    shown in the UI.
    """

    name: str
    exec_ordinal: int


@dataclass(frozen=True)
class NodeIdentity:
    """Identity of a node absorbed during simplification.

    Kept on the survivor so hover panes can still show where a merged
    station came from, and so tests can check that no membership is lost.
    """

    ir_id: int
    node_id: int
    address: str


@dataclass(frozen=True)
class IRNode:
    """A sea-of-nodes vertex.

    ``ir_id`` names the program variant the node came from (0 is the
    original program).  ``multiplicity`` counts how many original nodes
    this one stands for after simplification; ``merged_from`` lists the
    absorbed identities, so ``multiplicity == 1 + len(merged_from)``.
    """

    node_id: int
    address: str
    opcode: str
    ir_id: int
    generated_in: PhaseExecution
    optimized_in: tuple[PhaseExecution, ...] = ()
    merged_from: tuple[NodeIdentity, ...] = ()
    multiplicity: int = 1

    @property
    def identity(self) -> NodeIdentity:
        return NodeIdentity(self.ir_id, self.node_id, self.address)

    def optimized_names(self) -> frozenset[str]:
        return frozenset(p.name for p in self.optimized_in)

    def referenced_phases(self) -> tuple[PhaseExecution, ...]:
        return (self.generated_in, *self.optimized_in)


def undirected_edge(a: int, b: int) -> tuple[int, int]:
    """Normalize an edge to (low, high) endpoint order."""
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class IRGraph:
    """Simple undirected IR graph for one program variant.

    ``nodes`` is keyed by node_id; ``edges`` holds normalized (low, high)
    endpoint pairs.  ``phase_sequence`` lists every phase execution of the
    compilation, including phases that touched no node.
    """

    ir_id: int
    nodes: dict[int, IRNode]
    edges: frozenset[tuple[int, int]]
    phase_sequence: tuple[PhaseExecution, ...]

    @cached_property
    def adjacency(self) -> dict[int, frozenset[int]]:
        neigh: dict[int, set[int]] = {nid: set() for nid in self.nodes}
        for a, b in self.edges:
            if a == b:
                continue
            if a in neigh:
                neigh[a].add(b)
            if b in neigh:
                neigh[b].add(a)
        return {nid: frozenset(ns) for nid, ns in neigh.items()}

    def neighbors(self, node_id: int) -> frozenset[int]:
        return self.adjacency.get(node_id, frozenset())

    def degree(self, node_id: int) -> int:
        return len(self.neighbors(node_id))


@dataclass(frozen=True)
class Hyperedge:
    """One metro line: an optimization phase and the stations it touches.

    ``id`` is either a single execution ordinal in decimal or several
    ordinals joined by "@" in ascending order once same-name phases have
    been merged.
    """

    id: str
    name: str
    members: frozenset[int]

    def ordinals(self) -> tuple[int, ...]:
        return tuple(int(part) for part in self.id.split(HYPEREDGE_ID_DELIMITER))


@dataclass(frozen=True)
class Hypergraph:
    """Stations plus phase hyperedges; the metro map's logical structure."""

    nodes: dict[int, IRNode]
    hyperedges: tuple[Hyperedge, ...]

    def hyperedge_named(self, name: str) -> Hyperedge:
        for he in self.hyperedges:
            if he.name == name:
                return he
        raise KeyError(name)


def validate_ir_graph(g: IRGraph) -> list[str]:
    """Check every graph and node invariant; return violation descriptions.

    An empty list means the graph is well formed.  Violations are data,
    not exceptions: callers decide whether a bad graph is fatal.
    """
    violations: list[str] = []

    seen_ordinals: dict[int, str] = {}
    sequence = set()
    for pe in g.phase_sequence:
        if not pe.name:
            violations.append(f"phase at ordinal {pe.exec_ordinal} has empty name")
        if pe.exec_ordinal < 0:
            violations.append(f"negative exec_ordinal {pe.exec_ordinal} in phase_sequence")
        if pe.exec_ordinal in seen_ordinals:
            violations.append(
                f"duplicate exec_ordinal {pe.exec_ordinal} in phase_sequence"
            )
        seen_ordinals[pe.exec_ordinal] = pe.name
        sequence.add(pe)

    for key in sorted(g.nodes):
        node = g.nodes[key]
        if node.node_id != key:
            violations.append(f"node key {key} does not match node_id {node.node_id}")
        if node.node_id < 0:
            violations.append(f"negative node_id {node.node_id}")
        if node.generated_in not in sequence:
            violations.append(
                f"node {node.node_id} generated in unknown phase "
                f"({node.generated_in.name}, {node.generated_in.exec_ordinal})"
            )
        seen_opt: set[PhaseExecution] = set()
        for pe in node.optimized_in:
            if pe not in sequence:
                violations.append(
                    f"node {node.node_id} optimized in unknown phase "
                    f"({pe.name}, {pe.exec_ordinal})"
                )
            if pe in seen_opt:
                violations.append(
                    f"node {node.node_id} has duplicate optimized_in entry "
                    f"({pe.name}, {pe.exec_ordinal})"
                )
            seen_opt.add(pe)
        if node.generated_in in seen_opt:
            violations.append(
                f"node {node.node_id} lists its generating phase "
                f"({node.generated_in.name}, {node.generated_in.exec_ordinal}) "
                f"in optimized_in"
            )
        if node.multiplicity != 1 + len(node.merged_from):
            violations.append(
                f"node {node.node_id} multiplicity {node.multiplicity} != "
                f"1 + {len(node.merged_from)} merged_from entries"
            )

    for a, b in sorted(g.edges):
        if a == b:
            violations.append(f"self-loop at node {a}")
            continue
        for endpoint in (a, b):
            if endpoint not in g.nodes:
                violations.append(f"edge ({a}, {b}) references missing node {endpoint}")
        if a > b and (b, a) in g.edges:
            # both orientations present: same undirected edge twice
            violations.append(f"duplicate edge ({b}, {a})")

    return violations
