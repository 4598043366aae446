"""Read and write IR dump bundles.

The dump is the contract with whatever produced the IR family: a single
JSON document holding the original program's graph (ir_id 0) and every
variant graph, plus free-form metadata.  The parser refuses any bundle
that a downstream stage could choke on, so the rest of the pipeline can
assume well-formed input.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from irviz.ir_model import (
    HYPEREDGE_ID_DELIMITER,
    IRGraph,
    IRNode,
    PhaseExecution,
    undirected_edge,
    validate_ir_graph,
)


class DumpParseError(ValueError):
    """Malformed dump syntax or structure (bad JSON, wrong field types)."""


class DumpValidationError(ValueError):
    """Syntactically fine dump that violates a semantic rule."""


@dataclass(frozen=True)
class DumpBundle:
    """The full IR family of one debugging session."""

    original: IRGraph
    variants: tuple[IRGraph, ...]
    metadata: dict[str, str] = field(default_factory=dict)

    def graphs(self) -> tuple[IRGraph, ...]:
        return (self.original, *self.variants)


def _require(value, kind, where: str):
    if not isinstance(value, kind) or isinstance(value, bool):
        raise DumpParseError(f"{where}: expected {kind.__name__}, got {type(value).__name__}")
    return value


def _check_phase_name(name: str, where: str) -> str:
    if not name:
        raise DumpValidationError(f"{where}: empty phase name")
    if HYPEREDGE_ID_DELIMITER in name:
        raise DumpValidationError(
            f"{where}: phase name {name!r} contains reserved character "
            f"{HYPEREDGE_ID_DELIMITER!r}"
        )
    return name


def _parse_graph(doc: dict, where: str) -> IRGraph:
    ir_id = _require(doc.get("ir_id"), int, f"{where}.ir_id")

    phases: list[PhaseExecution] = []
    by_ordinal: dict[int, PhaseExecution] = {}
    for i, entry in enumerate(_require(doc.get("phase_sequence"), list, f"{where}.phase_sequence")):
        loc = f"{where}.phase_sequence[{i}]"
        entry = _require(entry, dict, loc)
        name = _check_phase_name(_require(entry.get("name"), str, f"{loc}.name"), loc)
        ordinal = _require(entry.get("exec_ordinal"), int, f"{loc}.exec_ordinal")
        if ordinal < 0:
            raise DumpValidationError(f"{loc}: negative exec_ordinal {ordinal}")
        if ordinal in by_ordinal:
            raise DumpValidationError(f"{loc}: duplicate exec_ordinal {ordinal}")
        pe = PhaseExecution(name=name, exec_ordinal=ordinal)
        phases.append(pe)
        by_ordinal[ordinal] = pe

    nodes: dict[int, IRNode] = {}
    for i, entry in enumerate(_require(doc.get("nodes"), list, f"{where}.nodes")):
        loc = f"{where}.nodes[{i}]"
        entry = _require(entry, dict, loc)
        node_id = _require(entry.get("node_id"), int, f"{loc}.node_id")
        if node_id < 0:
            raise DumpValidationError(f"{loc}: negative node_id {node_id}")
        if node_id in nodes:
            raise DumpValidationError(f"{loc}: duplicate node_id {node_id}")
        address = _require(entry.get("address"), str, f"{loc}.address")
        opcode = _require(entry.get("opcode"), str, f"{loc}.opcode")
        gen_ordinal = _require(entry.get("generated_in"), int, f"{loc}.generated_in")
        if gen_ordinal not in by_ordinal:
            raise DumpValidationError(
                f"{loc}: node {node_id} references unknown phase ordinal {gen_ordinal}"
            )
        optimized: list[PhaseExecution] = []
        for j, opt_ordinal in enumerate(
            _require(entry.get("optimized_in", []), list, f"{loc}.optimized_in")
        ):
            opt_ordinal = _require(opt_ordinal, int, f"{loc}.optimized_in[{j}]")
            if opt_ordinal not in by_ordinal:
                raise DumpValidationError(
                    f"{loc}: node {node_id} references unknown phase ordinal {opt_ordinal}"
                )
            optimized.append(by_ordinal[opt_ordinal])
        nodes[node_id] = IRNode(
            node_id=node_id,
            address=address,
            opcode=opcode,
            ir_id=ir_id,
            generated_in=by_ordinal[gen_ordinal],
            optimized_in=tuple(optimized),
        )

    edges: set[tuple[int, int]] = set()
    for i, pair in enumerate(_require(doc.get("edges"), list, f"{where}.edges")):
        loc = f"{where}.edges[{i}]"
        pair = _require(pair, list, loc)
        if len(pair) != 2:
            raise DumpParseError(f"{loc}: edge must be a pair, got {len(pair)} entries")
        a = _require(pair[0], int, f"{loc}[0]")
        b = _require(pair[1], int, f"{loc}[1]")
        for endpoint in (a, b):
            if endpoint not in nodes:
                raise DumpValidationError(f"{loc}: edge references missing node {endpoint}")
        if a == b:
            raise DumpValidationError(f"{loc}: self-loop at node {a}")
        edge = undirected_edge(a, b)
        if edge in edges:
            raise DumpValidationError(f"{loc}: duplicate edge ({edge[0]}, {edge[1]})")
        edges.add(edge)

    graph = IRGraph(
        ir_id=ir_id,
        nodes=nodes,
        edges=frozenset(edges),
        phase_sequence=tuple(phases),
    )
    violations = validate_ir_graph(graph)
    if violations:
        raise DumpValidationError(f"{where}: " + "; ".join(violations))
    return graph


def parse_dump(data: bytes | str) -> DumpBundle:
    """Parse a dump document into a validated bundle.

    Raises DumpParseError for malformed syntax (with line/column where
    JSON decoding fails) and DumpValidationError for semantic violations,
    naming the offending entity.
    """
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise DumpParseError(f"dump is not UTF-8: {exc}") from exc
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise DumpParseError(
            f"line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc

    doc = _require(doc, dict, "dump")
    metadata_doc = _require(doc.get("metadata", {}), dict, "metadata")
    metadata: dict[str, str] = {}
    for key, value in metadata_doc.items():
        metadata[_require(key, str, "metadata key")] = _require(
            value, str, f"metadata[{key!r}]"
        )

    graphs: list[IRGraph] = []
    for i, graph_doc in enumerate(_require(doc.get("graphs"), list, "graphs")):
        graphs.append(_parse_graph(_require(graph_doc, dict, f"graphs[{i}]"), f"graphs[{i}]"))

    seen_ids: set[int] = set()
    for graph in graphs:
        if graph.ir_id in seen_ids:
            raise DumpValidationError(f"duplicate ir_id {graph.ir_id}")
        seen_ids.add(graph.ir_id)

    originals = [g for g in graphs if g.ir_id == 0]
    if len(originals) != 1:
        raise DumpValidationError(
            f"dump must contain exactly one graph with ir_id 0, found {len(originals)}"
        )
    variants = tuple(g for g in graphs if g.ir_id != 0)
    return DumpBundle(original=originals[0], variants=variants, metadata=metadata)


def _graph_to_doc(graph: IRGraph) -> dict:
    for pe in graph.phase_sequence:
        _check_phase_name(pe.name, f"graph ir_id={graph.ir_id}")
    nodes = []
    for node_id in sorted(graph.nodes):
        node = graph.nodes[node_id]
        if node.ir_id != graph.ir_id or node.multiplicity != 1 or node.merged_from:
            raise DumpValidationError(
                f"graph ir_id={graph.ir_id}: node {node_id} carries simplification "
                f"state; dumps hold unsimplified graphs only"
            )
        nodes.append(
            {
                "node_id": node.node_id,
                "address": node.address,
                "opcode": node.opcode,
                "generated_in": node.generated_in.exec_ordinal,
                "optimized_in": [pe.exec_ordinal for pe in node.optimized_in],
            }
        )
    return {
        "ir_id": graph.ir_id,
        "phase_sequence": [
            {"name": pe.name, "exec_ordinal": pe.exec_ordinal}
            for pe in graph.phase_sequence
        ],
        "nodes": nodes,
        "edges": [[a, b] for a, b in sorted(graph.edges)],
    }


def write_dump(bundle: DumpBundle) -> bytes:
    """Serialize a bundle; parse_dump(write_dump(b)) is structurally equal to b."""
    doc = {
        "metadata": {k: bundle.metadata[k] for k in sorted(bundle.metadata)},
        "graphs": [_graph_to_doc(g) for g in bundle.graphs()],
    }
    return (json.dumps(doc, indent=2) + "\n").encode("utf-8")


def load_dump(path) -> DumpBundle:
    """Read and parse a dump file from disk."""
    with open(path, "rb") as fh:
        return parse_dump(fh.read())
