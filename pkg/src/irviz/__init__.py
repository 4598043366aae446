"""irviz: localize JIT optimization bugs by metro-mapping merged IR graphs."""

from irviz.analysis import (
    LineSuspicion,
    MissingAnnotation,
    PhaseMatrix,
    SuspicionReport,
    most_active_phase,
    phase_relationships,
    phases_of_node,
    suspicion_ranking,
)
from irviz.diff_merge import (
    MergedIR,
    PhaseDiff,
    diff_variant,
    match_nodes,
    merge_candidates,
    node_signature,
)
from irviz.graph_simplify import (
    merge_equivalent_nodes,
    mergeable,
    remove_dead_nodes,
    simplify,
)
from irviz.hypergraph import (
    build_hypergraph,
    extract_hypergraph,
    merge_same_name_hyperedges,
    merge_stations_by_opcode,
)
from irviz.ingest import (
    DumpBundle,
    DumpParseError,
    DumpValidationError,
    load_dump,
    parse_dump,
    write_dump,
)
from irviz.ir_model import (
    HYPEREDGE_ID_DELIMITER,
    Hyperedge,
    Hypergraph,
    IRGraph,
    IRNode,
    NodeIdentity,
    PhaseExecution,
    undirected_edge,
    validate_ir_graph,
)
from irviz.layout import MetroLine, MetroMap, Station, layout_map, order_stations
from irviz.synth import GroundTruth, SynthSpec, generate_bundle

__version__ = "0.1.0"

__all__ = [
    "HYPEREDGE_ID_DELIMITER",
    "DumpBundle",
    "DumpParseError",
    "DumpValidationError",
    "GroundTruth",
    "Hyperedge",
    "Hypergraph",
    "IRGraph",
    "IRNode",
    "LineSuspicion",
    "MergedIR",
    "MetroLine",
    "MetroMap",
    "MissingAnnotation",
    "NodeIdentity",
    "PhaseDiff",
    "PhaseExecution",
    "PhaseMatrix",
    "Station",
    "SuspicionReport",
    "SynthSpec",
    "build_hypergraph",
    "diff_variant",
    "extract_hypergraph",
    "generate_bundle",
    "layout_map",
    "load_dump",
    "match_nodes",
    "merge_candidates",
    "merge_equivalent_nodes",
    "merge_same_name_hyperedges",
    "merge_stations_by_opcode",
    "mergeable",
    "most_active_phase",
    "node_signature",
    "order_stations",
    "parse_dump",
    "phase_relationships",
    "phases_of_node",
    "remove_dead_nodes",
    "simplify",
    "suspicion_ranking",
    "undirected_edge",
    "validate_ir_graph",
    "write_dump",
]
