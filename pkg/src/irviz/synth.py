"""Generate synthetic dump bundles with known, recoverable bug injections.

The original graph is random but realistic in shape; non-buggy variants
are the same compilation with renumbered node ids and fresh addresses;
buggy variants additionally inject (or delete) a small clump of nodes in
one designated phase.  The returned ground truth lists the injection per
variant so end-to-end recovery can be checked exactly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from irviz.ingest import DumpBundle
from irviz.ir_model import IRGraph, IRNode, PhaseExecution, undirected_edge

PHASE_NAME_POOL = (
    "GraphBuilder", "Inlining", "Typer", "TypedLowering", "LoadElimination",
    "EscapeAnalysis", "SimplifiedLowering", "GenericLowering", "EarlyTrimming",
    "BranchElimination", "ControlFlowOptimization", "MemoryOptimization",
    "MachineOperatorOptimization", "DecompressionOptimization", "SelectLowering",
    "FrameElider", "LateOptimization", "LoopPeeling", "LoopExitElimination",
    "LoopUnrolling", "StoreStoreElimination", "RedundancyElimination",
    "DeadCodeElimination", "ConstantFolding", "TypeNarrowing",
    "CheckpointElimination", "CommonOperatorReduction", "CallReduction",
    "ContextSpecialization", "TypedOptimization", "LateGraphTrimming",
    "EffectControlLinearization", "ScheduleBuilder", "RegisterAllocation",
    "InstructionSelection", "JumpThreading", "TailCallOptimization",
    "OsrDeconstruction", "StringConstantLowering", "PropertyAccessReduction",
    "IntrinsicLowering", "BoundsCheckHoisting", "AllocationFolding",
    "WriteBarrierElimination", "MachineGraphVerifier", "SpillSlotMerging",
    "StackSlotOptimization", "ValueNumbering",
)

BASE_OPCODES = (
    "start", "end", "return", "parameter", "phi", "loop", "merge", "branch",
    "iftrue", "iffalse", "add", "sub", "mul", "load", "store", "call",
    "const", "heapconstant", "framestate", "checkpoint", "statevalues",
    "typeguard", "numberadd", "referenceequal", "allocate",
)

# Disjoint from BASE_OPCODES so injected nodes never collide with an
# original signature.
INJECTED_OPCODES = (
    "checkbounds", "deoptimizeunless", "speculativeadd", "assertnotnull",
    "checkmaps",
)


@dataclass(frozen=True)
class SynthSpec:
    """Knobs for one synthetic debugging scenario."""

    n_variants: int = 19
    nodes_range: tuple[int, int] = (300, 500)
    phases_range: tuple[int, int] = (30, 40)
    buggy_phase: str = "EarlyOptimization"
    n_buggy_variants: int = 9
    injection: str = "added"


@dataclass(frozen=True)
class GroundTruth:
    """What was injected where.

    For "added" injection, injected_nodes maps a buggy variant's ir_id to
    the node_ids of the clump inside that variant.  For "removed", it maps
    to the original graph's node_ids that the variant lacks.
    """

    buggy_phase: str
    injection: str
    buggy_variants: tuple[int, ...]
    injected_nodes: dict[int, tuple[int, ...]] = field(default_factory=dict)


def _check_spec(spec: SynthSpec) -> None:
    for label, (lo, hi) in (
        ("nodes_range", spec.nodes_range),
        ("phases_range", spec.phases_range),
    ):
        if not (1 <= lo <= hi <= 10000):
            raise ValueError(f"{label} must satisfy 1 <= lo <= hi <= 10000, got {lo}-{hi}")
    if not (0 <= spec.n_variants <= 10000):
        raise ValueError(f"n_variants out of range: {spec.n_variants}")
    if not (0 <= spec.n_buggy_variants <= spec.n_variants):
        raise ValueError(
            f"n_buggy_variants must be between 0 and n_variants, "
            f"got {spec.n_buggy_variants}"
        )
    if spec.injection not in ("added", "removed"):
        raise ValueError(f"injection must be 'added' or 'removed', got {spec.injection!r}")
    if not spec.buggy_phase or "@" in spec.buggy_phase:
        raise ValueError(f"invalid buggy_phase name: {spec.buggy_phase!r}")


def _make_phase_sequence(rng: random.Random, spec: SynthSpec) -> tuple[PhaseExecution, ...]:
    """Random sequence containing buggy_phase exactly once; a few other
    names may execute twice so same-name merging has work to do."""
    total = rng.randint(*spec.phases_range)
    pool = [name for name in PHASE_NAME_POOL if name != spec.buggy_phase]
    repeats = rng.randint(0, min(3, max(0, total - 2)))
    distinct_needed = total - 1 - repeats
    while len(pool) < distinct_needed:
        pool.append(f"OptimizationPass{len(pool)}")
    base = rng.sample(pool, distinct_needed) if distinct_needed > 0 else []
    repeated = rng.sample(base, min(repeats, len(base))) if base else []
    names = base + repeated
    rng.shuffle(names)
    names.insert(rng.randrange(len(names) + 1), spec.buggy_phase)
    return tuple(PhaseExecution(name, i) for i, name in enumerate(names))


def _fresh_address(rng: random.Random) -> str:
    return f"0x{rng.getrandbits(48):012x}"


def _make_original(
    rng: random.Random, spec: SynthSpec, phases: tuple[PhaseExecution, ...]
) -> IRGraph:
    n = rng.randint(*spec.nodes_range)
    buggy_pe = next(pe for pe in phases if pe.name == spec.buggy_phase)
    others = [pe for pe in phases if pe.name != spec.buggy_phase]

    # The buggy phase generates only a couple of nodes; activity is skewed
    # across the rest so line lengths vary like a real compilation's.
    n_buggy_members = min(rng.randint(2, 3), n)
    weights = [1.0 / (i + 1) for i in range(len(others))]
    nodes: dict[int, IRNode] = {}
    for nid in range(n):
        if nid < n_buggy_members:
            gen = buggy_pe
        elif others:
            gen = rng.choices(others, weights=weights)[0]
        else:
            gen = buggy_pe
        optimized: tuple[PhaseExecution, ...] = ()
        if others and rng.random() < 0.5:
            candidates = [pe for pe in others if pe != gen]
            if candidates:
                k = min(rng.randint(1, 3), len(candidates))
                optimized = tuple(rng.sample(candidates, k))
        nodes[nid] = IRNode(
            node_id=nid,
            address=_fresh_address(rng),
            opcode=rng.choice(BASE_OPCODES),
            ir_id=0,
            generated_in=gen,
            optimized_in=optimized,
        )

    edges: set[tuple[int, int]] = set()
    for nid in range(1, n):
        if nid >= n_buggy_members and rng.random() < 0.02:
            continue  # leave the occasional dead node
        parent = rng.randrange(nid)
        edges.add(undirected_edge(nid, parent))
    extra = n // 5
    for _ in range(extra):
        a = rng.randrange(n)
        b = rng.randrange(n)
        if a != b:
            edges.add(undirected_edge(a, b))

    return IRGraph(ir_id=0, nodes=nodes, edges=frozenset(edges), phase_sequence=phases)


def _renumbered_variant(
    rng: random.Random, original: IRGraph, ir_id: int
) -> tuple[dict[int, IRNode], set[tuple[int, int]], dict[int, int]]:
    """Same structure, shuffled node ids, fresh addresses."""
    old_ids = sorted(original.nodes)
    new_ids = list(range(len(old_ids)))
    rng.shuffle(new_ids)
    mapping = dict(zip(old_ids, new_ids))
    nodes = {}
    for old_id in old_ids:
        src = original.nodes[old_id]
        nid = mapping[old_id]
        nodes[nid] = IRNode(
            node_id=nid,
            address=_fresh_address(rng),
            opcode=src.opcode,
            ir_id=ir_id,
            generated_in=src.generated_in,
            optimized_in=src.optimized_in,
        )
    edges = {undirected_edge(mapping[a], mapping[b]) for a, b in original.edges}
    return nodes, edges, mapping


def _inject_clump(
    rng: random.Random,
    nodes: dict[int, IRNode],
    edges: set[tuple[int, int]],
    ir_id: int,
    buggy_pe: PhaseExecution,
) -> tuple[int, ...]:
    """Add a connected 2-3 node clump generated in the buggy phase.

    Clump nodes use opcodes outside the base alphabet and connect only to
    each other, so every other node's signature is untouched and recovery
    by diffing is exact.
    """
    size = rng.randint(2, 3)
    start = max(nodes) + 1 if nodes else 0
    ids = tuple(range(start, start + size))
    for nid in ids:
        nodes[nid] = IRNode(
            node_id=nid,
            address=_fresh_address(rng),
            opcode=rng.choice(INJECTED_OPCODES),
            ir_id=ir_id,
            generated_in=buggy_pe,
            optimized_in=(),
        )
    for a, b in zip(ids, ids[1:]):
        edges.add(undirected_edge(a, b))
    return ids


def generate_bundle(seed: int, spec: SynthSpec | None = None) -> tuple[DumpBundle, GroundTruth]:
    """Deterministically build one scenario: original, variants, ground truth."""
    spec = spec or SynthSpec()
    _check_spec(spec)
    rng = random.Random(seed)

    phases = _make_phase_sequence(rng, spec)
    original = _make_original(rng, spec, phases)
    buggy_pe = next(pe for pe in phases if pe.name == spec.buggy_phase)
    buggy_ids = tuple(
        sorted(rng.sample(range(1, spec.n_variants + 1), spec.n_buggy_variants))
    )

    variants: list[IRGraph] = []
    injected: dict[int, tuple[int, ...]] = {}
    for ir_id in range(1, spec.n_variants + 1):
        nodes, edges, mapping = _renumbered_variant(rng, original, ir_id)
        if ir_id in buggy_ids:
            if spec.injection == "added":
                injected[ir_id] = _inject_clump(rng, nodes, edges, ir_id, buggy_pe)
            else:
                buggy_members = sorted(
                    nid
                    for nid, node in original.nodes.items()
                    if node.generated_in == buggy_pe
                )
                count = min(rng.randint(1, 3), len(buggy_members))
                victims = sorted(rng.sample(buggy_members, count))
                injected[ir_id] = tuple(victims)
                for victim in victims:
                    doomed = mapping[victim]
                    del nodes[doomed]
                    edges = {e for e in edges if doomed not in e}
        variants.append(
            IRGraph(
                ir_id=ir_id,
                nodes=nodes,
                edges=frozenset(edges),
                phase_sequence=phases,
            )
        )

    bundle = DumpBundle(
        original=original,
        variants=tuple(variants),
        metadata={
            "generator": "synth",
            "seed": str(seed),
            "buggy_phase": spec.buggy_phase,
            "injection": spec.injection,
        },
    )
    truth = GroundTruth(
        buggy_phase=spec.buggy_phase,
        injection=spec.injection,
        buggy_variants=buggy_ids,
        injected_nodes=injected,
    )
    return bundle, truth
