"""Signature diffing and the N-way candidate merge."""

import random
from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

import strategies
from _builders import graph, node, pe
from _oracles import diff_counts, signature
from irviz.diff_merge import (
    diff_variant,
    match_nodes,
    merge_candidates,
    node_signature,
)
from irviz.ir_model import PhaseExecution, validate_ir_graph

ALPHA = pe("Alpha", 0)
BETA = pe("Beta", 1)


def test_signature_sorts_neighbor_opcodes():
    g = graph(
        [node(0, "phi"), node(1, "load"), node(2, "add")],
        edges=[(0, 1), (0, 2)],
    )
    assert node_signature(g.nodes[0], g) == ("phi", "Alpha", ("add", "load"))
    assert node_signature(g.nodes[1], g) == ("load", "Alpha", ("phi",))


def test_signature_ignores_ids_and_addresses():
    a = graph([node(0, "add"), node(1, "load")], edges=[(0, 1)])
    b = graph(
        [node(7, "add", address="0xdead"), node(3, "load", address="0xbeef")],
        edges=[(3, 7)],
        ir_id=4,
    )
    assert node_signature(a.nodes[0], a) == node_signature(b.nodes[7], b)


def test_identical_graphs_have_no_diffs():
    g = graph([node(0, "add"), node(1, "load")], edges=[(0, 1)])
    assert diff_variant(g, g) == []


def test_renumbered_variant_has_no_diffs():
    r0 = graph(
        [node(0, "add"), node(1, "load"), node(2, "const", opt=(BETA,))],
        edges=[(0, 1), (1, 2)],
        phases=[ALPHA, BETA],
    )
    ri = graph(
        [
            node(5, "add", address="0xa"),
            node(3, "load", address="0xb"),
            node(9, "const", opt=(BETA,), address="0xc"),
        ],
        edges=[(5, 3), (3, 9)],
        phases=[ALPHA, BETA],
        ir_id=1,
    )
    assert diff_variant(r0, ri) == []


def test_isolated_extra_node_is_added_in_its_generating_phase():
    r0 = graph([node(0, "add")])
    ri = graph([node(0, "add"), node(4, "checkbounds")], ir_id=2)
    diffs = diff_variant(r0, ri)
    assert len(diffs) == 1
    d = diffs[0]
    assert d.phase_name == "Alpha"
    assert d.variant_ir_id == 2
    assert d.added_nodes == frozenset({4})
    assert d.missing_signatures == ()


def test_removed_node_reports_missing_signature():
    r0 = graph([node(0, "add"), node(1, "checkbounds")])
    ri = graph([node(0, "add")], ir_id=1)
    diffs = diff_variant(r0, ri)
    assert len(diffs) == 1
    assert diffs[0].added_nodes == frozenset()
    assert diffs[0].missing_signatures == (("checkbounds", "Alpha", ()),)


def test_optimized_membership_diffs_under_the_optimizing_phase():
    # Same node sets; the variant additionally optimizes node 1 in Beta.
    r0 = graph(
        [node(0, "add"), node(1, "load")],
        phases=[ALPHA, BETA],
    )
    ri = graph(
        [node(0, "add"), node(1, "load", opt=(BETA,))],
        phases=[ALPHA, BETA],
        ir_id=1,
    )
    diffs = diff_variant(r0, ri)
    assert [d.phase_name for d in diffs] == ["Beta"]
    assert diffs[0].added_nodes == frozenset({1})


def test_attached_extra_node_perturbs_its_neighbor():
    # Wiring a new node into the graph changes the neighbor's signature,
    # so the neighbor shows up as added-and-missing alongside it.
    r0 = graph([node(0, "add"), node(1, "load")], edges=[(0, 1)])
    ri = graph(
        [node(0, "add"), node(1, "load"), node(2, "const")],
        edges=[(0, 1), (1, 2)],
        ir_id=1,
    )
    diffs = diff_variant(r0, ri)
    assert len(diffs) == 1
    assert diffs[0].added_nodes == frozenset({1, 2})
    assert diffs[0].missing_signatures == (("load", "Alpha", ("add",)),)


@given(strategies.ir_graphs(max_nodes=10), strategies.ir_graphs(max_nodes=10))
def test_diff_agrees_with_counter_oracle(r0, ri):
    diffs = diff_variant(r0, ri)
    expected = diff_counts(r0, ri)
    assert {d.phase_name for d in diffs} == set(expected)
    for d in diffs:
        surplus, deficit = expected[d.phase_name]
        got_added = Counter(signature(ri, nid) for nid in d.added_nodes)
        assert got_added == surplus
        assert Counter(d.missing_signatures) == deficit


@given(strategies.ir_graphs(max_nodes=12))
def test_diff_against_self_is_empty(g):
    assert diff_variant(g, g) == []


def test_match_nodes_zips_ascending_and_leaves_surplus():
    r0 = graph([node(0, "add"), node(1, "add")])
    ri = graph([node(3, "add"), node(5, "add"), node(8, "add")], ir_id=1)
    assert match_nodes(r0, ri) == {3: 0, 5: 1}


def test_merge_attaches_added_clump_to_matched_original():
    # Variant 1 grows a const hanging off the load; the load's own signature
    # shifts, so the merged graph gains fresh copies of both, the new load
    # re-anchored to the original add node.
    r0 = graph([node(0, "add"), node(1, "load")], edges=[(0, 1)])
    ri = graph(
        [node(5, "add"), node(7, "load"), node(9, "const")],
        edges=[(5, 7), (7, 9)],
        ir_id=1,
    )
    merged = merge_candidates(r0, [ri])
    g = merged.graph
    assert validate_ir_graph(g) == []
    assert set(g.nodes) == {0, 1, 2, 3}
    assert g.nodes[2].opcode == "load"
    assert g.nodes[3].opcode == "const"
    assert g.nodes[2].ir_id == 1 and g.nodes[3].ir_id == 1
    assert g.edges == frozenset({(0, 1), (0, 2), (2, 3)})
    assert merged.provenance == {0: (0, 0), 1: (0, 1), 2: (1, 7), 3: (1, 9)}


def test_merge_with_identical_variant_changes_nothing():
    r0 = graph([node(0, "add"), node(1, "load")], edges=[(0, 1)])
    ri = graph([node(0, "add"), node(1, "load")], edges=[(0, 1)], ir_id=1)
    merged = merge_candidates(r0, [ri])
    assert merged.graph.nodes == r0.nodes
    assert merged.graph.edges == r0.edges
    assert merged.diffs == ()


def test_merge_reuses_exact_phase_execution():
    r0 = graph([node(0, "add")], phases=[ALPHA])
    ri = graph([node(0, "add"), node(1, "const")], phases=[ALPHA], ir_id=1)
    merged = merge_candidates(r0, [ri])
    assert merged.graph.phase_sequence == (ALPHA,)
    assert merged.graph.nodes[1].generated_in == ALPHA


def test_merge_reassigns_colliding_ordinal():
    r0 = graph([node(0, "add")], phases=[ALPHA])
    beta0 = pe("Beta", 0)
    ri = graph(
        [node(0, "add"), node(1, "const", gen=beta0)],
        phases=[ALPHA, beta0],
        ir_id=1,
    )
    merged = merge_candidates(r0, [ri])
    assert merged.graph.phase_sequence == (ALPHA, PhaseExecution("Beta", 1))
    assert merged.graph.nodes[1].generated_in == PhaseExecution("Beta", 1)


def test_merge_preserves_variant_relative_phase_order():
    r0 = graph([node(0, "add")], phases=[ALPHA, pe("Keep", 5)])
    gamma = pe("Gamma", 2)
    beta5 = pe("Beta", 5)
    ri = graph(
        [
            node(0, "add"),
            node(1, "const", gen=gamma, opt=(beta5,)),
        ],
        phases=[ALPHA, gamma, beta5],
        ir_id=1,
    )
    merged = merge_candidates(r0, [ri])
    assert merged.graph.phase_sequence == (
        ALPHA,
        pe("Keep", 5),
        gamma,
        PhaseExecution("Beta", 6),
    )
    got = merged.graph.nodes[1]
    assert got.generated_in == gamma
    assert got.optimized_in == (PhaseExecution("Beta", 6),)
    # Relative order within the variant survives the reassignment.
    assert got.generated_in.exec_ordinal < got.optimized_in[0].exec_ordinal


def test_merge_is_insensitive_to_variant_list_order():
    r0 = graph([node(0, "add")])
    v1 = graph([node(0, "add"), node(1, "const")], ir_id=1)
    v2 = graph([node(0, "add"), node(1, "phi")], ir_id=2)
    a = merge_candidates(r0, [v1, v2])
    b = merge_candidates(r0, [v2, v1])
    assert a.graph == b.graph
    assert a.diffs == b.diffs
    assert a.provenance == b.provenance


@given(strategies.dump_bundles(max_variants=3, max_nodes=10))
def test_merge_invariants_over_random_bundles(b):
    merged = merge_candidates(b.original, b.variants)
    g = merged.graph
    assert validate_ir_graph(g) == []
    assert set(merged.provenance) == set(g.nodes)
    for nid in b.original.nodes:
        assert merged.provenance[nid] == (0, nid)

    per_variant_added = 0
    by_variant: dict[int, set[int]] = {}
    for d in merged.diffs:
        by_variant.setdefault(d.variant_ir_id, set()).update(d.added_nodes)
    per_variant_added = sum(len(s) for s in by_variant.values())
    assert len(g.nodes) == len(b.original.nodes) + per_variant_added

    for nid, n in g.nodes.items():
        src_ir, src_nid = merged.provenance[nid]
        assert n.ir_id == src_ir
        if src_ir == 0:
            assert n == b.original.nodes[src_nid]

    # Original edges survive untouched; fresh nodes never lose their phases.
    assert b.original.edges <= g.edges
    known = set(g.phase_sequence)
    for n in g.nodes.values():
        assert n.generated_in in known
        assert set(n.optimized_in) <= known


@given(st.randoms(use_true_random=False), strategies.dump_bundles(max_variants=3, max_nodes=8))
def test_merge_output_is_stable_under_shuffled_input(rng, b):
    shuffled = list(b.variants)
    rng.shuffle(shuffled)
    a = merge_candidates(b.original, b.variants)
    c = merge_candidates(b.original, shuffled)
    assert a.graph == c.graph and a.diffs == c.diffs


def test_merge_with_no_variants_returns_the_original():
    r0 = graph([node(0, "add"), node(1, "load")], edges=[(0, 1)])
    merged = merge_candidates(r0, [])
    assert merged.graph.nodes == r0.nodes
    assert merged.graph.edges == r0.edges
    assert merged.diffs == ()
