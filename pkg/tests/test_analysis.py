"""Phase activity, overlap, attribution, and suspicion scoring."""

import random
from fractions import Fraction

import pytest
from hypothesis import given

import strategies
from _builders import graph, node, pe
from _oracles import intersection_matrix
from irviz.analysis import (
    most_active_phase,
    phase_relationships,
    phases_of_node,
    suspicion_ranking,
)
from irviz.diff_merge import PhaseDiff
from irviz.hypergraph import build_hypergraph, extract_hypergraph
from irviz.ir_model import Hyperedge, Hypergraph

ALPHA = pe("Alpha", 0)


def _line_sizes(sizes):
    """Hypergraph with one line per (name, ordinal, size), distinct members."""
    nodes = []
    nid = 0
    phases = [pe(name, o) for name, o, _ in sizes]
    for (name, o, size), ph in zip(sizes, phases):
        for _ in range(size):
            nodes.append(node(nid, gen=ph))
            nid += 1
    return extract_hypergraph(graph(nodes, phases=phases))


def test_most_active_breaks_ties_by_earlier_ordinal():
    h = _line_sizes([("Alpha", 0, 5), ("Phi", 1, 9), ("Gamma", 2, 9)])
    assert most_active_phase(h) == ("Phi", 9)


def test_most_active_of_single_line():
    h = _line_sizes([("Alpha", 0, 4)])
    assert most_active_phase(h) == ("Alpha", 4)


def test_most_active_of_two_lines():
    h = _line_sizes([("A", 0, 11), ("B", 1, 3)])
    assert most_active_phase(h) == ("A", 11)


def test_most_active_weighs_station_multiplicity():
    beta = pe("Beta", 1)
    g = graph(
        [
            node(0, gen=ALPHA, multiplicity=4, merged_from=(
                node(7).identity, node(8).identity, node(9).identity)),
            node(1, gen=beta),
            node(2, gen=beta),
            node(3, gen=beta),
        ],
        phases=[ALPHA, beta],
    )
    h = extract_hypergraph(g)
    assert most_active_phase(h) == ("Alpha", 4)


def test_most_active_of_empty_hypergraph_is_an_error():
    h = Hypergraph(nodes={}, hyperedges=())
    with pytest.raises(ValueError, match="no phases"):
        most_active_phase(h)


def test_relationships_of_disjoint_lines():
    h = _line_sizes([("A", 0, 2), ("B", 1, 3)])
    m = phase_relationships(h)
    assert m.names == ("A", "B")
    assert m.counts == ((2, 0), (0, 3))


def test_relationships_of_three_way_membership():
    phi, gamma = pe("Phi", 1), pe("Gamma", 2)
    g = graph([node(0, gen=ALPHA, opt=(phi, gamma))], phases=[ALPHA, phi, gamma])
    m = phase_relationships(extract_hypergraph(g))
    assert m.names == ("Alpha", "Phi", "Gamma")
    assert m.counts == ((1, 1, 1), (1, 1, 1), (1, 1, 1))


def test_relationships_match_oracle_on_thirty_lines():
    rng = random.Random(404)
    phases = [pe(f"P{i:02d}", i) for i in range(30)]
    nodes = []
    for nid in range(80):
        gen = rng.choice(phases)
        others = [p for p in phases if p is not gen]
        opt = rng.sample(others, rng.randint(0, 3))
        nodes.append(node(nid, gen=gen, opt=tuple(opt)))
    h = build_hypergraph(
        graph(nodes, phases=phases), merge_stations=False
    )
    assert len(h.hyperedges) == 30
    m = phase_relationships(h)
    assert [list(row) for row in m.counts] == intersection_matrix(h)


@given(strategies.hypergraphs())
def test_relationships_match_oracle_everywhere(h):
    m = phase_relationships(h)
    assert [list(row) for row in m.counts] == intersection_matrix(h)
    assert m.counts == tuple(zip(*m.counts))


def test_phases_of_unoptimized_node():
    h = extract_hypergraph(graph([node(0)]))
    assert phases_of_node(h, 0) == ("Alpha", ())


def test_phases_of_three_membership_node():
    phi, gamma = pe("Phi", 1), pe("Gamma", 2)
    g = graph([node(0, gen=ALPHA, opt=(phi, gamma))], phases=[ALPHA, phi, gamma])
    h = extract_hypergraph(g)
    assert phases_of_node(h, 0) == ("Alpha", ("Phi", "Gamma"))


def test_phases_of_node_orders_by_execution():
    late, early = pe("Late", 12), pe("Early", 7)
    g = graph([node(0, gen=ALPHA, opt=(late, early))], phases=[ALPHA, early, late])
    h = extract_hypergraph(g)
    assert phases_of_node(h, 0) == ("Alpha", ("Early", "Late"))


def test_phases_of_unknown_station_is_an_error():
    h = extract_hypergraph(graph([node(0)]))
    with pytest.raises(KeyError, match="unknown station 42"):
        phases_of_node(h, 42)


def _foreign_line(n_members, n_foreign, name="EarlyOptimization", ordinal=0):
    ph = pe(name, ordinal)
    nodes = [
        node(i, gen=ph, ir=1 if i < n_foreign else 0)
        for i in range(n_members)
    ]
    return nodes, ph


def test_suspicion_nine_of_eleven_ranks_first():
    early_nodes, early = _foreign_line(11, 9)
    clean = pe("LoadElimination", 1)
    clean_nodes = [node(100 + i, gen=clean) for i in range(6)]
    g = graph(early_nodes + clean_nodes, phases=[early, clean])
    report = suspicion_ranking(build_hypergraph(g, merge_stations=False))
    top = report.lines[0]
    assert top.name == "EarlyOptimization"
    assert top.member_count == 11
    assert top.non_original_count == 9
    assert top.suspicion == Fraction(9, 11)
    assert 0.81 < float(top.suspicion) < 0.82
    assert report.lines[1].suspicion == 0


def test_suspicion_zero_when_everything_is_original():
    h = _line_sizes([("A", 0, 3), ("B", 1, 2)])
    report = suspicion_ranking(h)
    assert all(line.suspicion == 0 for line in report.lines)


def test_suspicion_half():
    nodes, ph = _foreign_line(4, 2, name="A")
    h = extract_hypergraph(graph(nodes, phases=[ph]))
    assert suspicion_ranking(h).lines[0].suspicion == Fraction(1, 2)


def test_suspicion_ties_sort_by_name():
    a, b = pe("Zeta", 0), pe("Eta", 1)
    g = graph(
        [node(0, gen=a, ir=1), node(1, gen=a), node(2, gen=b, ir=1), node(3, gen=b)],
        phases=[a, b],
    )
    report = suspicion_ranking(build_hypergraph(g, merge_stations=False))
    assert [line.name for line in report.lines] == ["Eta", "Zeta"]


def test_suspicion_is_multiplicity_weighted():
    early = pe("EarlyOptimization", 0)
    g = graph(
        [
            node(0, gen=early, ir=0, multiplicity=2, merged_from=(node(50).identity,)),
            node(
                1,
                gen=early,
                ir=1,
                multiplicity=9,
                merged_from=tuple(node(60 + i, ir=1).identity for i in range(8)),
            ),
        ],
        phases=[early],
    )
    report = suspicion_ranking(extract_hypergraph(g))
    top = report.lines[0]
    assert top.member_count == 11
    assert top.non_original_count == 9
    assert top.suspicion == Fraction(9, 11)


def test_missing_annotations_attach_to_their_line():
    h = _line_sizes([("A", 0, 2), ("B", 1, 2)])
    sig = ("add", "A", ())
    diffs = [
        PhaseDiff("A", 2, frozenset(), (sig,)),
        PhaseDiff("A", 1, frozenset(), (sig, sig)),
        PhaseDiff("Gone", 1, frozenset(), (sig,)),
        PhaseDiff("B", 1, frozenset({5}), ()),
    ]
    report = suspicion_ranking(h, diffs)
    by_name = {line.name: line for line in report.lines}
    attached = by_name["A"].missing
    assert [(a.variant_ir_id, len(a.signatures)) for a in attached] == [(1, 2), (2, 1)]
    assert by_name["B"].missing == ()
    assert [a.phase_name for a in report.unattached_missing] == ["Gone"]


def test_report_serializes_to_plain_data():
    nodes, ph = _foreign_line(11, 9)
    h = extract_hypergraph(graph(nodes, phases=[ph]))
    sig = ("add", "EarlyOptimization", ("load",))
    report = suspicion_ranking(h, [PhaseDiff("EarlyOptimization", 3, frozenset(), (sig,))])
    doc = report.to_json_dict()
    assert set(doc) == {"lines", "unattached_missing"}
    line = doc["lines"][0]
    assert line["name"] == "EarlyOptimization"
    assert line["id"] == "0"
    assert line["suspicion"] == "9/11"
    assert line["suspicion_value"] == pytest.approx(9 / 11)
    assert line["missing"][0]["count"] == 1
    assert line["missing"][0]["signatures"][0] == {
        "opcode": "add",
        "generated_in": "EarlyOptimization",
        "neighbor_opcodes": ["load"],
    }


def test_empty_member_line_scores_zero():
    h = Hypergraph(nodes={}, hyperedges=(Hyperedge("0", "A", frozenset()),))
    report = suspicion_ranking(h)
    assert report.lines[0].member_count == 0
    assert report.lines[0].suspicion == 0


@given(strategies.hypergraphs())
def test_suspicion_stays_in_unit_interval(h):
    by_key = {(he.name, he.id): he for he in h.hyperedges}
    for line in suspicion_ranking(h).lines:
        assert 0 <= line.suspicion <= 1
        he = by_key[(line.name, line.id)]
        if all(h.nodes[m].ir_id == 0 for m in he.members):
            assert line.suspicion == 0
