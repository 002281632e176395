import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hoport import (
    PortGraph,
    PortRef,
    all_equality_witnesses,
    canonical_form,
    digest,
    disjoint_union,
    is_full_subgraph,
    is_subgraph,
    syntactic_equal,
    validate_graph,
)
from hoport.errors import (
    ClassMismatch,
    DuplicateNode,
    PortOccupied,
    PortOutOfRange,
    SelfPort,
    UnknownName,
    UnknownNode,
)

from .util import build, equality_witness_oracle, make_tiny_sig

SIG = make_tiny_sig()


@st.composite
def graphs(draw, max_nodes=5):
    labels = draw(st.lists(st.sampled_from(["A", "B", "X", "Xh"]), max_size=max_nodes))
    g = PortGraph.empty(SIG)
    for lab in labels:
        g, _ = g.add_node(lab)
    free = g.interface()
    if len(free) >= 2:
        perm = draw(st.permutations(range(len(free))))
        pairs = draw(st.integers(0, len(free) // 2))
        for i in range(pairs):
            g = g.add_edge(free[perm[2 * i]], free[perm[2 * i + 1]])
    return g


def shuffled_copy(g: PortGraph, offset: int = 100) -> PortGraph:
    mapping = {nid: f"m{offset + i}" for i, nid in enumerate(reversed(g.node_ids()))}
    return g.relabel_nodes(mapping)


# -- construction ------------------------------------------------------------


def test_add_node_gives_free_ports(tiny_sig):
    g, nid = PortGraph.empty(tiny_sig).add_node("Xh")
    assert g.node_class(nid) == "ho"
    assert g.degree(nid) == 2
    assert g.interface() == [PortRef(nid, 1), PortRef(nid, 2)]


def test_add_node_unknown_label(tiny_sig):
    with pytest.raises(UnknownName):
        PortGraph.empty(tiny_sig).add_node("missing")


def test_add_edge_enforces_linearity(tiny_sig):
    g = build(tiny_sig, {"u": "A", "v": "B", "w": "A"}, [(("u", 1), ("v", 1))])
    with pytest.raises(PortOccupied):
        g.add_edge(("u", 1), ("w", 1))


def test_add_edge_same_port_rejected(tiny_sig):
    g, nid = PortGraph.empty(tiny_sig).add_node("Xh")
    with pytest.raises(SelfPort):
        g.add_edge((nid, 1), (nid, 1))


def test_add_edge_between_two_ports_of_one_node_is_warned(tiny_sig):
    g, nid = PortGraph.empty(tiny_sig).add_node("Xh")
    g = g.add_edge((nid, 1), (nid, 2))
    diags = validate_graph(g)
    assert [d.code for d in diags] == ["self_node_edge"]
    assert diags[0].severity == "warning"


def test_add_edge_port_out_of_range(tiny_sig):
    g, nid = PortGraph.empty(tiny_sig).add_node("A")
    g2, mid = g.add_node("B")
    with pytest.raises(PortOutOfRange):
        g2.add_edge((nid, 2), (mid, 1))


def test_add_edge_unknown_node(tiny_sig):
    g, nid = PortGraph.empty(tiny_sig).add_node("A")
    with pytest.raises(UnknownNode):
        g.add_edge((nid, 1), ("ghost", 1))


def test_fresh_ids_skip_taken_names(tiny_sig):
    g = build(tiny_sig, {"n1": "A"}, [])
    g, nid = g.add_node("B")
    assert nid == "n2"


# -- interface ---------------------------------------------------------------


def test_interface_single_node(tiny_sig):
    g, nid = PortGraph.empty(tiny_sig).add_node("A")
    assert g.interface() == [PortRef(nid, 1)]


def test_interface_empty_when_all_ports_connected(tiny_sig):
    g = build(tiny_sig, {"u": "A", "v": "B"}, [(("u", 1), ("v", 1))])
    assert g.interface() == []


@settings(max_examples=60)
@given(graphs())
def test_interface_cardinality_is_degree_sum_minus_twice_edges(g):
    total = sum(g.degree(n) for n in g.node_ids())
    assert len(g.interface()) == total - 2 * g.edge_count()


@settings(max_examples=60)
@given(graphs())
def test_linearity_every_port_in_at_most_one_edge(g):
    seen = set()
    for e in g.edges:
        for ref in e.ends():
            assert ref not in seen
            seen.add(ref)
    assert validate_graph(g) == [d for d in validate_graph(g) if d.severity == "warning"]


# -- sub-graphs --------------------------------------------------------------


def test_is_subgraph_and_full_subgraph(tiny_sig):
    h = build(tiny_sig, {"u": "A", "v": "B", "w": "Xh"},
              [(("u", 1), ("w", 1)), (("v", 1), ("w", 2))])
    g = h.without_nodes(["v"])
    assert is_subgraph(g, h)
    assert is_full_subgraph(g, h)
    # drop an edge between kept nodes: still a sub-graph, no longer full
    g2 = build(tiny_sig, {"u": "A", "w": "Xh"}, [])
    assert is_subgraph(g2, h)
    assert not is_full_subgraph(g2, h)


def test_induced_full_subgraph_keeps_inner_edges(tiny_sig):
    h = build(tiny_sig, {"u": "A", "v": "B", "w": "Xh"},
              [(("u", 1), ("w", 1)), (("v", 1), ("w", 2))])
    sub = h.induced_full_subgraph(["u", "w"])
    assert sub.node_ids() == ["u", "w"]
    assert sub.edge_count() == 1
    assert is_full_subgraph(sub, h)


@settings(max_examples=60)
@given(graphs(), st.data())
def test_induced_subgraph_is_always_full(g, data):
    ids = g.node_ids()
    subset = data.draw(st.lists(st.sampled_from(ids), unique=True)) if ids else []
    sub = g.induced_full_subgraph(subset)
    assert is_full_subgraph(sub, g)


# -- syntactic equality ------------------------------------------------------


def test_equal_graphs_up_to_renaming(tiny_sig):
    g = build(tiny_sig, {"u": "A", "v": "B"}, [(("u", 1), ("v", 1))])
    h = build(tiny_sig, {"p": "B", "q": "A"}, [(("q", 1), ("p", 1))])
    w = syntactic_equal(g, h)
    assert w is not None
    assert w.fo_map == {"u": "q", "v": "p"}


def test_unequal_when_ports_differ(tiny_sig):
    g = build(tiny_sig, {"u": "A", "w": "Xh", "v": "B"},
              [(("u", 1), ("w", 1)), (("v", 1), ("w", 2))])
    h = build(tiny_sig, {"u": "A", "w": "Xh", "v": "B"},
              [(("u", 1), ("w", 2)), (("v", 1), ("w", 1))])
    assert syntactic_equal(g, h) is None
    assert equality_witness_oracle(g, h) == []


def test_witness_is_lexicographically_least(tiny_sig):
    g = build(tiny_sig, {"u1": "A", "u2": "A"}, [])
    h = build(tiny_sig, {"v1": "A", "v2": "A"}, [])
    w = syntactic_equal(g, h)
    assert w.fo_map == {"u1": "v1", "u2": "v2"}


@settings(max_examples=60)
@given(graphs())
def test_renamed_copy_is_equal_and_matches_oracle(g):
    h = shuffled_copy(g)
    lib = list(all_equality_witnesses(g, h))
    oracle = equality_witness_oracle(g, h)
    assert len(lib) == len(oracle) >= 1
    lib_maps = [{**w.fo_map, **w.ho_map} for w in lib]
    for m in oracle:
        assert m in lib_maps


@settings(max_examples=40)
@given(graphs(max_nodes=3), graphs(max_nodes=3))
def test_equality_agrees_with_oracle_on_random_pairs(g, h):
    assert (syntactic_equal(g, h) is not None) == bool(equality_witness_oracle(g, h))


def test_equality_witness_inverts_and_composes(tiny_sig):
    g = build(tiny_sig, {"u": "A", "v": "B"}, [(("u", 1), ("v", 1))])
    h = shuffled_copy(g, 10)
    k = shuffled_copy(g, 20)
    gh = syntactic_equal(g, h)
    hk = syntactic_equal(h, k)
    assert syntactic_equal(h, g).fo_map == gh.invert().fo_map
    composed = gh.compose(hk)
    kw = [{**w.fo_map, **w.ho_map} for w in all_equality_witnesses(g, k)]
    assert {**composed.fo_map, **composed.ho_map} in kw


# -- canonical digest --------------------------------------------------------


@settings(max_examples=60)
@given(graphs())
def test_digest_invariant_under_renaming(g):
    assert digest(g) == digest(shuffled_copy(g))
    assert canonical_form(g) == canonical_form(shuffled_copy(g))


@settings(max_examples=40)
@given(graphs(max_nodes=4), graphs(max_nodes=4))
def test_digest_equality_iff_syntactic_equality(g, h):
    assert (digest(g) == digest(h)) == (syntactic_equal(g, h) is not None)


# -- serialization -----------------------------------------------------------


def test_json_round_trip_preserves_graph(tiny_sig):
    g = build(tiny_sig, {"u": "A", "w": "Xh", "v": "B"},
              [(("u", 1), ("w", 1)), (("v", 1), ("w", 2))])
    doc = g.to_json()
    back = PortGraph.from_json(doc)
    assert back == g
    assert json.dumps(back.to_json(), sort_keys=True) == json.dumps(doc, sort_keys=True)


def test_json_class_field_checked(tiny_sig):
    doc = {
        "signature": tiny_sig.to_json(),
        "nodes": [{"id": "u", "label": "Xh", "class": "fo"}],
        "edges": [],
    }
    with pytest.raises(ClassMismatch):
        PortGraph.from_json(doc)


def test_dot_output_mentions_ports_and_dashed_ho(tiny_sig):
    g = build(tiny_sig, {"u": "A", "w": "Xh"}, [(("u", 1), ("w", 2))])
    dot = g.to_dot()
    assert "<p1> a" in dot
    assert 'style="dashed"' in dot
    assert '"u":p1 -- "w":p2;' in dot


# -- misc --------------------------------------------------------------------


def test_disjoint_union_requires_distinct_ids(tiny_sig):
    g = build(tiny_sig, {"u": "A"}, [])
    h = build(tiny_sig, {"u": "B"}, [])
    with pytest.raises(DuplicateNode):
        disjoint_union(g, h)
    h2 = build(tiny_sig, {"v": "B"}, [])
    u = disjoint_union(g, h2)
    assert u.node_ids() == ["u", "v"]


def test_without_nodes_drops_incident_edges(tiny_sig):
    g = build(tiny_sig, {"u": "A", "v": "B", "w": "Xh"},
              [(("u", 1), ("w", 1)), (("v", 1), ("w", 2))])
    g2 = g.without_nodes(["w"])
    assert g2.node_ids() == ["u", "v"]
    assert g2.edge_count() == 0


def test_node_listings_are_sorted_and_stable(tiny_sig):
    g = build(tiny_sig, {"n9": "A", "n10": "A", "b": "B"}, [])
    assert g.node_ids() == ["b", "n9", "n10"]
