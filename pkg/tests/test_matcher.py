import json

import pytest

from hoport import fixtures as fx
from hoport.errors import EmptyPattern, MatchTimeout, SignatureMismatch, SubjectTooLarge
from hoport.matcher import (
    MatchOptions,
    Morphism,
    check_morphism,
    find_morphisms,
    is_valid_morphism,
    matches,
    sorted_morphisms,
)
from hoport.oracle import brute_force_morphisms, canonical_solution_set, solution_set
from hoport.portgraph import PortGraph, PortRef
from hoport.signature import HO_VARIABLE, NodeNameDecl, PSignature, cport

from .util import build, make_tiny_sig

TINY = make_tiny_sig()


def tiny(nodes, edges):
    return build(TINY, nodes, edges)


# -- first-order matching ----------------------------------------------------


@pytest.mark.parametrize("name,expected", [
    ("arity_clash", 0),
    ("injection_clash", 0),
    ("disconnected_pair", 1),
    ("connected_pair", 1),
])
def test_first_order_pattern_counts(name, expected):
    pattern = fx.first_order_patterns()[name]
    target = fx.first_order_target()
    found = list(find_morphisms(pattern, target))
    assert len(found) == expected
    oracle = list(brute_force_morphisms(pattern, target))
    assert solution_set(found) == solution_set(oracle)


def test_first_order_unique_assignment_details():
    pattern = fx.first_order_patterns()["connected_pair"]
    (m,) = find_morphisms(pattern, fx.first_order_target())
    assert m.node_map == {"u": "sc", "v": "iic"}
    assert m.name_subst == {"any3_out1": "scope_1", "any3_p": "imp_intro_closed"}
    assert m.body_map == {} and m.body_ports == {}
    assert not check_morphism(pattern, fx.first_order_target(), m)


def test_variable_name_used_twice_must_map_consistently():
    pattern = tiny({"u": "X", "v": "X"}, [])
    subject = tiny({"a": "A", "b": "B"}, [])
    # A and B both have arity 1, but one name cannot become both
    assert list(find_morphisms(pattern, subject)) == []
    subject2 = tiny({"a": "A", "b": "A"}, [])
    found = list(find_morphisms(pattern, subject2))
    assert len(found) == 2
    assert all(m.name_subst == {"X": "A"} for m in found)


def test_constant_label_must_reappear_verbatim():
    pattern = tiny({"u": "A"}, [])
    subject = tiny({"b": "B"}, [])
    assert not matches(pattern, subject)
    assert matches(pattern, tiny({"a": "A"}, []))


def test_port_name_substitution_is_positional():
    (m,) = find_morphisms(fx.first_order_patterns()["connected_pair"],
                          fx.first_order_target())
    subst = m.port_name_subst(fx.proof_signature())
    assert subst["any3_out1"] == {"a1": "in_1", "a2": "p"}
    assert subst["any3_p"] == {"a1": "in_l", "a2": "in_r"}


# -- higher-order matching ---------------------------------------------------


def test_beta_pattern_has_exactly_one_match_oracle_confirmed():
    lhs = fx.beta_rule().lhs
    subject = fx.beta_subject()
    found = list(find_morphisms(lhs, subject))
    oracle = list(brute_force_morphisms(lhs, subject))
    assert len(found) == len(oracle) == 1
    assert solution_set(found) == solution_set(oracle)
    (m,) = found
    assert m.node_map == {"l_s": "sc", "l_impi": "ii", "l_impe": "ie",
                          "l_arg": "ax2"}
    assert m.name_subst == {"arg": "axiom"}
    assert m.body_map == {"l_body": frozenset({"ax1", "wk"})}
    assert m.body_ports == {"l_body": {1: PortRef("ax1", 1),
                                       2: PortRef("wk", 1),
                                       3: PortRef("ax1", 2)}}


def test_captured_body_may_be_disconnected():
    (m,) = find_morphisms(fx.beta_rule().lhs, fx.beta_subject())
    image = fx.beta_subject().induced_full_subgraph(m.body_map["l_body"])
    assert image.edge_count() == 0 and image.node_count() == 2


def test_free_ports_of_body_count_must_equal_arity():
    # Xh has arity 2: a single A node (one free port) cannot be its body
    pattern = tiny({"h": "Xh"}, [])
    subject = tiny({"a": "A"}, [])
    assert list(find_morphisms(pattern, subject)) == []
    # two disconnected one-port nodes expose two free ports
    found = list(find_morphisms(pattern, tiny({"a": "A", "b": "B"}, [])))
    assert {frozenset(m.body_map["h"]) for m in found} == {frozenset({"a", "b"})}


def test_empty_body_only_for_arity_zero():
    sig = make_tiny_sig().declare(NodeNameDecl("Zh", HO_VARIABLE, ()))
    pattern = build(sig, {"h": "Zh"}, [])
    subject = build(sig, {"a": "A", "b": "B"}, [(("a", 1), ("b", 1))])
    found = list(find_morphisms(pattern, subject))
    bodies = {m.body_map["h"] for m in found}
    # the empty capture and the closed two-node component both qualify
    assert bodies == {frozenset(), frozenset({"a", "b"})}


def test_pattern_ho_self_edge_is_unsatisfiable():
    pattern = tiny({"h": "Xh"}, [(("h", 1), ("h", 2))])
    subject = tiny({"a": "A", "b": "B"}, [(("a", 1), ("b", 1))])
    assert list(find_morphisms(pattern, subject)) == []


def test_anchored_ports_are_not_permuted():
    # both ports of Xh are pinned by pattern edges: exactly one bijection
    pattern = tiny({"u": "A", "v": "B", "h": "Xh"},
                   [(("u", 1), ("h", 1)), (("v", 1), ("h", 2))])
    subject = tiny({"a": "A", "b": "B", "x": "Xh"},
                   [(("a", 1), ("x", 1)), (("b", 1), ("x", 2))])
    found = list(find_morphisms(pattern, subject))
    assert len(found) == 1
    assert found[0].body_ports["h"] == {1: PortRef("x", 1), 2: PortRef("x", 2)}


def test_loose_port_bijections_multiply_solutions():
    pattern = tiny({"h": "Xh"}, [])
    subject = tiny({"a": "A", "b": "B"}, [])
    all_bijections = list(find_morphisms(pattern, subject))
    assert len(all_bijections) == 2
    single = list(find_morphisms(
        pattern, subject, MatchOptions(enumerate_ho_port_bijections=False)))
    assert len(single) == 1
    assert canonical_solution_set(all_bijections) == canonical_solution_set(single)


def test_repeated_ho_name_requires_coherent_equal_bodies():
    pattern = tiny({"h1": "Xh", "h2": "Xh"}, [])
    subject_ok = tiny({"a1": "A", "b1": "B", "a2": "A", "b2": "B"}, [])
    found = list(find_morphisms(pattern, subject_ok))
    oracle = list(brute_force_morphisms(pattern, subject_ok))
    # 4 ordered splits into an {A,B} pair each; the second bijection is
    # forced by coherence once the first is chosen
    assert len(found) == len(oracle) == 8
    assert solution_set(found) == solution_set(oracle)

    subject_bad = tiny({"a1": "A", "b1": "B", "a2": "A", "a3": "A"}, [])
    assert list(find_morphisms(pattern, subject_bad)) == []
    assert list(brute_force_morphisms(pattern, subject_bad)) == []


def test_context_edges_at_free_pattern_ports_are_allowed():
    # the subject connects Xh's second port onward; the pattern leaves it free
    pattern = tiny({"u": "A", "h": "Xh"}, [(("u", 1), ("h", 1))])
    subject = tiny({"a": "A", "x": "Xh", "b": "B"},
                   [(("a", 1), ("x", 1)), (("x", 2), ("b", 1))])
    found = list(find_morphisms(pattern, subject))
    assert {frozenset(m.body_map["h"]) for m in found} == {frozenset({"x"})}


# -- options and errors ------------------------------------------------------


def test_empty_pattern_is_rejected():
    with pytest.raises(EmptyPattern):
        list(find_morphisms(PortGraph.empty(TINY), tiny({"a": "A"}, [])))
    with pytest.raises(EmptyPattern):
        list(brute_force_morphisms(PortGraph.empty(TINY), tiny({"a": "A"}, [])))


def test_signature_mismatch_is_rejected():
    pattern = build(make_tiny_sig(), {"u": "A"}, [])
    subject = tiny({"a": "A"}, [])
    # signatures compare by value: an independently built equal one is fine
    assert matches(pattern, subject)
    solo_sig = PSignature().declare(NodeNameDecl("A", "fo_constant", (cport("a"),)))
    solo = build(solo_sig, {"a": "A"}, [])
    with pytest.raises(SignatureMismatch):
        list(find_morphisms(pattern, solo))


def test_max_solutions_truncates():
    pattern = tiny({"u": "X"}, [])
    subject = tiny({"a": "A", "b": "B", "c": "A"}, [])
    assert len(list(find_morphisms(pattern, subject))) == 3
    assert len(list(find_morphisms(pattern, subject,
                                   MatchOptions(max_solutions=2)))) == 2


def test_timeout_raises():
    nodes = {f"a{i}": "A" for i in range(1, 7)}
    nodes.update({f"h{i}": "Xh" for i in range(1, 3)})
    pattern = tiny({"h1": "Xh", "h2": "Xh", "h3": "Xh"}, [])
    subject = tiny(nodes, [])
    with pytest.raises(MatchTimeout):
        list(find_morphisms(pattern, subject, MatchOptions(timeout_ms=0)))


def test_subject_size_cap_for_reference_enumeration():
    pattern = tiny({"u": "A"}, [])
    subject = tiny({f"a{i}": "A" for i in range(1, 10)}, [])
    with pytest.raises(SubjectTooLarge):
        list(brute_force_morphisms(pattern, subject))
    assert list(brute_force_morphisms(pattern, subject, max_subject_nodes=9))


def test_sorted_morphisms_are_canonically_ordered():
    pattern = tiny({"u": "X"}, [])
    subject = tiny({"b": "B", "a": "A", "c": "A"}, [])
    ordered = sorted_morphisms(pattern, subject)
    assert [m.node_map["u"] for m in ordered] == ["a", "b", "c"]


# -- morphism objects --------------------------------------------------------


def test_morphism_json_round_trip():
    (m,) = find_morphisms(fx.beta_rule().lhs, fx.beta_subject())
    doc = json.loads(json.dumps(m.to_json()))
    back = Morphism.from_json(doc)
    assert back.sort_key() == m.sort_key()
    assert is_valid_morphism(fx.beta_rule().lhs, fx.beta_subject(), back)


def test_check_morphism_rejects_corrupted_matches():
    lhs, subject = fx.beta_rule().lhs, fx.beta_subject()
    (m,) = find_morphisms(lhs, subject)

    wrong_node = Morphism({**m.node_map, "l_arg": "ax1"}, m.body_map,
                          m.name_subst, m.body_ports)
    assert check_morphism(lhs, subject, wrong_node)

    smaller_body = Morphism(m.node_map, {"l_body": frozenset({"ax1"})},
                            m.name_subst, m.body_ports)
    assert any("free ports" in p for p in check_morphism(lhs, subject, smaller_body))

    swapped_ports = Morphism(m.node_map, m.body_map, m.name_subst,
                             {"l_body": {1: PortRef("wk", 1),
                                         2: PortRef("ax1", 1),
                                         3: PortRef("ax1", 2)}})
    assert any("not preserved" in p for p in check_morphism(lhs, subject, swapped_ports))

    overlapping = Morphism(m.node_map,
                           {"l_body": frozenset({"ax1", "wk", "ax2"})},
                           m.name_subst, m.body_ports)
    assert check_morphism(lhs, subject, overlapping)

    missing_cover = Morphism({}, m.body_map, m.name_subst, m.body_ports)
    assert any("cover" in p for p in check_morphism(lhs, subject, missing_cover))


def test_matcher_emission_is_deterministic():
    lhs, subject = fx.beta_rule().lhs, fx.beta_subject()
    first = [m.sort_key() for m in find_morphisms(lhs, subject)]
    second = [m.sort_key() for m in find_morphisms(lhs, subject)]
    assert first == second
