import pytest

from hoport import NodeNameDecl, PSignature, cport, vport
from hoport.errors import ArityMismatch, DuplicateName, KindInterfaceMismatch, UnknownName


def test_declare_constant_and_variable_names(tiny_sig):
    assert tiny_sig.arity("A") == 1
    assert tiny_sig.kind("A") == "fo_constant"
    assert tiny_sig.arity("Xh") == 2
    assert [p.text for p in tiny_sig.interface_of("Xh")] == ["y", "z"]
    assert tiny_sig.validate() == []


def test_declare_rejects_duplicate_name(tiny_sig):
    with pytest.raises(DuplicateName):
        tiny_sig.declare(NodeNameDecl("A", "fo_constant", (cport("a"),)))


def test_declare_rejects_constant_with_variable_port():
    with pytest.raises(KindInterfaceMismatch):
        PSignature().declare(NodeNameDecl("C", "fo_constant", (vport("x"),)))


def test_declare_rejects_ho_with_constant_port():
    with pytest.raises(KindInterfaceMismatch):
        PSignature().declare(NodeNameDecl("H", "ho_variable", (cport("a"),)))


def test_declare_rejects_arity_interface_disagreement():
    with pytest.raises(ArityMismatch):
        PSignature().declare(NodeNameDecl("C", "fo_constant", (cport("a"),), arity=2))


def test_fo_variable_may_mix_port_kinds():
    sig = PSignature().declare(
        NodeNameDecl("V", "fo_variable", (cport("p"), vport("x"))))
    assert sig.arity("V") == 2


def test_validate_reports_non_injective_interface():
    # hand-built to bypass declare()'s gatekeeping
    bad = PSignature({"A": NodeNameDecl("A", "fo_constant", (cport("a"), cport("a")))})
    codes = [d.code for d in bad.validate()]
    assert "non_injective_interface" in codes


def test_same_text_different_port_kind_is_distinct():
    sig = PSignature().declare(
        NodeNameDecl("V", "fo_variable", (cport("p"), vport("p"))))
    assert sig.validate() == []


def test_interface_of_unknown_name(tiny_sig):
    with pytest.raises(UnknownName):
        tiny_sig.interface_of("nope")


def test_zero_arity_names_allowed():
    sig = PSignature().declare(NodeNameDecl("unit", "fo_constant", ()))
    assert sig.arity("unit") == 0
    sig = sig.declare(NodeNameDecl("Zh", "ho_variable", ()))
    assert sig.arity("Zh") == 0


def test_json_round_trip(tiny_sig):
    doc = tiny_sig.to_json()
    back = PSignature.from_json(doc)
    assert back == tiny_sig
    assert back.to_json() == doc
