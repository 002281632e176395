import json

from hoport import fixtures as fx
from hoport.portgraph import PortGraph, validate_graph
from hoport.rewrite import Rule
from hoport.signature import PSignature


def test_proof_signature_is_well_formed():
    sig = fx.proof_signature()
    assert sig.validate() == []
    for name in ["scope_1", "axiom", "weaken", "copy", "imp_intro",
                 "imp_intro_closed", "imp_elim", "and_intro",
                 "and_elim_l", "and_elim_r",
                 "any3_out1", "any3_p", "any4_p", "arg",
                 "body", "body2", "subtree"]:
        assert name in sig
    assert sig.arity("body") == 3
    assert sig.arity("subtree") == 1


def test_wider_scopes_are_available_on_request():
    sig = fx.proof_signature(max_scope=3)
    assert sig.arity("scope_3") == 7  # three inputs, a principal port, three outputs


def test_signature_json_round_trip():
    sig = fx.proof_signature()
    assert PSignature.from_json(sig.to_json()).to_json() == sig.to_json()


def test_every_fixture_graph_is_well_formed():
    graphs = [
        fx.example_proof(), fx.first_order_target(),
        fx.beta_subject(), fx.beta_subject_open(),
        fx.duplication_subject(), fx.erasure_subject(),
    ] + list(fx.first_order_patterns().values())
    for g in graphs:
        assert [d for d in validate_graph(g) if d.severity == "error"] == []


def test_every_fixture_rule_round_trips_through_json():
    for rule in [fx.beta_rule(), fx.beta_rule_no_discharge_port(),
                 fx.duplication_rule(), fx.erasure_rule(),
                 fx.drop_weaken_rule(), fx.split_weaken_rule()]:
        back = Rule.from_json(json.loads(json.dumps(rule.to_json())))
        assert back.to_json() == rule.to_json()
        assert back.name == rule.name


def test_bundles_pair_each_subject_with_its_rules():
    bundles = fx.fixture_bundles()
    assert set(bundles) == {"beta", "beta_open", "duplication", "erasure", "example"}
    for name, bundle in bundles.items():
        assert set(bundle) == {"graph", "rules"}
        assert isinstance(bundle["graph"], PortGraph)
        for rule in bundle["rules"]:
            assert rule.sig == bundle["graph"].sig


def test_written_fixture_files_load_back_identically(tmp_path):
    names = fx.write_fixtures(tmp_path)
    assert names == sorted(names)
    assert "signature.json" in names and "beta_subject.json" in names

    sig = PSignature.from_json(
        json.loads((tmp_path / "signature.json").read_text()))
    assert sig.to_json() == fx.proof_signature().to_json()

    subject = PortGraph.from_json(
        json.loads((tmp_path / "beta_subject.json").read_text()))
    assert subject.to_json() == fx.beta_subject().to_json()

    rule = Rule.from_json(
        json.loads((tmp_path / "beta_rule.json").read_text()))
    assert rule.to_json() == fx.beta_rule().to_json()

    for name in names:  # every file is canonical JSON: sorted keys, compact, one newline
        text = (tmp_path / name).read_text()
        doc = json.loads(text)
        assert text == json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"
