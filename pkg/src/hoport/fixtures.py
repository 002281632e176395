"""Built-in example signature, graphs and rules.

The examples model natural-deduction proof structures as port-graphs:

* leaves: ``axiom`` (use a hypothesis), ``weaken`` (discard one),
  ``copy`` (share one);
* connectives: implication introduction — ``imp_intro`` discharges a
  hypothesis through a dedicated port, ``imp_intro_closed`` does not —
  implication elimination, and conjunction introduction/eliminations;
* ``scope_n``: a box delimiting a sub-proof with n tracked hypotheses.

On top of the constants, the signature declares first-order variables
(wildcards over single nodes, some pinning a constant port name at a fixed
position) and higher-order variables (capturing whole sub-graphs):

* ``any3_out1``, ``any3_p``, ``any4_p``: arity-3/3/4 wildcards whose last
  port must carry the named constant;
* ``arg``: an arity-2 wildcard standing for an argument node;
* ``body`` (arity 3), ``body2`` (arity 2), ``subtree`` (arity 1): captured
  sub-graphs.

The rewrite rules implement function application: ``beta`` replaces an
introduction applied to an argument by the captured body with the argument
wired into the discharged hypothesis's place; ``duplicate`` resolves a
``copy`` node by cloning the shared sub-graph; ``erase`` resolves a
``weaken`` node by deleting the discarded sub-graph.
"""

from __future__ import annotations

import json
from functools import lru_cache
from pathlib import Path

from .portgraph import PortGraph
from .rewrite import Rule, compile_rule
from .signature import (
    FO_CONSTANT,
    FO_VARIABLE,
    HO_VARIABLE,
    NodeNameDecl,
    PSignature,
    cport,
    vport,
)


@lru_cache(maxsize=None)
def proof_signature(max_scope: int = 2) -> PSignature:
    """The example signature; scope boxes are declared up to ``max_scope``."""
    decls = []
    for n in range(1, max_scope + 1):
        ports = ([cport(f"in_{i}") for i in range(1, n + 1)]
                 + [cport("p")]
                 + [cport(f"out_{i}") for i in range(1, n + 1)])
        decls.append(NodeNameDecl(f"scope_{n}", FO_CONSTANT, tuple(ports)))
    decls += [
        NodeNameDecl("axiom", FO_CONSTANT, (cport("in"), cport("p"))),
        NodeNameDecl("weaken", FO_CONSTANT, (cport("p"),)),
        NodeNameDecl("copy", FO_CONSTANT, (cport("p"), cport("out_l"), cport("out_r"))),
        NodeNameDecl("imp_intro", FO_CONSTANT,
                     (cport("in_l"), cport("in_r"), cport("scope"), cport("p"))),
        NodeNameDecl("imp_intro_closed", FO_CONSTANT,
                     (cport("in_l"), cport("in_r"), cport("p"))),
        NodeNameDecl("imp_elim", FO_CONSTANT,
                     (cport("in_l"), cport("in_r"), cport("p"))),
        NodeNameDecl("and_intro", FO_CONSTANT,
                     (cport("in_l"), cport("in_r"), cport("p"))),
        NodeNameDecl("and_elim_l", FO_CONSTANT, (cport("in"), cport("p"))),
        NodeNameDecl("and_elim_r", FO_CONSTANT, (cport("in"), cport("p"))),
        # first-order wildcards
        NodeNameDecl("any3_out1", FO_VARIABLE, (vport("a1"), vport("a2"), cport("out_1"))),
        NodeNameDecl("any3_p", FO_VARIABLE, (vport("a1"), vport("a2"), cport("p"))),
        NodeNameDecl("any4_p", FO_VARIABLE,
                     (vport("a1"), vport("a2"), vport("a3"), cport("p"))),
        NodeNameDecl("arg", FO_VARIABLE, (vport("a1"), vport("a2"))),
        # higher-order captures
        NodeNameDecl("body", HO_VARIABLE, (vport("b1"), vport("b2"), vport("b3"))),
        NodeNameDecl("body2", HO_VARIABLE, (vport("b1"), vport("b2"))),
        NodeNameDecl("subtree", HO_VARIABLE, (vport("root"),)),
    ]
    return PSignature().declare_all(decls)


def _graph(sig: PSignature, nodes: dict[str, str], edges) -> PortGraph:
    g = PortGraph.empty(sig)
    for nid, label in nodes.items():
        g, _ = g.add_node(label, node_id=nid)
    for a, b in edges:
        g = g.add_edge(a, b)
    return g


def example_proof() -> PortGraph:
    """A five-node proof shape with one free port.

    A one-hypothesis scope box around an axiom, built into an implication
    introduction whose spare hypothesis slot holds a weakening; the result
    feeds a closed introduction. The only free port is the closed
    introduction's conclusion.
    """
    sig = proof_signature()
    return _graph(sig, {
        "sc": "scope_1",
        "ax": "axiom",
        "wk": "weaken",
        "ii": "imp_intro",
        "iic": "imp_intro_closed",
    }, [
        (("sc", 1), ("iic", 2)),
        (("sc", 3), ("ax", 1)),
        (("sc", 2), ("ii", 3)),
        (("ax", 2), ("ii", 1)),
        (("wk", 1), ("ii", 2)),
        (("ii", 4), ("iic", 1)),
    ])


def first_order_target() -> PortGraph:
    """The subject the first-order wildcard patterns are matched against."""
    return example_proof()


def first_order_patterns() -> dict[str, PortGraph]:
    """Four two-node wildcard patterns probing the first-order match rules.

    Against first_order_target():
      arity_clash        0 matches (wildcard arity does not fit any partner)
      injection_clash    0 matches (two wildcards would need one subject node)
      disconnected_pair  1 match   (no edge constraint between the wildcards)
      connected_pair     1 match   (edge present in the subject as well)
    """
    sig = proof_signature()
    return {
        "arity_clash": _graph(
            sig, {"u": "scope_1", "v": "any4_p"}, [(("u", 1), ("v", 2))]),
        "injection_clash": _graph(
            sig, {"u": "any3_out1", "v": "any3_out1"}, [(("u", 1), ("v", 2))]),
        "disconnected_pair": _graph(
            sig, {"u": "any3_out1", "v": "any3_p"}, []),
        "connected_pair": _graph(
            sig, {"u": "any3_out1", "v": "any3_p"}, [(("u", 1), ("v", 2))]),
    }


def beta_rule() -> Rule:
    """Resolve an introduction applied to an argument.

    Left side: a one-hypothesis scope box wrapping a captured ``body``
    (arity 3: bound-hypothesis slot, discharge slot, conclusion), the
    introduction node, and an ``arg`` wildcard feeding an elimination.
    Right side: the body survives with the argument wired into the slot the
    introduction used to discharge; box, introduction and elimination
    disappear.
    """
    sig = proof_signature()
    lhs = _graph(sig, {
        "l_s": "scope_1",
        "l_body": "body",
        "l_impi": "imp_intro",
        "l_arg": "arg",
        "l_impe": "imp_elim",
    }, [
        (("l_s", 3), ("l_body", 1)),
        (("l_s", 2), ("l_impi", 3)),
        (("l_body", 3), ("l_impi", 1)),
        (("l_body", 2), ("l_impi", 2)),
        (("l_impi", 4), ("l_impe", 1)),
        (("l_arg", 2), ("l_impe", 2)),
    ])
    rhs = _graph(sig, {
        "r_body": "body",
        "r_arg": "arg",
    }, [
        (("r_arg", 2), ("r_body", 2)),
    ])
    return compile_rule("beta", lhs, rhs, {
        ("l_s", 1): [("r_body", 1)],
        ("l_arg", 1): [("r_arg", 1)],
        ("l_impe", 3): [("r_body", 3)],
    })


def beta_rule_no_discharge_port() -> Rule:
    """Variant for introductions whose discharge slot is left open.

    The captured ``body2`` has no discharge port; the introduction's own
    discharge port stays free on the left side and is rewired straight to
    the argument's second port on the right.
    """
    sig = proof_signature()
    lhs = _graph(sig, {
        "l_s": "scope_1",
        "l_body": "body2",
        "l_impi": "imp_intro",
        "l_arg": "arg",
        "l_impe": "imp_elim",
    }, [
        (("l_s", 3), ("l_body", 1)),
        (("l_s", 2), ("l_impi", 3)),
        (("l_body", 2), ("l_impi", 1)),
        (("l_impi", 4), ("l_impe", 1)),
        (("l_arg", 2), ("l_impe", 2)),
    ])
    rhs = _graph(sig, {
        "r_body": "body2",
        "r_arg": "arg",
    }, [])
    return compile_rule("beta_nodischarge", lhs, rhs, {
        ("l_s", 1): [("r_body", 1)],
        ("l_impi", 2): [("r_arg", 2)],
        ("l_arg", 1): [("r_arg", 1)],
        ("l_impe", 3): [("r_body", 2)],
    })


def beta_subject() -> PortGraph:
    """A closed eight-node proof with exactly one ``beta`` redex.

    A scope box holds an axiom whose conclusion the introduction discharges
    into a weakening; the introduced implication is applied to a second
    axiom. Two closed introductions wrap the whole proof so that every port
    but the final conclusion is wired. One ``beta`` step takes it to its
    five-node normal form.
    """
    sig = proof_signature()
    return _graph(sig, {
        "sc": "scope_1",
        "ax1": "axiom",
        "wk": "weaken",
        "ii": "imp_intro",
        "ax2": "axiom",
        "ie": "imp_elim",
        "iic1": "imp_intro_closed",
        "iic2": "imp_intro_closed",
    }, [
        (("iic2", 2), ("sc", 1)),
        (("sc", 3), ("ax1", 1)),
        (("sc", 2), ("ii", 3)),
        (("ax1", 2), ("ii", 1)),
        (("wk", 1), ("ii", 2)),
        (("ii", 4), ("ie", 1)),
        (("ax2", 2), ("ie", 2)),
        (("iic1", 2), ("ax2", 1)),
        (("ie", 3), ("iic1", 1)),
        (("iic1", 3), ("iic2", 1)),
    ])


def beta_subject_open() -> PortGraph:
    """The six-node open core of beta_subject: same redex, three free ports."""
    sig = proof_signature()
    return _graph(sig, {
        "sc": "scope_1",
        "ax1": "axiom",
        "wk": "weaken",
        "ii": "imp_intro",
        "ax2": "axiom",
        "ie": "imp_elim",
    }, [
        (("sc", 3), ("ax1", 1)),
        (("sc", 2), ("ii", 3)),
        (("ax1", 2), ("ii", 1)),
        (("wk", 1), ("ii", 2)),
        (("ii", 4), ("ie", 1)),
        (("ax2", 2), ("ie", 2)),
    ])


def duplication_rule() -> Rule:
    """Resolve a ``copy`` node by cloning the shared sub-graph."""
    sig = proof_signature()
    lhs = _graph(sig, {"l_c": "copy", "l_sub": "subtree"},
                 [(("l_sub", 1), ("l_c", 1))])
    rhs = _graph(sig, {"r_s1": "subtree", "r_s2": "subtree"}, [])
    return compile_rule("duplicate", lhs, rhs, {
        ("l_c", 2): [("r_s1", 1)],
        ("l_c", 3): [("r_s2", 1)],
    })


def duplication_subject() -> PortGraph:
    """Closed five-node graph with one ``duplicate`` redex; the shared
    sub-graph is an axiom feeding a weakening."""
    sig = proof_signature()
    return _graph(sig, {
        "c1": "copy",
        "bx": "axiom",
        "bw": "weaken",
        "wl": "weaken",
        "wr": "weaken",
    }, [
        (("bx", 1), ("c1", 1)),
        (("bx", 2), ("bw", 1)),
        (("wl", 1), ("c1", 2)),
        (("wr", 1), ("c1", 3)),
    ])


def erasure_rule() -> Rule:
    """Resolve a ``weaken`` node by deleting the discarded sub-graph."""
    sig = proof_signature()
    lhs = _graph(sig, {"l_w": "weaken", "l_sub": "subtree"},
                 [(("l_sub", 1), ("l_w", 1))])
    rhs = PortGraph.empty(sig)
    return compile_rule("erase", lhs, rhs, {})


def erasure_subject() -> PortGraph:
    """Closed three-node graph with one ``erase`` redex; erasing empties it."""
    sig = proof_signature()
    return _graph(sig, {
        "wk1": "weaken",
        "iic": "imp_intro_closed",
        "ax": "axiom",
    }, [
        (("iic", 3), ("wk1", 1)),
        (("iic", 1), ("ax", 1)),
        (("iic", 2), ("ax", 2)),
    ])


def drop_weaken_rule() -> Rule:
    """Delete a ``weaken`` node outright; the context port it hung on is
    left free (an empty target list in the interface map)."""
    sig = proof_signature()
    lhs = _graph(sig, {"l_w": "weaken"}, [])
    rhs = PortGraph.empty(sig)
    return compile_rule("drop_weaken", lhs, rhs, {("l_w", 1): []})


def split_weaken_rule() -> Rule:
    """Replace one ``weaken`` by two, steering its context edge to both.

    Applying this where the matched node's port carries an edge must fail
    with a linearity overflow; on an isolated node it succeeds.
    """
    sig = proof_signature()
    lhs = _graph(sig, {"l_w": "weaken"}, [])
    rhs = _graph(sig, {"r_w1": "weaken", "r_w2": "weaken"}, [])
    return compile_rule("split_weaken", lhs, rhs, {
        ("l_w", 1): [("r_w1", 1), ("r_w2", 1)],
    })


# -- bundles and export ------------------------------------------------------


def fixture_bundles() -> dict[str, dict]:
    """Named (graph, rules) bundles, e.g. for starting an engine session."""
    return {
        "beta": {"graph": beta_subject(), "rules": [beta_rule()]},
        "beta_open": {"graph": beta_subject_open(), "rules": [beta_rule()]},
        "duplication": {"graph": duplication_subject(),
                        "rules": [duplication_rule()]},
        "erasure": {"graph": erasure_subject(), "rules": [erasure_rule()]},
        "example": {"graph": example_proof(), "rules": []},
    }


def write_fixtures(directory) -> list[str]:
    """Write every fixture as canonical JSON into ``directory``; the sorted
    list of file names written."""
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    docs: dict[str, dict] = {
        "signature.json": proof_signature().to_json(),
        "example_proof.json": example_proof().to_json(),
        "beta_rule.json": beta_rule().to_json(),
        "beta_nodischarge_rule.json": beta_rule_no_discharge_port().to_json(),
        "beta_subject.json": beta_subject().to_json(),
        "beta_subject_open.json": beta_subject_open().to_json(),
        "duplication_rule.json": duplication_rule().to_json(),
        "duplication_subject.json": duplication_subject().to_json(),
        "erasure_rule.json": erasure_rule().to_json(),
        "erasure_subject.json": erasure_subject().to_json(),
        "drop_weaken_rule.json": drop_weaken_rule().to_json(),
        "split_weaken_rule.json": split_weaken_rule().to_json(),
    }
    for name, pattern in first_order_patterns().items():
        docs[f"pattern_{name}.json"] = pattern.to_json()
    for name, doc in docs.items():
        (out / name).write_text(
            json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n")
    return sorted(docs)
