"""Higher-order port-graph rewriting.

Graphs carry first-order nodes (constants and per-name variables) and
higher-order nodes that stand for whole captured sub-graphs. The package
provides matching of such patterns, rule application with deterministic
replayable results, canonical digests, JSON/DOT serialization, a command
line, and a REST service.
"""

from .canon import canonical_form, digest
from .errors import HoportError
from .matcher import (
    MatchOptions,
    Morphism,
    check_morphism,
    find_morphisms,
    is_valid_morphism,
    matches,
    sorted_morphisms,
)
from .oracle import brute_force_morphisms, canonical_solution_set, solution_set
from .portgraph import (
    Edge,
    EqualityWitness,
    PortGraph,
    PortRef,
    all_equality_witnesses,
    disjoint_union,
    is_full_subgraph,
    is_subgraph,
    syntactic_equal,
    validate_graph,
)
from .rewrite import (
    Derivation,
    NormalForms,
    Redex,
    RewriteReport,
    Rule,
    apply_rule,
    apply_with_report,
    compile_rule,
    enumerate_redexes,
    normal_forms,
    normalize,
    replay,
)
from .signature import Diagnostic, NodeNameDecl, PortName, PSignature, cport, vport

__version__ = "0.1.0"

__all__ = [
    "Derivation",
    "Diagnostic",
    "Edge",
    "EqualityWitness",
    "HoportError",
    "MatchOptions",
    "Morphism",
    "NodeNameDecl",
    "NormalForms",
    "PSignature",
    "PortGraph",
    "PortName",
    "PortRef",
    "Redex",
    "RewriteReport",
    "Rule",
    "all_equality_witnesses",
    "apply_rule",
    "apply_with_report",
    "brute_force_morphisms",
    "canonical_form",
    "canonical_solution_set",
    "check_morphism",
    "compile_rule",
    "cport",
    "digest",
    "disjoint_union",
    "enumerate_redexes",
    "find_morphisms",
    "is_full_subgraph",
    "is_subgraph",
    "is_valid_morphism",
    "matches",
    "normal_forms",
    "normalize",
    "replay",
    "solution_set",
    "sorted_morphisms",
    "syntactic_equal",
    "validate_graph",
    "vport",
]
