"""Rewriting: rules, redexes, rule application, derivations.

A rule replaces a matched occurrence of its left-hand graph by a freshly
built copy of its right-hand graph. The two sides communicate only through
the rule's interface map, which sends every free port of the left side to
the (possibly empty) list of free right-side ports that inherit its context
edge:

* the matched subject nodes and all their edges disappear;
* the right side is instantiated: constant nodes verbatim, first-order
  variables through the match's name substitution, and each higher-order
  node as a fresh disjoint copy of the sub-graph the left side captured for
  that name;
* every context edge that reached the match through the image of a free
  left-side port is re-attached to that port's targets. An empty target
  list frees the context port. A context edge asked to reach two ports, or
  two context edges steered onto one port, is a LinearityOverflow, reported
  rather than silently repaired.

Fresh node ids are allocated deterministically (lowest unused n<k>,
scanning upward from the graph's allocation hint, in a fixed build order),
so re-running a recorded derivation rebuilds byte-identical graphs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .canon import digest
from .errors import (
    EmptyPattern,
    FormatError,
    FreeRhsVariable,
    IncompleteInterfaceMap,
    LinearityOverflow,
    PortOccupied,
    ReplayMismatch,
    SignatureMismatch,
    StaleMorphism,
    StepLimitReached,
    TargetNotFree,
)
from .matcher import MatchOptions, Morphism, check_morphism, sorted_morphisms
from .portgraph import Edge, PortGraph, PortRef, node_key
from .signature import FO_VARIABLE, HO_VARIABLE


@dataclass(frozen=True)
class Rule:
    """A named rewrite rule. Build with compile_rule, which validates."""

    name: str
    lhs: PortGraph
    rhs: PortGraph
    interface_map: dict[PortRef, tuple[PortRef, ...]]

    @property
    def sig(self):
        return self.lhs.sig

    def to_json(self, include_signature: bool = True) -> dict:
        doc = {
            "name": self.name,
            "lhs": self.lhs.to_json(include_signature=False),
            "rhs": self.rhs.to_json(include_signature=False),
            "interface": [
                {"from": [src.node, src.port],
                 "to": [[t.node, t.port] for t in targets]}
                for src, targets in sorted(self.interface_map.items(),
                                           key=lambda kv: kv[0].sort_key())
            ],
        }
        if include_signature:
            doc["signature"] = self.sig.to_json()
        return doc

    @classmethod
    def from_json(cls, doc: dict, sig=None) -> "Rule":
        if not isinstance(doc, dict) or not {"name", "lhs", "rhs"} <= set(doc):
            raise FormatError(
                "rule document must be an object with 'name', 'lhs', 'rhs' "
                "and 'interface'")
        if "signature" in doc:
            from .signature import PSignature
            embedded = PSignature.from_json(doc["signature"])
            if sig is not None and sig != embedded:
                raise SignatureMismatch(
                    "embedded signature differs from the supplied one")
            sig = embedded
        if sig is None:
            raise FormatError("rule document has no signature and none was supplied")
        lhs = PortGraph.from_json(doc["lhs"], sig=sig)
        rhs = PortGraph.from_json(doc["rhs"], sig=sig)
        mapping: dict[PortRef, tuple[PortRef, ...]] = {}
        for entry in doc.get("interface", []):
            try:
                src = PortRef(entry["from"][0], int(entry["from"][1]))
                targets = tuple(PortRef(t[0], int(t[1])) for t in entry["to"])
            except (KeyError, TypeError, ValueError, IndexError) as exc:
                raise FormatError(f"bad interface entry {entry!r}: {exc}") from None
            if src in mapping:
                raise FormatError(f"interface lists port {src} twice")
            mapping[src] = targets
        return compile_rule(doc["name"], lhs, rhs, mapping)


def compile_rule(name: str, lhs: PortGraph, rhs: PortGraph,
                 interface_map: dict[PortRef, Sequence[PortRef]]) -> Rule:
    """Validate and assemble a rule.

    The interface map must mention every free port of the left side exactly
    once; targets must be free ports of the right side; the right side may
    not use a variable name the left side does not bind.
    """
    if lhs.sig != rhs.sig:
        raise SignatureMismatch("rule sides use different signatures")
    if lhs.node_count() == 0:
        raise EmptyPattern("rule left side has no nodes")
    mapping = {PortRef(k[0], int(k[1])): tuple(PortRef(t[0], int(t[1])) for t in v)
               for k, v in interface_map.items()}
    lhs_free = set(lhs.interface())
    if set(mapping) != lhs_free:
        missing = sorted(lhs_free - set(mapping), key=PortRef.sort_key)
        extra = sorted(set(mapping) - lhs_free, key=PortRef.sort_key)
        raise IncompleteInterfaceMap(
            f"interface map must cover the left side's free ports exactly; "
            f"missing {missing}, unexpected {extra}",
            missing=[list(r) for r in missing], extra=[list(r) for r in extra])
    rhs_free = set(rhs.interface())
    for src, targets in sorted(mapping.items(), key=lambda kv: kv[0].sort_key()):
        for t in targets:
            if t not in rhs_free:
                raise TargetNotFree(
                    f"interface target {t} is not a free right-side port",
                    source=list(src), target=list(t))
    sig = lhs.sig
    lhs_fo_vars = {lab for lab in lhs.fo_nodes.values()
                   if sig.kind(lab) == FO_VARIABLE}
    lhs_ho_vars = set(lhs.ho_nodes.values())
    for nid in rhs.node_ids():
        lab = rhs.label(nid)
        kind = sig.kind(lab)
        if kind == FO_VARIABLE and lab not in lhs_fo_vars:
            raise FreeRhsVariable(
                f"right side uses variable name {lab!r} the left side "
                f"does not bind", name=lab)
        if kind == HO_VARIABLE and lab not in lhs_ho_vars:
            raise FreeRhsVariable(
                f"right side uses higher-order name {lab!r} the left side "
                f"does not bind", name=lab)
    return Rule(name, lhs, rhs, mapping)


@dataclass(frozen=True)
class Redex:
    """One rule together with one match of its left side."""

    rule: Rule
    morphism: Morphism

    def sort_key(self):
        return (self.rule.name, self.morphism.sort_key())

    def to_json(self) -> dict:
        return {"rule": self.rule.name, "morphism": self.morphism.to_json()}


def enumerate_redexes(graph: PortGraph, rules: Iterable[Rule],
                      options: Optional[MatchOptions] = None) -> list[Redex]:
    """All redexes of all rules, rules by name, matches in canonical order."""
    out: list[Redex] = []
    for rule in sorted(rules, key=lambda r: r.name):
        for m in sorted_morphisms(rule.lhs, graph, options):
            out.append(Redex(rule, m))
    return out


@dataclass
class RewriteReport:
    """What one application changed, in subject-graph terms."""

    removed_nodes: list[str]
    added_nodes: list[str]
    reconnected: list[tuple[PortRef, PortRef]]
    freed_ports: list[PortRef]
    vanished_edges: list[Edge]

    def to_json(self) -> dict:
        return {
            "removed_nodes": self.removed_nodes,
            "added_nodes": self.added_nodes,
            "reconnected": [[list(a), list(b)] for a, b in self.reconnected],
            "freed_ports": [list(r) for r in self.freed_ports],
            "vanished_edges": [e.to_pair() for e in self.vanished_edges],
        }


def _lhs_port_image(rule: Rule, m: Morphism, ref: PortRef) -> PortRef:
    if ref.node in rule.lhs.fo_nodes:
        return PortRef(m.node_map[ref.node], ref.port)
    return m.body_ports[ref.node][ref.port]


def apply_with_report(graph: PortGraph, rule: Rule, m: Morphism
                      ) -> tuple[PortGraph, RewriteReport]:
    """Apply ``rule`` at the match ``m``; also report the changes made.

    Raises StaleMorphism if ``m`` is not a valid match of the rule's left
    side in ``graph`` (for instance because the graph has changed since the
    match was found), and LinearityOverflow when re-attachment would put two
    edges on one port.
    """
    problems = check_morphism(rule.lhs, graph, m)
    if problems:
        raise StaleMorphism(
            f"match is not valid for this graph: {problems[0]}",
            problems=problems)

    removed = m.image_nodes()

    # context attachments, read before anything is removed
    attachments: list[tuple[PortRef, Optional[PortRef]]] = []
    vanished: list[Edge] = []
    for fp in rule.lhs.interface():
        ip = _lhs_port_image(rule, m, fp)
        partner = graph.partner(ip)
        if partner is None:
            attachments.append((fp, None))
        elif partner.node in removed:
            vanished.append(Edge.make(ip, partner))
            attachments.append((fp, None))
        else:
            attachments.append((fp, partner))
    vanished = sorted(set(vanished), key=Edge.sort_key)

    out = graph.without_nodes(removed)

    # instantiate the right side with fresh ids, in a fixed order
    sig = rule.sig
    fo_ids: dict[str, str] = {}                    # rhs node -> new id
    ho_ports: dict[str, dict[int, PortRef]] = {}   # rhs node -> port images
    added: list[str] = []
    copied_edges: list[Edge] = []
    for rid in rule.rhs.node_ids():
        lab = rule.rhs.label(rid)
        kind = sig.kind(lab)
        if kind == HO_VARIABLE:
            occurrences = sorted(
                (x for x, xlab in rule.lhs.ho_nodes.items() if xlab == lab),
                key=node_key)
            first = occurrences[0]
            body_img = graph.induced_full_subgraph(m.body_map[first])
            renamed: dict[str, str] = {}
            for src in sorted(body_img.node_ids(), key=node_key):
                out, new_id = out.add_node(body_img.label(src))
                renamed[src] = new_id
                added.append(new_id)
            for e in body_img.sorted_edges():
                copied_edges.append(Edge.make(
                    (renamed[e.a.node], e.a.port), (renamed[e.b.node], e.b.port)))
            ho_ports[rid] = {
                i: PortRef(renamed[ref.node], ref.port)
                for i, ref in m.body_ports[first].items()}
        else:
            target_label = (m.name_subst[lab] if kind == FO_VARIABLE else lab)
            out, new_id = out.add_node(target_label)
            fo_ids[rid] = new_id
            added.append(new_id)
    for e in copied_edges:
        out = out.add_edge(e.a, e.b)

    def rhs_port(ref: PortRef) -> PortRef:
        if ref.node in fo_ids:
            return PortRef(fo_ids[ref.node], ref.port)
        return ho_ports[ref.node][ref.port]

    for e in rule.rhs.sorted_edges():
        out = out.add_edge(rhs_port(e.a), rhs_port(e.b))

    # re-attach the context
    reconnected: list[tuple[PortRef, PortRef]] = []
    freed: list[PortRef] = []
    for fp, context_port in attachments:
        targets = rule.interface_map[fp]
        if context_port is None:
            continue
        if not targets:
            freed.append(context_port)
            continue
        for t in targets:
            dest = rhs_port(t)
            try:
                out = out.add_edge(context_port, dest)
            except PortOccupied:
                raise LinearityOverflow(
                    f"re-attachment would put a second edge on a port: "
                    f"context {list(context_port)} to {list(dest)}",
                    context_port=list(context_port), target=list(dest)) from None
            reconnected.append((context_port, dest))

    report = RewriteReport(
        removed_nodes=sorted(removed, key=node_key),
        added_nodes=added,
        reconnected=reconnected,
        freed_ports=freed,
        vanished_edges=vanished,
    )
    return out, report


def apply_rule(graph: PortGraph, rule: Rule, m: Morphism) -> PortGraph:
    """Apply ``rule`` at the match ``m``; the rewritten graph."""
    return apply_with_report(graph, rule, m)[0]


# -- derivations -------------------------------------------------------------


@dataclass(frozen=True)
class DerivationStep:
    rule_name: str
    morphism: dict            # morphism as JSON, the applied match
    digest_after: str

    def to_json(self) -> dict:
        return {"rule": self.rule_name, "morphism": self.morphism,
                "digest_after": self.digest_after}


@dataclass
class Derivation:
    """A replayable record: starting digest plus the applied steps."""

    initial_digest: str
    steps: list[DerivationStep] = field(default_factory=list)

    def extended(self, rule: Rule, m: Morphism, result: PortGraph) -> "Derivation":
        step = DerivationStep(rule.name, m.to_json(), digest(result))
        return Derivation(self.initial_digest, [*self.steps, step])

    def to_json(self) -> dict:
        return {"initial_digest": self.initial_digest,
                "steps": [s.to_json() for s in self.steps]}

    @classmethod
    def from_json(cls, doc: dict) -> "Derivation":
        try:
            steps = [DerivationStep(s["rule"], s["morphism"], s["digest_after"])
                     for s in doc.get("steps", [])]
            return cls(doc["initial_digest"], steps)
        except (KeyError, TypeError) as exc:
            raise FormatError(f"bad derivation document: {exc}") from None


def normalize(graph: PortGraph, rules: Iterable[Rule], *,
              max_steps: int = 100,
              options: Optional[MatchOptions] = None
              ) -> tuple[PortGraph, Derivation]:
    """Rewrite with the first redex (rules by name, matches in canonical
    order) until none is left.

    Raises StepLimitReached — carrying the partial graph and derivation —
    when max_steps applications did not reach a normal form.
    """
    rules = list(rules)
    deriv = Derivation(digest(graph))
    current = graph
    for _ in range(max_steps):
        redexes = enumerate_redexes(current, rules, options)
        if not redexes:
            return current, deriv
        chosen = redexes[0]
        current = apply_rule(current, chosen.rule, chosen.morphism)
        deriv = deriv.extended(chosen.rule, chosen.morphism, current)
    if enumerate_redexes(current, rules, options):
        raise StepLimitReached(
            f"no normal form within {max_steps} steps",
            graph=current, derivation=deriv)
    return current, deriv


@dataclass
class NormalForms:
    """All distinct normal forms reachable from a graph (up to renaming)."""

    graphs: list[PortGraph]
    truncated: bool

    def digests(self) -> list[str]:
        return [digest(g) for g in self.graphs]


def normal_forms(graph: PortGraph, rules: Iterable[Rule], *,
                 max_visited: int = 200,
                 options: Optional[MatchOptions] = None) -> NormalForms:
    """Breadth-first exploration of every reduction sequence, deduplicated
    by canonical digest; truncated=True when max_visited distinct graphs
    were expanded before the frontier emptied."""
    rules = list(rules)
    seen: set[str] = set()
    finals: dict[str, PortGraph] = {}
    frontier: list[PortGraph] = [graph]
    truncated = False
    while frontier:
        nxt: list[PortGraph] = []
        for g in frontier:
            d = digest(g)
            if d in seen:
                continue
            if len(seen) >= max_visited:
                truncated = True
                continue
            seen.add(d)
            redexes = enumerate_redexes(g, rules, options)
            if not redexes:
                finals.setdefault(d, g)
                continue
            for r in redexes:
                nxt.append(apply_rule(g, r.rule, r.morphism))
        frontier = nxt
    ordered = sorted(finals.items())
    return NormalForms([g for _, g in ordered], truncated)


def replay(initial: PortGraph, rules: Iterable[Rule],
           derivation: Derivation) -> PortGraph:
    """Re-run a recorded derivation, insisting on identical digests.

    Raises ReplayMismatch if the starting graph or any intermediate result
    disagrees with the record, and StaleMorphism if a recorded match no
    longer holds.
    """
    by_name = {r.name: r for r in rules}
    if digest(initial) != derivation.initial_digest:
        raise ReplayMismatch(
            "starting graph does not match the derivation's initial digest",
            expected=derivation.initial_digest, actual=digest(initial))
    current = initial
    for i, step in enumerate(derivation.steps):
        rule = by_name.get(step.rule_name)
        if rule is None:
            raise ReplayMismatch(f"step {i} uses unknown rule {step.rule_name!r}",
                                 step=i, rule=step.rule_name)
        m = Morphism.from_json(step.morphism)
        current = apply_rule(current, rule, m)
        if digest(current) != step.digest_after:
            raise ReplayMismatch(
                f"step {i} produced a different graph than recorded",
                step=i, expected=step.digest_after, actual=digest(current))
    return current
