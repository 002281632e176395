"""Port-graphs: nodes with ordered ports, edges attached at ports.

A graph holds first-order nodes and higher-order nodes, each labelled by a
declared name from its signature. A node's port count equals the arity of
its label, and ports are addressed by 1-based index into the label's
interface. Edges are undirected pairs of ports; each port carries at most
one edge (linearity), enforced at construction.

Graphs are immutable values: every mutation returns a new graph. NodeIds are
strings with a total order (length, then text) so that fresh ids n1..n9,n10
sort in allocation order and all emitted collections are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple, Optional

from .errors import (
    ClassMismatch,
    DuplicateNode,
    FormatError,
    PortOccupied,
    PortOutOfRange,
    SelfPort,
    SignatureMismatch,
    UnknownLabel,
    UnknownNode,
)
from .signature import Diagnostic, HO_VARIABLE, PSignature

FO = "fo"
HO = "ho"


def node_key(node_id: str) -> tuple[int, str]:
    """Total order on NodeIds; numeric suffixes of equal-length ids sort naturally."""
    return (len(node_id), node_id)


class PortRef(NamedTuple):
    """One specific port: (node id, 1-based port index)."""

    node: str
    port: int

    def sort_key(self):
        return (node_key(self.node), self.port)


def _as_ref(val) -> PortRef:
    if isinstance(val, PortRef):
        return val
    return PortRef(val[0], int(val[1]))


@dataclass(frozen=True)
class Edge:
    """An undirected edge between two ports, stored in canonical order."""

    a: PortRef
    b: PortRef

    @classmethod
    def make(cls, a, b) -> "Edge":
        a, b = _as_ref(a), _as_ref(b)
        if b.sort_key() < a.sort_key():
            a, b = b, a
        return cls(a, b)

    def ends(self) -> tuple[PortRef, PortRef]:
        return (self.a, self.b)

    def other(self, ref: PortRef) -> PortRef:
        return self.b if ref == self.a else self.a

    def sort_key(self):
        return (self.a.sort_key(), self.b.sort_key())

    def to_pair(self) -> list:
        return [[self.a.node, self.a.port], [self.b.node, self.b.port]]


@dataclass(frozen=True, eq=True)
class PortGraph:
    sig: PSignature
    fo_nodes: dict[str, str] = field(default_factory=dict)  # id -> label
    ho_nodes: dict[str, str] = field(default_factory=dict)  # id -> label
    edges: frozenset[Edge] = field(default_factory=frozenset)
    next_hint: int = field(default=1, compare=False)

    # -- construction -------------------------------------------------------

    @classmethod
    def empty(cls, sig: PSignature) -> "PortGraph":
        return cls(sig)

    def _fresh_id(self) -> tuple[str, int]:
        n = self.next_hint
        while f"n{n}" in self.fo_nodes or f"n{n}" in self.ho_nodes:
            n += 1
        return f"n{n}", n + 1

    def add_node(self, label: str, node_id: Optional[str] = None) -> tuple["PortGraph", str]:
        """Return (new graph, id) with a fresh node labelled ``label``.

        The node's class (first- or higher-order) comes from the label's
        declared kind; its port count is the declared arity.
        """
        decl = self.sig.decl(label)  # raises UnknownName
        nxt = self.next_hint
        if node_id is None:
            node_id, nxt = self._fresh_id()
        elif node_id in self.fo_nodes or node_id in self.ho_nodes:
            raise DuplicateNode(f"node id {node_id!r} already present", node=node_id)
        if decl.kind == HO_VARIABLE:
            return (PortGraph(self.sig, self.fo_nodes, {**self.ho_nodes, node_id: label},
                              self.edges, nxt), node_id)
        return (PortGraph(self.sig, {**self.fo_nodes, node_id: label}, self.ho_nodes,
                          self.edges, nxt), node_id)

    def add_edge(self, a, b) -> "PortGraph":
        """Return a new graph with an edge between ports ``a`` and ``b``.

        Both ports must exist and be free. An edge between two distinct ports
        of one node is legal (validate_graph flags it as a warning); an edge
        from a port to itself is not.
        """
        a, b = _as_ref(a), _as_ref(b)
        if a == b:
            raise SelfPort(f"edge from port {a} to itself", port=list(a))
        for ref in (a, b):
            self._check_ref(ref)
            if ref in self.port_edges:
                raise PortOccupied(f"port {ref} already carries an edge", port=list(ref))
        return PortGraph(self.sig, self.fo_nodes, self.ho_nodes,
                         self.edges | {Edge.make(a, b)}, self.next_hint)

    def without_nodes(self, node_ids: Iterable[str]) -> "PortGraph":
        """Drop the given nodes and every edge incident to any of them."""
        gone = set(node_ids)
        for nid in gone:
            if nid not in self.fo_nodes and nid not in self.ho_nodes:
                raise UnknownNode(f"node {nid!r} not in graph", node=nid)
        keep_edges = frozenset(e for e in self.edges
                               if e.a.node not in gone and e.b.node not in gone)
        return PortGraph(self.sig,
                         {k: v for k, v in self.fo_nodes.items() if k not in gone},
                         {k: v for k, v in self.ho_nodes.items() if k not in gone},
                         keep_edges, self.next_hint)

    def relabel_nodes(self, mapping: dict[str, str]) -> "PortGraph":
        """Rename node ids; ids absent from ``mapping`` keep their name."""
        def m(nid):
            return mapping.get(nid, nid)
        new_ids = [m(n) for n in self.node_ids()]
        if len(set(new_ids)) != len(new_ids):
            raise DuplicateNode("relabelling collides node ids")
        return PortGraph(
            self.sig,
            {m(k): v for k, v in self.fo_nodes.items()},
            {m(k): v for k, v in self.ho_nodes.items()},
            frozenset(Edge.make((m(e.a.node), e.a.port), (m(e.b.node), e.b.port))
                      for e in self.edges),
            self.next_hint)

    # -- queries ------------------------------------------------------------

    def _check_ref(self, ref: PortRef) -> None:
        label = self.fo_nodes.get(ref.node) or self.ho_nodes.get(ref.node)
        if label is None:
            raise UnknownNode(f"node {ref.node!r} not in graph", node=ref.node)
        if not 1 <= ref.port <= self.sig.arity(label):
            raise PortOutOfRange(
                f"port {ref.port} out of range for {label!r} (arity {self.sig.arity(label)})",
                port=list(ref))

    @cached_property
    def port_edges(self) -> dict[PortRef, Edge]:
        out: dict[PortRef, Edge] = {}
        for e in self.edges:
            out[e.a] = e
            out[e.b] = e
        return out

    def __contains__(self, node_id: str) -> bool:
        return node_id in self.fo_nodes or node_id in self.ho_nodes

    def node_ids(self) -> list[str]:
        return sorted(list(self.fo_nodes) + list(self.ho_nodes), key=node_key)

    def label(self, node_id: str) -> str:
        lab = self.fo_nodes.get(node_id) or self.ho_nodes.get(node_id)
        if lab is None:
            raise UnknownNode(f"node {node_id!r} not in graph", node=node_id)
        return lab

    def node_class(self, node_id: str) -> str:
        if node_id in self.fo_nodes:
            return FO
        if node_id in self.ho_nodes:
            return HO
        raise UnknownNode(f"node {node_id!r} not in graph", node=node_id)

    def degree(self, node_id: str) -> int:
        return self.sig.arity(self.label(node_id))

    def ports(self, node_id: str) -> list[PortRef]:
        return [PortRef(node_id, i) for i in range(1, self.degree(node_id) + 1)]

    def partner(self, ref) -> Optional[PortRef]:
        """The port at the other end of the edge at ``ref``, or None if free."""
        ref = _as_ref(ref)
        e = self.port_edges.get(ref)
        return e.other(ref) if e else None

    def node_count(self) -> int:
        return len(self.fo_nodes) + len(self.ho_nodes)

    def edge_count(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges, key=Edge.sort_key)

    def interface(self) -> list[PortRef]:
        """All ports that carry no edge, in (NodeId, port) order."""
        out = []
        for nid in self.node_ids():
            for ref in self.ports(nid):
                if ref not in self.port_edges:
                    out.append(ref)
        return out

    def induced_full_subgraph(self, node_ids: Iterable[str]) -> "PortGraph":
        """Restrict to ``node_ids`` keeping every edge between them."""
        keep = set(node_ids)
        for nid in keep:
            if nid not in self:
                raise UnknownNode(f"node {nid!r} not in graph", node=nid)
        return PortGraph(
            self.sig,
            {k: v for k, v in self.fo_nodes.items() if k in keep},
            {k: v for k, v in self.ho_nodes.items() if k in keep},
            frozenset(e for e in self.edges if e.a.node in keep and e.b.node in keep),
            self.next_hint)

    # -- JSON / DOT ---------------------------------------------------------

    def to_json(self, include_signature: bool = True) -> dict:
        doc = {
            "nodes": [
                {"id": nid, "label": self.label(nid), "class": self.node_class(nid)}
                for nid in self.node_ids()
            ],
            "edges": [e.to_pair() for e in self.sorted_edges()],
        }
        if include_signature:
            doc["signature"] = self.sig.to_json()
        return doc

    @classmethod
    def from_json(cls, doc: dict, sig: Optional[PSignature] = None) -> "PortGraph":
        if not isinstance(doc, dict) or "nodes" not in doc or "edges" not in doc:
            raise FormatError("graph document must be an object with 'nodes' and 'edges'")
        if "signature" in doc:
            embedded = PSignature.from_json(doc["signature"])
            if sig is not None and sig != embedded:
                raise SignatureMismatch("embedded signature differs from the supplied one")
            sig = embedded
        if sig is None:
            raise FormatError("graph document has no signature and none was supplied")
        g = cls.empty(sig)
        for entry in doc["nodes"]:
            try:
                nid, label = entry["id"], entry["label"]
                claimed = entry.get("class")
            except (KeyError, TypeError) as exc:
                raise FormatError(f"bad node entry: {exc}") from None
            g, _ = g.add_node(label, node_id=nid)
            if claimed is not None and claimed != g.node_class(nid):
                raise ClassMismatch(
                    f"node {nid!r} claims class {claimed!r} but label {label!r} is "
                    f"{g.node_class(nid)!r}", node=nid)
        for pair in doc["edges"]:
            try:
                (n1, p1), (n2, p2) = pair
            except (TypeError, ValueError):
                raise FormatError(f"bad edge entry: {pair!r}") from None
            g = g.add_edge((n1, int(p1)), (n2, int(p2)))
        return g

    def to_dot(self, name: str = "g") -> str:
        """Graphviz text: record nodes with one field per port; dashed boxes
        for higher-order nodes."""
        lines = [f'graph "{name}" {{', "  rankdir=TB;"]
        for nid in self.node_ids():
            label = self.label(nid)
            ports = self.sig.interface_of(label)
            fields = "|".join(f"<p{i}> {p.text}" for i, p in enumerate(ports, start=1))
            style = ', style="dashed"' if self.node_class(nid) == HO else ""
            lines.append(f'  "{nid}" [shape=record, label="{{{label}|{{{fields}}}}}"{style}];')
        for e in self.sorted_edges():
            lines.append(f'  "{e.a.node}":p{e.a.port} -- "{e.b.node}":p{e.b.port};')
        lines.append("}")
        return "\n".join(lines) + "\n"


# -- relations over two graphs ----------------------------------------------


def is_subgraph(g: PortGraph, h: PortGraph) -> bool:
    """Id-based containment: nodes of g in h with equal labels, edges a subset."""
    if g.sig != h.sig:
        raise SignatureMismatch("graphs are over different signatures")
    for nid in g.fo_nodes:
        if h.fo_nodes.get(nid) != g.fo_nodes[nid]:
            return False
    for nid in g.ho_nodes:
        if h.ho_nodes.get(nid) != g.ho_nodes[nid]:
            return False
    return g.edges <= h.edges


def is_full_subgraph(g: PortGraph, h: PortGraph) -> bool:
    """is_subgraph plus: every h-edge between g's nodes is present in g."""
    if not is_subgraph(g, h):
        return False
    for e in h.edges:
        if e.a.node in g and e.b.node in g and e not in g.edges:
            return False
    return True


@dataclass(frozen=True)
class EqualityWitness:
    """A structure-preserving renaming between two graphs."""

    fo_map: dict[str, str]
    ho_map: dict[str, str]

    def map_node(self, nid: str) -> str:
        return self.fo_map.get(nid) or self.ho_map[nid]

    def map_port(self, ref: PortRef) -> PortRef:
        return PortRef(self.map_node(ref.node), ref.port)

    def invert(self) -> "EqualityWitness":
        return EqualityWitness({v: k for k, v in self.fo_map.items()},
                               {v: k for k, v in self.ho_map.items()})

    def compose(self, other: "EqualityWitness") -> "EqualityWitness":
        """self then other (self: g->h, other: h->k)."""
        return EqualityWitness({k: other.map_node(v) for k, v in self.fo_map.items()},
                               {k: other.map_node(v) for k, v in self.ho_map.items()})


def all_equality_witnesses(g: PortGraph, h: PortGraph) -> Iterator[EqualityWitness]:
    """Yield every label-preserving node bijection that carries the edges of g
    exactly onto the edges of h, in lexicographic order of images taken over
    g's nodes in NodeId order (first-order nodes first)."""
    if g.sig != h.sig:
        raise SignatureMismatch("graphs are over different signatures")
    if (len(g.fo_nodes) != len(h.fo_nodes) or len(g.ho_nodes) != len(h.ho_nodes)
            or len(g.edges) != len(h.edges)):
        return
    g_order = (sorted(g.fo_nodes, key=node_key) + sorted(g.ho_nodes, key=node_key))
    h_fo_by_label: dict[str, list[str]] = {}
    for nid in sorted(h.fo_nodes, key=node_key):
        h_fo_by_label.setdefault(h.fo_nodes[nid], []).append(nid)
    h_ho_by_label: dict[str, list[str]] = {}
    for nid in sorted(h.ho_nodes, key=node_key):
        h_ho_by_label.setdefault(h.ho_nodes[nid], []).append(nid)

    assign: dict[str, str] = {}
    used: set[str] = set()

    def consistent(v: str) -> bool:
        # every g-edge at v with both ends assigned must land on an h-edge
        for ref in g.ports(v):
            e = g.port_edges.get(ref)
            if e is None:
                continue
            o = e.other(ref)
            if o.node in assign:
                im = Edge.make((assign[v], ref.port), (assign[o.node], o.port))
                if im not in h.edges:
                    return False
        return True

    def rec(i: int) -> Iterator[EqualityWitness]:
        if i == len(g_order):
            fo = {k: v for k, v in assign.items() if k in g.fo_nodes}
            ho = {k: v for k, v in assign.items() if k in g.ho_nodes}
            yield EqualityWitness(fo, ho)
            return
        v = g_order[i]
        in_fo = v in g.fo_nodes
        pool = (h_fo_by_label if in_fo else h_ho_by_label).get(g.label(v), [])
        for cand in pool:
            if cand in used:
                continue
            if (g.degree(v) != h.degree(cand)):
                continue
            assign[v] = cand
            used.add(cand)
            if consistent(v):
                yield from rec(i + 1)
            del assign[v]
            used.discard(cand)

    yield from rec(0)


def syntactic_equal(g: PortGraph, h: PortGraph) -> Optional[EqualityWitness]:
    """First (lexicographically least) equality witness, or None."""
    for w in all_equality_witnesses(g, h):
        return w
    return None


def disjoint_union(g: PortGraph, h: PortGraph) -> PortGraph:
    """Union of two graphs over one signature; node ids must not collide."""
    if g.sig != h.sig:
        raise SignatureMismatch("graphs are over different signatures")
    for nid in h.node_ids():
        if nid in g:
            raise DuplicateNode(f"node id {nid!r} present in both graphs", node=nid)
    return PortGraph(g.sig,
                     {**g.fo_nodes, **h.fo_nodes},
                     {**g.ho_nodes, **h.ho_nodes},
                     g.edges | h.edges,
                     max(g.next_hint, h.next_hint))


def validate_graph(g: PortGraph) -> list[Diagnostic]:
    """Re-check graph invariants; [] or warnings only for API-built graphs.

    Construction already enforces declared labels, port ranges and linearity,
    so errors here can only come from hand-assembled instances. An edge
    between two ports of one node is legal but unusual: warning.
    """
    out: list[Diagnostic] = []
    for nid in g.node_ids():
        label = g.fo_nodes.get(nid) or g.ho_nodes.get(nid)
        if label not in g.sig:
            out.append(Diagnostic("unknown_label", nid, f"label {label!r} not declared"))
            continue
        kind = g.sig.kind(label)
        if (nid in g.ho_nodes) != (kind == HO_VARIABLE):
            out.append(Diagnostic("class_mismatch", nid,
                                  f"node class disagrees with declared kind of {label!r}"))
    seen: dict[PortRef, int] = {}
    for e in g.sorted_edges():
        for ref in e.ends():
            if ref.node not in g:
                out.append(Diagnostic("dangling_edge", ref.node,
                                      f"edge endpoint {ref} references a missing node"))
                continue
            label = g.label(ref.node)
            if label in g.sig and not 1 <= ref.port <= g.sig.arity(label):
                out.append(Diagnostic("port_out_of_range", ref.node,
                                      f"port {ref.port} out of range for {label!r}"))
            seen[ref] = seen.get(ref, 0) + 1
        if e.a.node == e.b.node:
            out.append(Diagnostic("self_node_edge", e.a.node,
                                  f"edge joins two ports of one node: {e.to_pair()}",
                                  severity="warning"))
    for ref, n in sorted(seen.items(), key=lambda kv: kv[0].sort_key()):
        if n > 1:
            out.append(Diagnostic("linearity", ref.node,
                                  f"port {ref} occurs in {n} edges"))
    return out
