"""Shared helpers for the test suite."""

import itertools

from hoport import Edge, NodeNameDecl, PortGraph, PSignature, cport, vport


def make_tiny_sig() -> PSignature:
    return PSignature().declare_all([
        NodeNameDecl("A", "fo_constant", (cport("a"),)),
        NodeNameDecl("B", "fo_constant", (cport("b"),)),
        NodeNameDecl("X", "fo_variable", (vport("x"),)),
        NodeNameDecl("Xh", "ho_variable", (vport("y"), vport("z"))),
    ])


def equality_witness_oracle(g: PortGraph, h: PortGraph) -> list[dict]:
    """Exhaustive renaming enumeration, independent of the library's search.

    Returns every label-preserving node bijection carrying g's edges exactly
    onto h's. Only meant for small graphs.
    """
    if sorted(g.fo_nodes.values()) != sorted(h.fo_nodes.values()):
        return []
    if sorted(g.ho_nodes.values()) != sorted(h.ho_nodes.values()):
        return []
    if len(g.edges) != len(h.edges):
        return []
    gfo, gho = sorted(g.fo_nodes), sorted(g.ho_nodes)
    found = []
    for pfo in itertools.permutations(sorted(h.fo_nodes)):
        if any(g.fo_nodes[a] != h.fo_nodes[b] for a, b in zip(gfo, pfo)):
            continue
        for pho in itertools.permutations(sorted(h.ho_nodes)):
            if any(g.ho_nodes[a] != h.ho_nodes[b] for a, b in zip(gho, pho)):
                continue
            m = {**dict(zip(gfo, pfo)), **dict(zip(gho, pho))}
            translated = {
                Edge.make((m[e.a.node], e.a.port), (m[e.b.node], e.b.port))
                for e in g.edges
            }
            if translated == set(h.edges):
                found.append(m)
    return found


def build(sig: PSignature, nodes: dict[str, str], edges) -> PortGraph:
    """Assemble a graph from {id: label} plus ((id, port), (id, port)) pairs."""
    g = PortGraph.empty(sig)
    for nid, label in nodes.items():
        g, _ = g.add_node(label, node_id=nid)
    for a, b in edges:
        g = g.add_edge(a, b)
    return g
